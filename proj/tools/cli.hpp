#pragma once

#include <iosfwd>

namespace steklov::cli {

/// Exit codes: 0 success, 1 invalid input or mesh, 2 solver failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitSolver = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace steklov::cli
