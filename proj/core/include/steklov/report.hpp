#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steklov/bounds.hpp"
#include "steklov/eigensolve.hpp"

namespace steklov {

struct FormatOptions {
  int digits = 6;  // significant digits
  /// Reference values for error/rate rows; empty disables them.
  std::vector<double> reference;
};

/// Markdown table: one column per level, rows C_h, lambda_i as
/// "(lower, upper)", then sigma rows when a reference is given and there
/// is more than one level. A per-level detail table follows.
std::string format_markdown(const std::vector<BoundsReport>& reports,
                            const FormatOptions& options);

/// CSV with header h,i,lower,lambda_h,upper,Ch.
std::string format_csv(const std::vector<BoundsReport>& reports, const FormatOptions& options);

/// CSV with header index,mu,lambda,radius; radius empty when not certified.
std::string format_spectrum_csv(const Spectrum& spectrum,
                                const std::vector<Enclosure>& enclosures, int digits);

/// Significant-digit formatting used by all writers.
std::string format_number(double value, int digits);

/// Rounded toward -inf (lower bounds) or +inf (upper bounds) at `digits`
/// significant digits, so a printed interval never shrinks.
std::string format_lower(double value, int digits);
std::string format_upper(double value, int digits);

}  // namespace steklov
