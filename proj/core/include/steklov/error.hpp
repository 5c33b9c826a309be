#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace steklov {

/// Invalid caller input: bad counts, out-of-range parameters.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structural or geometric problem with a mesh.
class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A triangle with (numerically) zero or negative area.
class DegenerateGeometryError : public MeshError {
 public:
  using MeshError::MeshError;
};

/// Malformed steklov-mesh input; carries the 1-based offending line.
class ParseError : public MeshError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : MeshError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Linear or eigen solver breakdown.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace steklov
