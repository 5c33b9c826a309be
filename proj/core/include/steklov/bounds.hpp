#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "steklov/mesh.hpp"

namespace steklov {

/// Interpolation and trace constants entering C_h.
struct Constants {
  /// ||u - Pi_h u||_K <= c_interp h_K |u - Pi_h u|_{1,K}
  static constexpr double c_interp = 0.1893;
  /// ||u - Pi_h u||_e <= c_trace h_K / sqrt(H_K) |u - Pi_h u|_{1,K}
  static constexpr double c_trace = 0.6711;
};

/// Relative pad applied to C_h in certified runs.
inline constexpr double kCertifiedPad = 1e-12;

/// C_h = c_trace * max_{K boundary} h_K/sqrt(H_K)
///     + c_interp / sqrt(lambda_h1_lower) * max_K h_K.
/// Pass a lower estimate of the first discrete eigenvalue; a smaller value
/// gives a larger (safe) C_h. With `pad`, the result is raised by
/// kCertifiedPad relative.
double compute_Ch(const GeometryTable& geometry, double lambda_h1_lower, bool pad = false);

/// lambda_h / (1 + C^2 lambda_h): increasing in lambda_h, decreasing in C.
double lower_bound_map(double lambda_h, double ch);

enum class Domain { square, lshape };

/// Reference eigenvalues (fine-mesh approximations) used for error columns.
std::array<double, 5> reference_eigenvalues(Domain domain);

struct BoundRow {
  std::size_t index = 0;   // 1-based
  double lower = 0.0;      // guaranteed lower bound
  double lambda_h = 0.0;   // CR discrete eigenvalue
  double upper = 0.0;      // P1 discrete eigenvalue (certified upper end if set)
  double lambda_h_radius = 0.0;  // CR enclosure radius in lambda, 0 if raw
  double upper_radius = 0.0;     // P1 enclosure radius in lambda, 0 if raw
};

struct BoundsReport {
  std::string domain;           // square, lshape, external
  std::string label;            // "1/8", "4916 elements", ...
  double h = 0.0;               // leg length on the square, max h_K otherwise
  std::size_t elements = 0;
  double ch = 0.0;
  double max_h = 0.0;
  double max_h_over_sqrt_height = 0.0;
  bool certified = false;       // enclosure ends were used throughout
  std::vector<BoundRow> rows;
};

struct BoundsOptions {
  std::size_t k = 5;
  bool certify = false;
};

/// Full pipeline on an admissible mesh: CR lower bounds via C_h and the
/// lower-bound map, conforming P1 upper bounds.
/// Throws InadmissibleMeshError, SolverError or ArgumentError.
BoundsReport compute_bounds(const Mesh& mesh, const BoundsOptions& options);

struct RateTable {
  std::vector<double> err_lower;
  std::vector<double> err_upper;
  std::vector<std::optional<double>> sigma_lower;  // first level has none
  std::vector<std::optional<double>> sigma_upper;
};

/// Err(h) = sum_i |ref_i - bound_i|, sigma = log2(Err(h)/Err(h/2)).
/// Throws ArgumentError when a report has fewer rows than the reference.
RateTable convergence_rates(const std::vector<BoundsReport>& reports,
                            const std::vector<double>& reference);

/// log2(err_coarse / err_fine).
double rate(double err_coarse, double err_fine);

}  // namespace steklov
