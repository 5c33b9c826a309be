#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "steklov/sparse.hpp"

namespace steklov {

/// Generalized symmetric pencil A x = mu B x with A positive semidefinite and
/// B positive definite. A vanishes outside `support`.
struct Pencil {
  SparseSymMatrix a;
  SparseSymMatrix b;
  std::vector<Index> support;  // sorted
  /// Externally known lower bound on lambda_min(B); 0 if none.
  double b_floor_hint = 0.0;
};

/// Pencil (N, M) of an assembled system.
struct AssembledSystem;
Pencil make_pencil(const AssembledSystem& system);

/// Boundary Schur complement of a pencil.
///
/// S = B_bb - B_bi B_ii^{-1} B_ib and A_bb = A restricted to the support.
/// Every nonzero eigenvalue of (A, B) is an eigenvalue of (A_bb, S) and
/// conversely. Keeps the interior factorization to lift reduced vectors.
class SchurReduction {
 public:
  const Eigen::MatrixXd& s() const noexcept { return s_; }
  const Eigen::MatrixXd& a_bb() const noexcept { return a_bb_; }
  const std::vector<Index>& boundary() const noexcept { return boundary_; }
  const std::vector<Index>& interior() const noexcept { return interior_; }
  Index full_dim() const noexcept { return full_dim_; }
  /// Worst relative residual of the interior solves used to form S.
  double interior_residual() const noexcept { return interior_residual_; }

  /// Full-space vector with x_i = -B_ii^{-1} B_ib x_b.
  Eigen::VectorXd lift(const Eigen::VectorXd& x_boundary) const;

 private:
  friend SchurReduction schur_reduce(const Pencil& pencil);
  struct InteriorSolver;

  Eigen::MatrixXd s_;
  Eigen::MatrixXd a_bb_;
  std::vector<Index> boundary_;
  std::vector<Index> interior_;
  Index full_dim_ = 0;
  double interior_residual_ = 0.0;
  Eigen::SparseMatrix<double> b_ib_;
  std::shared_ptr<const InteriorSolver> solver_;
};

inline constexpr double kInteriorTolerance = 1e-12;
inline constexpr double kKernelCutRelative = 1e-10;

/// Throws SolverError when the interior solve cannot reach kInteriorTolerance.
SchurReduction schur_reduce(const Pencil& pencil);

struct Spectrum {
  std::vector<double> mu;   // descending
  Eigen::MatrixXd vectors;  // full-space, B-orthonormal columns
  double kernel_cut = 0.0;
  std::size_t available = 0;  // number of mu above kernel_cut
};

struct ReducedSpectrum {
  std::vector<double> mu;
  Eigen::MatrixXd vectors;
  double kernel_cut = 0.0;
  std::size_t available = 0;
};

/// Largest k eigenvalues of A_bb x = mu S x (dense). Factor S = L L^T, solve
/// the standard problem for L^{-1} A_bb L^{-T}, back-transform.
/// Returned vectors are S-orthonormal reduced vectors.
/// Throws SolverError on Cholesky breakdown, ArgumentError if k exceeds the
/// number of eigenvalues above kernel_cut = 1e-10 * mu_max.
ReducedSpectrum solve_pencil_largest(const Eigen::MatrixXd& a_bb,
                                     const Eigen::MatrixXd& s, std::size_t k);

/// Reduce, solve and lift back to the full space.
Spectrum solve_pencil_largest(const Pencil& pencil, std::size_t k);

/// lambda_i = 1/mu_i, ascending. Throws ArgumentError for a mu at or below the
/// kernel cut.
std::vector<double> to_lambda(const Spectrum& spectrum, std::size_t k);

/// Residual enclosure of one computed eigenvalue.
///
/// Some eigenvalue of the pencil lies in [center - radius, center + radius].
/// The residual is evaluated in floating point, so the guarantee holds up to
/// rounding in that evaluation.
struct Enclosure {
  double center = 0.0;
  double radius = 0.0;
  double b_floor = 0.0;  // lower bound on lambda_min(B) that was used
  bool available = false;

  /// lambda-interval [1/(center+radius), 1/(center-radius)] if center > radius.
  std::optional<double> lambda_lower() const;
  std::optional<double> lambda_upper() const;
};

/// radius = ||A x - rho B x||_2 / (floor * ||x||_2) where floor is the larger
/// of gershgorin_floor(B) and pencil.b_floor_hint. Unavailable (not an error)
/// when that floor is not positive.
Enclosure certify(const Pencil& pencil, double rho, const Eigen::VectorXd& x);

}  // namespace steklov
