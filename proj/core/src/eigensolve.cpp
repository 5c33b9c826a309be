#include "steklov/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "steklov/assembly.hpp"
#include "steklov/error.hpp"

namespace steklov {

Pencil make_pencil(const AssembledSystem& system) {
  Pencil p;
  p.a = system.N;
  p.b = system.M;
  p.support = system.dofs.boundary_support;
  p.b_floor_hint = system.mass_floor;
  return p;
}

// Sparse LDL^T with AMD ordering; conjugate gradient when the factorization
// breaks down.
struct SchurReduction::InteriorSolver {
  Eigen::SparseMatrix<double> b_ii;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> direct;
  std::optional<Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                                         Eigen::Lower | Eigen::Upper>>
      iterative;

  explicit InteriorSolver(Eigen::SparseMatrix<double> m) : b_ii(std::move(m)) {
    direct.compute(b_ii);
    if (direct.info() != Eigen::Success) {
      iterative.emplace();
      iterative->setTolerance(kInteriorTolerance * 0.1);
      iterative->setMaxIterations(std::max<Eigen::Index>(1000, 10 * b_ii.rows()));
      iterative->compute(b_ii);
    }
  }

  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const {
    if (!iterative) return direct.solve(rhs);
    Eigen::MatrixXd x(rhs.rows(), rhs.cols());
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) x.col(c) = iterative->solve(rhs.col(c));
    return x;
  }
};

namespace {

// Rows/cols of `m` selected by `rows` x `cols` as a sparse matrix.
Eigen::SparseMatrix<double> extract(const Eigen::SparseMatrix<double>& m,
                                    const std::vector<Index>& rows,
                                    const std::vector<Index>& cols) {
  std::vector<Index> row_pos(static_cast<std::size_t>(m.rows()), kNoIndex);
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<Index>(i);
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, cols[j]); it; ++it) {
      const Index r = row_pos[it.row()];
      if (r != kNoIndex) trips.emplace_back(r, static_cast<Index>(j), it.value());
    }
  }
  Eigen::SparseMatrix<double> out(static_cast<Index>(rows.size()),
                                  static_cast<Index>(cols.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace

SchurReduction schur_reduce(const Pencil& pencil) {
  const Index n = pencil.b.dim();
  if (pencil.a.dim() != n) throw ArgumentError("pencil matrices differ in dimension");
  if (!std::is_sorted(pencil.support.begin(), pencil.support.end()))
    throw ArgumentError("pencil support must be sorted");

  SchurReduction red;
  red.full_dim_ = n;
  red.boundary_ = pencil.support;
  std::vector<char> in_b(static_cast<std::size_t>(n), 0);
  for (Index i : red.boundary_) {
    if (i < 0 || i >= n) throw ArgumentError("pencil support index out of range");
    in_b[i] = 1;
  }
  for (Index i = 0; i < n; ++i)
    if (!in_b[i]) red.interior_.push_back(i);

  for (const auto& e : pencil.a.entries()) {
    if (e.value != 0.0 && (!in_b[e.row] || !in_b[e.col]))
      throw ArgumentError("A has entries outside the declared support");
  }

  const Eigen::SparseMatrix<double> b = pencil.b.to_eigen();
  const auto nb = static_cast<Eigen::Index>(red.boundary_.size());
  red.s_ = Eigen::MatrixXd(extract(b, red.boundary_, red.boundary_));
  red.a_bb_ = extract(pencil.a.to_eigen(), red.boundary_, red.boundary_);
  red.a_bb_ = 0.5 * (red.a_bb_ + red.a_bb_.transpose()).eval();

  if (!red.interior_.empty()) {
    red.b_ib_ = extract(b, red.interior_, red.boundary_);
    auto solver = std::make_shared<SchurReduction::InteriorSolver>(
        extract(b, red.interior_, red.interior_));

    constexpr Eigen::Index kBlock = 64;
    for (Eigen::Index c0 = 0; c0 < nb; c0 += kBlock) {
      const Eigen::Index width = std::min(kBlock, nb - c0);
      const Eigen::MatrixXd rhs = Eigen::MatrixXd(red.b_ib_.middleCols(c0, width));
      const Eigen::MatrixXd z = solver->solve(rhs);
      const double rhs_norm = rhs.norm();
      if (rhs_norm > 0.0) {
        const double res = (solver->b_ii * z - rhs).norm() / rhs_norm;
        red.interior_residual_ = std::max(red.interior_residual_, res);
        if (!(res <= kInteriorTolerance)) {
          std::ostringstream msg;
          msg << "interior solve did not converge: relative residual " << res;
          throw SolverError(msg.str());
        }
      }
      red.s_.middleCols(c0, width).noalias() -= red.b_ib_.transpose() * z;
    }
    red.s_ = 0.5 * (red.s_ + red.s_.transpose()).eval();
    red.solver_ = std::move(solver);
  }
  return red;
}

Eigen::VectorXd SchurReduction::lift(const Eigen::VectorXd& xb) const {
  if (xb.size() != static_cast<Eigen::Index>(boundary_.size()))
    throw ArgumentError("reduced vector has the wrong length");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(full_dim_);
  for (std::size_t i = 0; i < boundary_.size(); ++i) x[boundary_[i]] = xb[i];
  if (solver_) {
    const Eigen::VectorXd rhs = b_ib_ * xb;
    const Eigen::VectorXd xi = solver_->solve(rhs);
    for (std::size_t i = 0; i < interior_.size(); ++i) x[interior_[i]] = -xi[i];
  }
  return x;
}

ReducedSpectrum solve_pencil_largest(const Eigen::MatrixXd& a_bb,
                                     const Eigen::MatrixXd& s, std::size_t k) {
  if (a_bb.rows() != s.rows() || a_bb.cols() != s.cols() || s.rows() != s.cols())
    throw ArgumentError("reduced pencil matrices must be square and equal in size");
  if (k == 0) throw ArgumentError("eigenvalue count must be positive");

  const Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success)
    throw SolverError("Cholesky factorization of the reduced B failed (not SPD)");
  const auto l = llt.matrixL();

  // C = L^{-1} A L^{-T}
  Eigen::MatrixXd c = l.solve(a_bb);
  c = l.solve(c.transpose()).transpose().eval();
  c = 0.5 * (c + c.transpose()).eval();

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  if (eig.info() != Eigen::Success) throw SolverError("symmetric eigensolver failed");

  const Eigen::Index n = c.rows();
  ReducedSpectrum out;
  const double mu_max = n > 0 ? eig.eigenvalues()[n - 1] : 0.0;
  out.kernel_cut = kKernelCutRelative * std::max(mu_max, 0.0);
  for (Eigen::Index i = n - 1; i >= 0 && eig.eigenvalues()[i] > out.kernel_cut; --i)
    ++out.available;
  if (mu_max <= 0.0) out.available = 0;
  if (k > out.available) {
    throw ArgumentError("requested " + std::to_string(k) + " eigenvalues but only " +
                        std::to_string(out.available) + " lie above the kernel cut");
  }

  out.vectors.resize(n, static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    const Eigen::Index col = n - 1 - static_cast<Eigen::Index>(j);
    out.mu.push_back(eig.eigenvalues()[col]);
    out.vectors.col(static_cast<Eigen::Index>(j)) =
        l.transpose().solve(eig.eigenvectors().col(col));
  }
  return out;
}

Spectrum solve_pencil_largest(const Pencil& pencil, std::size_t k) {
  const SchurReduction red = schur_reduce(pencil);
  const ReducedSpectrum reduced = solve_pencil_largest(red.a_bb(), red.s(), k);
  Spectrum out;
  out.mu = reduced.mu;
  out.kernel_cut = reduced.kernel_cut;
  out.available = reduced.available;
  out.vectors.resize(red.full_dim(), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j)
    out.vectors.col(static_cast<Eigen::Index>(j)) =
        red.lift(reduced.vectors.col(static_cast<Eigen::Index>(j)));
  return out;
}

std::vector<double> to_lambda(const Spectrum& spectrum, std::size_t k) {
  if (k > spectrum.mu.size())
    throw ArgumentError("requested more eigenvalues than were computed");
  std::vector<double> lambda;
  lambda.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double mu = spectrum.mu[i];
    if (!(mu > spectrum.kernel_cut) || !(mu > 0.0))
      throw ArgumentError("eigenvalue " + std::to_string(i + 1) +
                          " lies in the kernel of the trace form");
    lambda.push_back(1.0 / mu);
  }
  return lambda;
}

std::optional<double> Enclosure::lambda_lower() const {
  if (!available || !(center + radius > 0.0)) return std::nullopt;
  return 1.0 / (center + radius);
}

std::optional<double> Enclosure::lambda_upper() const {
  if (!available || !(center - radius > 0.0)) return std::nullopt;
  return 1.0 / (center - radius);
}

Enclosure certify(const Pencil& pencil, double rho, const Eigen::VectorXd& x) {
  const double xnorm = x.norm();
  if (!(xnorm > 0.0)) throw ArgumentError("certification needs a nonzero vector");
  Enclosure enc;
  enc.center = rho;
  enc.b_floor = std::max(gershgorin_floor(pencil.b), pencil.b_floor_hint);
  if (!(enc.b_floor > 0.0)) return enc;
  const Eigen::VectorXd r = pencil.a.multiply(x) - rho * pencil.b.multiply(x);
  enc.radius = r.norm() / (enc.b_floor * xnorm);
  enc.available = true;
  return enc;
}

}  // namespace steklov
