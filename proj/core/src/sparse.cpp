#include "steklov/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

#include "steklov/error.hpp"

namespace steklov {

void SparseSymMatrix::add(Index row, Index col, double value) {
  if (row < 0 || col < 0 || row >= dim_ || col >= dim_)
    throw ArgumentError("matrix index out of range");
  if (row > col) std::swap(row, col);
  entries_.push_back({row, col, value});
  finalized_ = false;
}

void SparseSymMatrix::finalize() {
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  entries_ = std::move(merged);
  finalized_ = true;
}

void SparseSymMatrix::require_finalized() const {
  if (!finalized_) throw ArgumentError("matrix must be finalized first");
}

double SparseSymMatrix::coeff(Index row, Index col) const {
  require_finalized();
  if (row > col) std::swap(row, col);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{row, col, 0.0},
                             [](const Entry& a, const Entry& b) {
                               return a.row != b.row ? a.row < b.row : a.col < b.col;
                             });
  return (it != entries_.end() && it->row == row && it->col == col) ? it->value : 0.0;
}

Eigen::VectorXd SparseSymMatrix::multiply(const Eigen::VectorXd& x) const {
  require_finalized();
  if (x.size() != dim_) throw ArgumentError("dimension mismatch in multiply");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(dim_);
  for (const auto& e : entries_) {
    y[e.row] += e.value * x[e.col];
    if (e.row != e.col) y[e.col] += e.value * x[e.row];
  }
  return y;
}

double SparseSymMatrix::quadratic_form(const Eigen::VectorXd& x) const {
  return x.dot(multiply(x));
}

Eigen::SparseMatrix<double> SparseSymMatrix::to_eigen() const {
  require_finalized();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * entries_.size());
  for (const auto& e : entries_) {
    trips.emplace_back(e.row, e.col, e.value);
    if (e.row != e.col) trips.emplace_back(e.col, e.row, e.value);
  }
  Eigen::SparseMatrix<double> m(dim_, dim_);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
  require_finalized();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  for (const auto& e : entries_) {
    m(e.row, e.col) += e.value;
    if (e.row != e.col) m(e.col, e.row) += e.value;
  }
  return m;
}

std::vector<Index> SparseSymMatrix::nonzero_rows() const {
  require_finalized();
  std::vector<char> hit(static_cast<std::size_t>(dim_), 0);
  for (const auto& e : entries_) {
    if (e.value != 0.0) {
      hit[e.row] = 1;
      hit[e.col] = 1;
    }
  }
  std::vector<Index> rows;
  for (Index i = 0; i < dim_; ++i)
    if (hit[i]) rows.push_back(i);
  return rows;
}

double gershgorin_floor(const SparseSymMatrix& a) {
  if (!a.finalized()) throw ArgumentError("matrix must be finalized first");
  if (a.dim() == 0) return 0.0;
  std::vector<double> diag(static_cast<std::size_t>(a.dim()), 0.0);
  std::vector<double> off(static_cast<std::size_t>(a.dim()), 0.0);
  for (const auto& e : a.entries()) {
    if (e.row == e.col) {
      diag[e.row] += e.value;
    } else {
      off[e.row] += std::abs(e.value);
      off[e.col] += std::abs(e.value);
    }
  }
  double floor = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < diag.size(); ++i) floor = std::min(floor, diag[i] - off[i]);
  return floor;
}

void write_coordinate(const SparseSymMatrix& a, std::ostream& out) {
  if (!a.finalized()) throw ArgumentError("matrix must be finalized first");
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << a.dim() << '\n';
  for (const auto& e : a.entries()) out << e.row << ' ' << e.col << ' ' << e.value << '\n';
  out.precision(old_precision);
}

}  // namespace steklov
