#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "steklov/mesh.hpp"

namespace steklov {

/// Symmetric sparse matrix stored as its upper triangle (row <= col).
///
/// Entries are accumulated with add() and compressed by finalize(), which
/// sorts by (row, col) and sums duplicates in insertion order, so identical
/// input sequences give bit-identical matrices.
class SparseSymMatrix {
 public:
  struct Entry {
    Index row;
    Index col;
    double value;
  };

  SparseSymMatrix() = default;
  explicit SparseSymMatrix(Index dim) : dim_(dim) {}

  Index dim() const noexcept { return dim_; }
  bool finalized() const noexcept { return finalized_; }

  /// Adds value at (row, col); either triangle may be addressed.
  void add(Index row, Index col, double value);
  void finalize();

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  /// Entry (row, col) of the finalized matrix, 0 if absent.
  double coeff(Index row, Index col) const;

  /// y = A x using both triangles.
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  double quadratic_form(const Eigen::VectorXd& x) const;

  /// Full symmetric matrix in Eigen's compressed column form.
  Eigen::SparseMatrix<double> to_eigen() const;
  Eigen::MatrixXd to_dense() const;

  /// Rows whose entries are not all zero.
  std::vector<Index> nonzero_rows() const;

 private:
  void require_finalized() const;

  Index dim_ = 0;
  std::vector<Entry> entries_;
  bool finalized_ = false;
};

/// min_i (a_ii - sum_{j != i} |a_ij|); a lower bound for the smallest
/// eigenvalue whenever it is positive.
double gershgorin_floor(const SparseSymMatrix& a);

/// Coordinate dump: "<dim>" then "<row> <col> <value>" lines, row <= col.
void write_coordinate(const SparseSymMatrix& a, std::ostream& out);

}  // namespace steklov
