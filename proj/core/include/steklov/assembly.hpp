#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "steklov/error.hpp"
#include "steklov/mesh.hpp"
#include "steklov/sparse.hpp"

namespace steklov {

enum class ElementKind { crouzeix_raviart, lagrange_p1 };

std::string to_string(ElementKind kind);

using TriangleCorners = std::array<Point, 3>;
using LocalMatrix = Eigen::Matrix3d;

// Local matrices. Crouzeix-Raviart basis: phi_i = 1 - 2*lambda_i, attached to
// the edge opposite vertex i. P1 basis: phi_i = lambda_i.

/// Gradient part of the CR local M: int_K grad phi_i . grad phi_j.
LocalMatrix local_cr_stiffness(const TriangleCorners& k);
/// Mass part of the CR local M; diagonal with |K|/3.
LocalMatrix local_cr_mass(const TriangleCorners& k);
/// Full CR local M (stiffness + mass).
LocalMatrix local_cr_M(const TriangleCorners& k);

/// CR boundary trace mass int_e phi_i phi_j for the edge opposite vertex
/// `opposite`. In ordering (dof on e, the two others) this is
/// |e| * [[1,0,0],[0,1/3,-1/3],[0,-1/3,1/3]].
LocalMatrix local_cr_N(const TriangleCorners& k, int opposite);
/// Same, with the boundary edge given by its endpoints; throws ArgumentError
/// when they are not two corners of k.
LocalMatrix local_cr_N(const TriangleCorners& k, const std::array<Point, 2>& edge);

LocalMatrix local_p1_stiffness(const TriangleCorners& k);
LocalMatrix local_p1_mass(const TriangleCorners& k);
LocalMatrix local_p1_M(const TriangleCorners& k);
/// |e|/6 * [[2,1],[1,2]].
Eigen::Matrix2d local_p1_N(Point a, Point b);

struct DofMap {
  ElementKind kind = ElementKind::crouzeix_raviart;
  Index dof_count = 0;
  std::vector<std::array<Index, 3>> local_to_global;  // per triangle
  std::vector<Index> boundary_support;                // sorted
};

DofMap make_dof_map(const Mesh& mesh, ElementKind kind);

class InadmissibleMeshError : public MeshError {
 public:
  explicit InadmissibleMeshError(AdmissibilityReport report)
      : MeshError("mesh is not admissible: " + report.summary()),
        report_(std::move(report)) {}
  const AdmissibilityReport& report() const noexcept { return report_; }

 private:
  AdmissibilityReport report_;
};

struct AssembledSystem {
  SparseSymMatrix M;  // broken H^1 Gram matrix
  SparseSymMatrix N;  // boundary trace mass
  DofMap dofs;
  /// Lower bound on lambda_min(M) from the mass part alone: the CR mass is
  /// diagonal, the P1 mass dominates a quarter of its lumped diagonal.
  double mass_floor = 0.0;
};

/// Assembles M and N on an admissible mesh.
/// Throws InadmissibleMeshError carrying the validation report otherwise.
AssembledSystem assemble(const Mesh& mesh, ElementKind kind);

}  // namespace steklov
