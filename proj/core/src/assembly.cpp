#include "steklov/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace steklov {

std::string to_string(ElementKind kind) {
  return kind == ElementKind::crouzeix_raviart ? "CR" : "P1";
}

namespace {

double checked_area(const TriangleCorners& k) {
  const double area = 0.5 * ((k[1].x - k[0].x) * (k[2].y - k[0].y) -
                             (k[2].x - k[0].x) * (k[1].y - k[0].y));
  if (!(std::abs(area) > kAreaTolerance))
    throw DegenerateGeometryError("degenerate triangle in local assembly");
  return area;
}

// Barycentric gradients scaled by 2|K|: rows are rot90(edge opposite i).
Eigen::Matrix<double, 3, 2> scaled_gradients(const TriangleCorners& k) {
  Eigen::Matrix<double, 3, 2> g;
  for (int i = 0; i < 3; ++i) {
    const Point a = k[(i + 1) % 3];
    const Point b = k[(i + 2) % 3];
    g(i, 0) = -(b.y - a.y);
    g(i, 1) = b.x - a.x;
  }
  return g;
}

}  // namespace

LocalMatrix local_p1_stiffness(const TriangleCorners& k) {
  const double area = checked_area(k);
  const auto g = scaled_gradients(k);
  return (g * g.transpose()) / (4.0 * std::abs(area));
}

LocalMatrix local_p1_mass(const TriangleCorners& k) {
  const double area = std::abs(checked_area(k));
  LocalMatrix m;
  m.setConstant(area / 12.0);
  m.diagonal().setConstant(area / 6.0);
  return m;
}

LocalMatrix local_p1_M(const TriangleCorners& k) {
  return local_p1_stiffness(k) + local_p1_mass(k);
}

Eigen::Matrix2d local_p1_N(Point a, Point b) {
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  Eigen::Matrix2d m;
  m << 2.0, 1.0, 1.0, 2.0;
  return m * (len / 6.0);
}

LocalMatrix local_cr_stiffness(const TriangleCorners& k) {
  // grad(1 - 2 lambda_i) = -2 grad lambda_i
  return 4.0 * local_p1_stiffness(k);
}

LocalMatrix local_cr_mass(const TriangleCorners& k) {
  const double area = std::abs(checked_area(k));
  return LocalMatrix::Identity() * (area / 3.0);
}

LocalMatrix local_cr_M(const TriangleCorners& k) {
  return local_cr_stiffness(k) + local_cr_mass(k);
}

LocalMatrix local_cr_N(const TriangleCorners& k, int opposite) {
  if (opposite < 0 || opposite > 2)
    throw ArgumentError("local edge index must be 0, 1 or 2");
  checked_area(k);
  const Point a = k[(opposite + 1) % 3];
  const Point b = k[(opposite + 2) % 3];
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  const int ia = (opposite + 1) % 3;
  const int ib = (opposite + 2) % 3;
  // On e: phi_opposite = 1, phi_a = 2s - 1, phi_b = 1 - 2s.
  LocalMatrix m = LocalMatrix::Zero();
  m(opposite, opposite) = len;
  m(ia, ia) = len / 3.0;
  m(ib, ib) = len / 3.0;
  m(ia, ib) = -len / 3.0;
  m(ib, ia) = -len / 3.0;
  return m;
}

LocalMatrix local_cr_N(const TriangleCorners& k, const std::array<Point, 2>& edge) {
  auto same = [](Point p, Point q) { return p.x == q.x && p.y == q.y; };
  for (int i = 0; i < 3; ++i) {
    const Point a = k[(i + 1) % 3];
    const Point b = k[(i + 2) % 3];
    if ((same(a, edge[0]) && same(b, edge[1])) || (same(a, edge[1]) && same(b, edge[0])))
      return local_cr_N(k, i);
  }
  throw ArgumentError("edge is not an edge of the triangle");
}

DofMap make_dof_map(const Mesh& mesh, ElementKind kind) {
  DofMap map;
  map.kind = kind;
  const std::size_t nt = mesh.num_triangles();
  map.local_to_global.resize(nt);
  std::vector<char> support;
  if (kind == ElementKind::crouzeix_raviart) {
    map.dof_count = static_cast<Index>(mesh.num_edges());
    support.assign(mesh.num_edges(), 0);
    for (std::size_t t = 0; t < nt; ++t) {
      bool touches = false;
      for (int i = 0; i < 3; ++i) {
        map.local_to_global[t][i] = mesh.triangle_edge(t, i);
        touches = touches || mesh.edges()[mesh.triangle_edge(t, i)].boundary;
      }
      if (touches)
        for (Index d : map.local_to_global[t]) support[d] = 1;
    }
  } else {
    map.dof_count = static_cast<Index>(mesh.num_vertices());
    support.assign(mesh.num_vertices(), 0);
    for (std::size_t t = 0; t < nt; ++t) map.local_to_global[t] = mesh.triangles()[t].v;
    for (const auto& e : mesh.edges()) {
      if (!e.boundary) continue;
      support[e.endpoints[0]] = 1;
      support[e.endpoints[1]] = 1;
    }
  }
  for (std::size_t d = 0; d < support.size(); ++d)
    if (support[d]) map.boundary_support.push_back(static_cast<Index>(d));
  return map;
}

AssembledSystem assemble(const Mesh& mesh, ElementKind kind) {
  auto report = check_admissibility(mesh);
  if (!report.passed) throw InadmissibleMeshError(std::move(report));

  AssembledSystem sys;
  sys.dofs = make_dof_map(mesh, kind);
  const Index n = sys.dofs.dof_count;
  sys.M = SparseSymMatrix(n);
  sys.N = SparseSymMatrix(n);
  std::vector<double> patch_area(static_cast<std::size_t>(n), 0.0);

  const bool cr = kind == ElementKind::crouzeix_raviart;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto k = mesh.corners(t);
    const auto& dofs = sys.dofs.local_to_global[t];
    const LocalMatrix m = cr ? local_cr_M(k) : local_p1_M(k);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) sys.M.add(dofs[i], dofs[j], m(i, j));

    const double area = mesh.signed_area(t);
    for (Index d : dofs) patch_area[d] += area;

    for (int i = 0; i < 3; ++i) {
      if (!mesh.edges()[mesh.triangle_edge(t, i)].boundary) continue;
      if (cr) {
        const LocalMatrix nl = local_cr_N(k, i);
        for (int r = 0; r < 3; ++r)
          for (int c = r; c < 3; ++c)
            if (nl(r, c) != 0.0) sys.N.add(dofs[r], dofs[c], nl(r, c));
      } else {
        const int a = (i + 1) % 3;
        const int b = (i + 2) % 3;
        const Eigen::Matrix2d nl = local_p1_N(k[a], k[b]);
        sys.N.add(dofs[a], dofs[a], nl(0, 0));
        sys.N.add(dofs[a], dofs[b], nl(0, 1));
        sys.N.add(dofs[b], dofs[b], nl(1, 1));
      }
    }
  }
  sys.M.finalize();
  sys.N.finalize();

  const double factor = cr ? 1.0 / 3.0 : 1.0 / 12.0;
  double floor = std::numeric_limits<double>::infinity();
  for (double a : patch_area) floor = std::min(floor, a * factor);
  sys.mass_floor = n > 0 ? floor : 0.0;
  return sys;
}

}  // namespace steklov
