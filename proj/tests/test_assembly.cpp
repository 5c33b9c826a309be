#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steklov/assembly.hpp"
#include "steklov/eigensolve.hpp"

using namespace steklov;

namespace {

TriangleCorners unit_right() { return {Point{0, 0}, Point{1, 0}, Point{0, 1}}; }

TriangleCorners random_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    TriangleCorners k{Point{u(rng), u(rng)}, Point{u(rng), u(rng)}, Point{u(rng), u(rng)}};
    const double area = 0.5 * ((k[1].x - k[0].x) * (k[2].y - k[0].y) -
                               (k[2].x - k[0].x) * (k[1].y - k[0].y));
    if (area < 0.05) continue;  // keep away from slivers; orientation CCW
    return k;
  }
}

double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace

TEST(LocalMatrices, CrUnitRightTriangle) {
  Eigen::Matrix3d grad;
  grad << 4, -2, -2, -2, 2, 0, -2, 0, 2;
  EXPECT_LT((local_cr_stiffness(unit_right()) - grad).norm(), 1e-14);
  EXPECT_LT((local_cr_mass(unit_right()) - Eigen::Matrix3d::Identity() / 6.0).norm(), 1e-15);
  EXPECT_LT((local_cr_M(unit_right()) - oracle::local_M(unit_right(), true)).norm(), 1e-13);
}

TEST(LocalMatrices, P1UnitRightTriangle) {
  Eigen::Matrix3d grad;
  grad << 1, -0.5, -0.5, -0.5, 0.5, 0, -0.5, 0, 0.5;
  Eigen::Matrix3d mass;
  mass << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  mass *= 0.5 / 12.0;
  EXPECT_LT((local_p1_stiffness(unit_right()) - grad).norm(), 1e-15);
  EXPECT_LT((local_p1_mass(unit_right()) - mass).norm(), 1e-15);
  Eigen::Matrix2d edge;
  edge << 1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3;
  EXPECT_LT((local_p1_N({0, 0}, {1, 0}) - edge).norm(), 1e-15);
}

TEST(LocalMatrices, MatchQuadratureOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto k = random_triangle(rng);
    EXPECT_LT(rel_diff(local_cr_stiffness(k), oracle::local_M(k, true, true, false)), 1e-13);
    EXPECT_LT(rel_diff(local_cr_mass(k), oracle::local_M(k, true, false, true)), 1e-13);
    EXPECT_LT(rel_diff(local_p1_stiffness(k), oracle::local_M(k, false, true, false)), 1e-13);
    EXPECT_LT(rel_diff(local_p1_mass(k), oracle::local_M(k, false, false, true)), 1e-13);
    for (int e = 0; e < 3; ++e) {
      EXPECT_LT(rel_diff(local_cr_N(k, e), oracle::local_N(k, e, true)), 1e-13);
      const Eigen::Matrix3d p1 = oracle::local_N(k, e, false);
      const int a = (e + 1) % 3, b = (e + 2) % 3;
      Eigen::Matrix2d sub;
      sub << p1(a, a), p1(a, b), p1(b, a), p1(b, b);
      EXPECT_LT(rel_diff(local_p1_N(k[a], k[b]), sub), 1e-13);
    }
  }
}

TEST(LocalMatrices, CrMassIsDiagonalThirdOfArea) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = random_triangle(rng);
    const double area = oracle::abs_area(k);
    const Eigen::Matrix3d q = oracle::local_M(k, true, false, true);
    EXPECT_LT((q - Eigen::Matrix3d::Identity() * area / 3.0).norm(), 1e-13 * std::max(1.0, area));
  }
}

TEST(LocalMatrices, ScalingLaw) {
  std::mt19937_64 rng(3);
  const auto k = random_triangle(rng);
  const double s = 0.37;
  TriangleCorners ks = k;
  for (auto& p : ks) p = {p.x * s, p.y * s};
  EXPECT_LT((local_cr_stiffness(ks) - local_cr_stiffness(k)).norm(), 1e-13);
  EXPECT_LT((local_cr_mass(ks) - s * s * local_cr_mass(k)).norm(), 1e-14);
}

TEST(LocalMatrices, CrTraceMass) {
  // Edge opposite vertex 2 of the unit right triangle is (0,0)-(1,0), |e| = 1.
  const Eigen::Matrix3d n = local_cr_N(unit_right(), 2);
  Eigen::Matrix3d expected;
  // ordering by vertex: dofs 0 and 1 are the two other edges, dof 2 is on e
  expected << 1.0 / 3, -1.0 / 3, 0, -1.0 / 3, 1.0 / 3, 0, 0, 0, 1;
  EXPECT_LT((n - expected).norm(), 1e-15);
  // trace of u == 1 has length |e|
  EXPECT_NEAR(Eigen::Vector3d::Ones().dot(n * Eigen::Vector3d::Ones()), 1.0, 1e-15);

  const TriangleCorners tiny{Point{0, 0}, Point{1e-6, 0}, Point{0, 1}};
  EXPECT_LT(local_cr_N(tiny, 2).norm(), 2e-6);

  const Eigen::Matrix3d by_points = local_cr_N(unit_right(), {Point{1, 0}, Point{0, 0}});
  EXPECT_EQ(by_points, n);
  EXPECT_THROW(local_cr_N(unit_right(), {Point{0, 0}, Point{2, 0}}), ArgumentError);
  EXPECT_THROW(local_cr_N(unit_right(), 3), ArgumentError);
}

TEST(LocalMatrices, DegenerateTriangleThrows) {
  const TriangleCorners flat{Point{0, 0}, Point{1, 1}, Point{2, 2}};
  EXPECT_THROW(local_cr_M(flat), DegenerateGeometryError);
  EXPECT_THROW(local_p1_M(flat), DegenerateGeometryError);
}

TEST(DofMap, Sizes) {
  const Mesh m = generate_uniform_square(4);
  const auto cr = make_dof_map(m, ElementKind::crouzeix_raviart);
  const auto p1 = make_dof_map(m, ElementKind::lagrange_p1);
  EXPECT_EQ(cr.dof_count, static_cast<Index>(m.num_edges()));
  EXPECT_EQ(p1.dof_count, static_cast<Index>(m.num_vertices()));
  EXPECT_EQ(p1.boundary_support.size(), 16u);
  std::set<Index> expected;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    bool touches = false;
    for (int i = 0; i < 3; ++i) touches = touches || m.edges()[m.triangle_edge(t, i)].boundary;
    if (!touches) continue;
    for (int i = 0; i < 3; ++i) expected.insert(static_cast<Index>(m.triangle_edge(t, i)));
  }
  EXPECT_EQ(cr.boundary_support, std::vector<Index>(expected.begin(), expected.end()));
}

TEST(Assemble, ConstantFunctionIdentities) {
  const std::vector<Mesh> meshes{generate_uniform_square(5), generate_graded_lshape(3, 3.0)};
  for (const auto& m : meshes) {
    for (auto kind : {ElementKind::crouzeix_raviart, ElementKind::lagrange_p1}) {
      const auto sys = assemble(m, kind);
      const Eigen::VectorXd one = Eigen::VectorXd::Ones(sys.dofs.dof_count);
      const double area = domain_area(m.domain_tag());
      const double perimeter = domain_perimeter(m.domain_tag());
      EXPECT_NEAR(sys.M.quadratic_form(one), area, 1e-12 * area);
      EXPECT_NEAR(sys.N.quadratic_form(one), perimeter, 1e-12 * perimeter);
    }
  }
}

TEST(Assemble, TwoByTwoSquareSupport) {
  const auto sys = assemble(generate_uniform_square(2), ElementKind::crouzeix_raviart);
  EXPECT_EQ(sys.M.dim(), 16);
  EXPECT_EQ(sys.N.nonzero_rows(), sys.dofs.boundary_support);
  EXPECT_EQ(sys.dofs.boundary_support.size(), 16u);  // every triangle touches the boundary

  const auto big = assemble(generate_uniform_square(6), ElementKind::crouzeix_raviart);
  EXPECT_EQ(big.N.nonzero_rows(), big.dofs.boundary_support);
  const auto p1 = assemble(generate_uniform_square(6), ElementKind::lagrange_p1);
  EXPECT_EQ(p1.N.nonzero_rows(), p1.dofs.boundary_support);
}

TEST(Assemble, MatchesDenseOracle) {
  const Mesh m = generate_uniform_square(2);
  for (bool cr : {true, false}) {
    const auto sys = assemble(m, cr ? ElementKind::crouzeix_raviart : ElementKind::lagrange_p1);
    const Index n = sys.dofs.dof_count;
    Eigen::MatrixXd mo = Eigen::MatrixXd::Zero(n, n), no = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
      const auto k = m.corners(t);
      const auto& v = m.triangles()[t].v;
      std::array<Index, 3> g{};
      for (int i = 0; i < 3; ++i) {
        if (!cr) {
          g[i] = v[i];
          continue;
        }
        // locate the edge opposite vertex i by its endpoints
        Index a = v[(i + 1) % 3], b = v[(i + 2) % 3];
        if (a > b) std::swap(a, b);
        for (std::size_t e = 0; e < m.num_edges(); ++e)
          if (m.edges()[e].endpoints == std::array<Index, 2>{a, b}) g[i] = static_cast<Index>(e);
      }
      const Eigen::Matrix3d ml = oracle::local_M(k, cr);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mo(g[i], g[j]) += ml(i, j);
      for (int e = 0; e < 3; ++e) {
        Index a = v[(e + 1) % 3], b = v[(e + 2) % 3];
        int incident = 0;
        for (std::size_t u = 0; u < m.num_triangles(); ++u) {
          const auto& w = m.triangles()[u].v;
          const bool has_a = std::find(w.begin(), w.end(), a) != w.end();
          const bool has_b = std::find(w.begin(), w.end(), b) != w.end();
          incident += has_a && has_b ? 1 : 0;
        }
        if (incident != 1) continue;
        const Eigen::Matrix3d nl = oracle::local_N(k, e, cr);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) no(g[i], g[j]) += nl(i, j);
      }
    }
    EXPECT_LT((sys.M.to_dense() - mo).norm(), 1e-13);
    EXPECT_LT((sys.N.to_dense() - no).norm(), 1e-13);
  }
}

TEST(Assemble, Definiteness) {
  const auto sys = assemble(generate_graded_lshape(3, 3.0), ElementKind::crouzeix_raviart);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd x(sys.dofs.dof_count);
    for (auto& v : x) v = g(rng);
    EXPECT_GT(sys.M.quadratic_form(x), 0.0);
    EXPECT_GE(sys.N.quadratic_form(x), -1e-14 * x.squaredNorm());
  }
}

TEST(Assemble, GershgorinFloorOfCrM) {
  const Mesh m = generate_uniform_square(8);
  const auto sys = assemble(m, ElementKind::crouzeix_raviart);
  // min over edges of sum_{K containing e} |K|/3: boundary edges, one triangle
  const double patch = (1.0 / 128) / 3.0;
  EXPECT_GT(gershgorin_floor(sys.M), 0.0);
  EXPECT_GE(gershgorin_floor(sys.M), patch * (1 - 1e-10));
  EXPECT_NEAR(sys.mass_floor, patch, 1e-15);
}

TEST(Assemble, TraceRankEqualsNonzeroModes) {
  for (int n : {2, 3}) {
    const auto sys = assemble(generate_uniform_square(n), ElementKind::crouzeix_raviart);
    const auto rank = oracle::numerical_rank(sys.N.to_dense());
    const auto red = schur_reduce(make_pencil(sys));
    const auto spec = solve_pencil_largest(red.a_bb(), red.s(), 1);
    EXPECT_EQ(static_cast<Eigen::Index>(spec.available), rank);
  }
}

TEST(Assemble, InadmissibleMeshCarriesReport) {
  try {
    assemble(generate_uniform_square(1), ElementKind::crouzeix_raviart);
    FAIL() << "expected InadmissibleMeshError";
  } catch (const InadmissibleMeshError& e) {
    EXPECT_EQ(e.report().multiple_boundary_edges.size(), 2u);
  }
}

TEST(Assemble, IsBitReproducible) {
  const Mesh m = generate_graded_lshape(3, 3.0);
  const auto a = assemble(m, ElementKind::crouzeix_raviart);
  const auto b = assemble(m, ElementKind::crouzeix_raviart);
  ASSERT_EQ(a.M.nonzeros(), b.M.nonzeros());
  for (std::size_t i = 0; i < a.M.nonzeros(); ++i) {
    EXPECT_EQ(a.M.entries()[i].row, b.M.entries()[i].row);
    EXPECT_EQ(a.M.entries()[i].col, b.M.entries()[i].col);
    EXPECT_EQ(a.M.entries()[i].value, b.M.entries()[i].value);
  }
}

TEST(SparseSymMatrix, CoordinateDump) {
  SparseSymMatrix m(2);
  m.add(1, 0, 0.5);
  m.add(0, 0, 2.0);
  m.add(0, 1, 0.25);
  m.finalize();
  std::ostringstream out;
  write_coordinate(m, out);
  EXPECT_EQ(out.str(), "2\n0 0 2\n0 1 0.75\n");
  EXPECT_DOUBLE_EQ(m.coeff(1, 0), 0.75);
  EXPECT_DOUBLE_EQ(m.coeff(1, 1), 0.0);
}
