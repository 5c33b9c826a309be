#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace steklov {

using Index = std::int64_t;
inline constexpr Index kNoIndex = -1;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Vertex indices in counter-clockwise order.
struct Triangle {
  std::array<Index, 3> v{};
};

struct Edge {
  std::array<Index, 2> endpoints{};  // sorted ascending
  std::vector<Index> incident;       // triangles sharing the edge
  bool boundary = false;             // exactly one incident triangle
};

enum class DomainTag { square, lshape, external };

std::string to_string(DomainTag tag);

/// Triangulation with a derived edge table.
///
/// Construction validates vertex indices (in range, pairwise distinct) and
/// builds the edges; it does not judge conformity or orientation. That is the
/// job of check_admissibility(), which reports instead of throwing.
class Mesh {
 public:
  Mesh() = default;
  Mesh(std::vector<Point> points, std::vector<Triangle> triangles,
       DomainTag tag = DomainTag::external);

  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  DomainTag domain_tag() const noexcept { return tag_; }

  std::size_t num_vertices() const noexcept { return points_.size(); }
  std::size_t num_triangles() const noexcept { return triangles_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::size_t num_boundary_edges() const noexcept;

  /// Global index of the edge of triangle t opposite its local vertex i.
  Index triangle_edge(std::size_t t, int i) const { return tri_edges_[t][i]; }

  std::array<Point, 3> corners(std::size_t t) const;

  /// Signed shoelace area; positive for counter-clockwise triangles.
  double signed_area(std::size_t t) const;

 private:
  std::vector<Point> points_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<Index, 3>> tri_edges_;
  DomainTag tag_ = DomainTag::external;
};

/// Areas at or below this (absolute) are treated as degenerate.
inline constexpr double kAreaTolerance = 1e-14;

/// Area of the declared domain; NaN for external meshes.
double domain_area(DomainTag tag);
/// Perimeter of the declared domain; NaN for external meshes.
double domain_perimeter(DomainTag tag);

// --- generators -------------------------------------------------------------

/// Uniform right-triangle mesh of the unit square with n cells per side.
///
/// Cells in the lower-left and upper-right quadrants are cut by the "/"
/// diagonal, the other two quadrants by "\", so every corner cell's diagonal
/// passes through its domain corner and every boundary triangle owns exactly
/// one boundary edge when n >= 2. For even n the mesh has the full symmetry
/// of the square, which keeps the double eigenvalues of the square double.
Mesh generate_uniform_square(int n);

struct LShapeOptions {
  int n0 = 8;            // base cells per unit length
  double grading = 3.0;  // target h_K ~ r^(1/grading); 1 disables grading
  double radius = 1.0;   // refinement zone around the re-entrant corner
  int corner_levels = 5; // extra leg halvings allowed at the corner
};

/// Graded mesh of (0,2)^2 \ [1,2]^2 refined toward the corner (1,1).
///
/// Starts from the uniform right-triangle grid and applies newest-vertex
/// bisection until h_K <= (sqrt2/n0) * min(1, max(r, r_min)/radius)^(1/grading),
/// where r is the distance from K to the corner. Bisection of right isosceles
/// triangles keeps every angle at 45 or 90 degrees.
Mesh generate_graded_lshape(const LShapeOptions& options);
Mesh generate_graded_lshape(int n0, double grading);

/// Picks n0 so the element count lands closest to target_elements.
Mesh generate_graded_lshape_for_count(std::size_t target_elements,
                                      double grading);

/// Target element size used by generate_graded_lshape.
double lshape_size_bound(const LShapeOptions& options, double r);

/// Distance from point p to the closed triangle.
double distance_to_triangle(const std::array<Point, 3>& tri, Point p);

/// Smallest interior angle over all triangles, in degrees.
double min_angle_degrees(const Mesh& mesh);

inline constexpr double kMinAngleFloorDegrees = 10.0;

// --- geometry ---------------------------------------------------------------

struct GeometryTable {
  std::vector<double> h;           // longest edge per triangle
  std::vector<double> area;        // |K|
  std::vector<double> boundary_height;  // H_K, 0 for interior triangles
  std::vector<int> boundary_edge;  // local edge (opposite vertex), -1 if none
  double max_h = 0.0;
  double max_h_over_sqrt_height = 0.0;  // over boundary triangles
  std::size_t boundary_triangles = 0;
};

/// Per-element h_K, |K| and H_K = 2|K|/|e| plus the maxima feeding C_h.
/// A triangle with several boundary edges uses the one with the smallest
/// height, which maximises h_K/sqrt(H_K).
/// Throws DegenerateGeometryError on a non-positive area.
GeometryTable compute_geometry(const Mesh& mesh);

struct AdmissibilityReport {
  bool passed = true;
  std::vector<Index> nonpositive_area;      // triangles
  std::vector<Index> multiple_boundary_edges;  // triangles
  std::vector<Index> overfull_edges;        // edges with > 2 incident triangles
  std::vector<Index> hanging_vertices;      // vertices inside a boundary edge
  bool area_mismatch = false;               // tagged domain not covered
  double total_area = 0.0;

  std::string summary() const;
};

/// Conformity, at most one boundary edge per triangle, positive areas.
AdmissibilityReport check_admissibility(const Mesh& mesh);

// --- steklov-mesh v1 text format --------------------------------------------

void write_mesh(const Mesh& mesh, std::ostream& out);
void write_mesh(const Mesh& mesh, const std::filesystem::path& path);

/// Throws ParseError (with a line number) on malformed input.
Mesh read_mesh(std::istream& in);
Mesh read_mesh(const std::filesystem::path& path);

}  // namespace steklov
