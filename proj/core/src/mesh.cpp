#include "steklov/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "steklov/error.hpp"

namespace steklov {

std::string to_string(DomainTag tag) {
  switch (tag) {
    case DomainTag::square:
      return "square";
    case DomainTag::lshape:
      return "lshape";
    case DomainTag::external:
      return "external";
  }
  return "external";
}

double domain_area(DomainTag tag) {
  switch (tag) {
    case DomainTag::square:
      return 1.0;
    case DomainTag::lshape:
      return 3.0;
    case DomainTag::external:
      break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double domain_perimeter(DomainTag tag) {
  switch (tag) {
    case DomainTag::square:
      return 4.0;
    case DomainTag::lshape:
      return 8.0;
    case DomainTag::external:
      break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Mesh::Mesh(std::vector<Point> points, std::vector<Triangle> triangles,
           DomainTag tag)
    : points_(std::move(points)), triangles_(std::move(triangles)), tag_(tag) {
  const auto nv = static_cast<Index>(points_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& v = triangles_[t].v;
    for (Index i : v) {
      if (i < 0 || i >= nv) {
        throw MeshError("triangle " + std::to_string(t) +
                        " references vertex " + std::to_string(i) +
                        " out of range [0, " + std::to_string(nv) + ")");
      }
    }
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) {
      throw MeshError("triangle " + std::to_string(t) +
                      " repeats a vertex index");
    }
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
      throw MeshError("vertex " + std::to_string(i) + " is not finite");
    }
  }

  // Edges are numbered in order of first appearance, which keeps numbering
  // deterministic for a given triangle list.
  std::map<std::pair<Index, Index>, Index> lookup;
  tri_edges_.resize(triangles_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& v = triangles_[t].v;
    for (int i = 0; i < 3; ++i) {
      Index a = v[(i + 1) % 3];
      Index b = v[(i + 2) % 3];
      if (a > b) std::swap(a, b);
      auto [it, inserted] =
          lookup.try_emplace({a, b}, static_cast<Index>(edges_.size()));
      if (inserted) {
        Edge e;
        e.endpoints = {a, b};
        edges_.push_back(std::move(e));
      }
      edges_[it->second].incident.push_back(static_cast<Index>(t));
      tri_edges_[t][i] = it->second;
    }
  }
  for (auto& e : edges_) e.boundary = e.incident.size() == 1;
}

std::size_t Mesh::num_boundary_edges() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      edges_.begin(), edges_.end(), [](const Edge& e) { return e.boundary; }));
}

std::array<Point, 3> Mesh::corners(std::size_t t) const {
  const auto& v = triangles_[t].v;
  return {points_[v[0]], points_[v[1]], points_[v[2]]};
}

double Mesh::signed_area(std::size_t t) const {
  const auto [a, b, c] = corners(t);
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

namespace {

double length(Point a, Point b) { return std::hypot(b.x - a.x, b.y - a.y); }

}  // namespace

double distance_to_triangle(const std::array<Point, 3>& tri, Point p) {
  auto cross = [](Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  const double orient = cross(tri[0], tri[1], tri[2]);
  bool inside = true;
  for (int i = 0; i < 3; ++i) {
    const double c = cross(tri[i], tri[(i + 1) % 3], p);
    if (c * orient < 0.0) inside = false;
  }
  if (inside) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const Point a = tri[i];
    const Point b = tri[(i + 1) % 3];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double s = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    best = std::min(best, std::hypot(a.x + s * dx - p.x, a.y + s * dy - p.y));
  }
  return best;
}

double min_angle_degrees(const Mesh& mesh) {
  double best = 180.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto p = mesh.corners(t);
    for (int i = 0; i < 3; ++i) {
      const Point o = p[i];
      const Point a = p[(i + 1) % 3];
      const Point b = p[(i + 2) % 3];
      const double ux = a.x - o.x, uy = a.y - o.y;
      const double vx = b.x - o.x, vy = b.y - o.y;
      const double ang = std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
      best = std::min(best, ang * 180.0 / std::numbers::pi);
    }
  }
  return best;
}

GeometryTable compute_geometry(const Mesh& mesh) {
  GeometryTable g;
  const std::size_t nt = mesh.num_triangles();
  g.h.resize(nt);
  g.area.resize(nt);
  g.boundary_height.assign(nt, 0.0);
  g.boundary_edge.assign(nt, -1);

  for (std::size_t t = 0; t < nt; ++t) {
    const auto p = mesh.corners(t);
    const double area = mesh.signed_area(t);
    if (!(area > kAreaTolerance)) {
      std::ostringstream msg;
      msg << "triangle " << t << " has non-positive area " << area;
      throw DegenerateGeometryError(msg.str());
    }
    g.area[t] = area;

    double hk = 0.0;
    std::array<double, 3> edge_len{};
    for (int i = 0; i < 3; ++i) {
      edge_len[i] = length(p[(i + 1) % 3], p[(i + 2) % 3]);
      hk = std::max(hk, edge_len[i]);
    }
    g.h[t] = hk;
    g.max_h = std::max(g.max_h, hk);

    for (int i = 0; i < 3; ++i) {
      if (!mesh.edges()[mesh.triangle_edge(t, i)].boundary) continue;
      const double height = 2.0 * area / edge_len[i];
      if (g.boundary_edge[t] < 0 || height < g.boundary_height[t]) {
        g.boundary_height[t] = height;
        g.boundary_edge[t] = i;
      }
    }
    if (g.boundary_edge[t] >= 0) {
      ++g.boundary_triangles;
      g.max_h_over_sqrt_height = std::max(
          g.max_h_over_sqrt_height, hk / std::sqrt(g.boundary_height[t]));
    }
  }
  return g;
}

AdmissibilityReport check_admissibility(const Mesh& mesh) {
  AdmissibilityReport r;
  const auto& edges = mesh.edges();

  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const double area = mesh.signed_area(t);
    r.total_area += area;
    if (!(area > kAreaTolerance)) r.nonpositive_area.push_back(static_cast<Index>(t));
    int nb = 0;
    for (int i = 0; i < 3; ++i) nb += edges[mesh.triangle_edge(t, i)].boundary ? 1 : 0;
    if (nb > 1) r.multiple_boundary_edges.push_back(static_cast<Index>(t));
  }

  std::vector<char> on_boundary(mesh.num_vertices(), 0);
  std::vector<Index> boundary_edges;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].incident.size() > 2) r.overfull_edges.push_back(static_cast<Index>(e));
    if (edges[e].boundary) {
      boundary_edges.push_back(static_cast<Index>(e));
      on_boundary[edges[e].endpoints[0]] = 1;
      on_boundary[edges[e].endpoints[1]] = 1;
    }
  }

  // A hanging vertex is always an endpoint of the unmatched short edges on
  // one side, so it suffices to test boundary vertices against boundary edges.
  const auto& pts = mesh.points();
  std::vector<Index> bverts;
  for (std::size_t v = 0; v < on_boundary.size(); ++v)
    if (on_boundary[v]) bverts.push_back(static_cast<Index>(v));
  std::vector<char> hanging(mesh.num_vertices(), 0);
  for (Index e : boundary_edges) {
    const Point a = pts[edges[e].endpoints[0]];
    const Point b = pts[edges[e].endpoints[1]];
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    const double len = std::sqrt(len2);
    for (Index v : bverts) {
      if (v == edges[e].endpoints[0] || v == edges[e].endpoints[1]) continue;
      const Point p = pts[v];
      const double s = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
      if (s <= 1e-12 || s >= 1.0 - 1e-12) continue;
      const double dist = std::abs((p.x - a.x) * dy - (p.y - a.y) * dx) / len;
      if (dist <= 1e-12 * len) hanging[v] = 1;
    }
  }
  for (std::size_t v = 0; v < hanging.size(); ++v)
    if (hanging[v]) r.hanging_vertices.push_back(static_cast<Index>(v));

  if (mesh.domain_tag() != DomainTag::external) {
    const double expected = domain_area(mesh.domain_tag());
    r.area_mismatch = std::abs(r.total_area - expected) > 1e-12 * expected;
  }

  r.passed = r.nonpositive_area.empty() && r.multiple_boundary_edges.empty() &&
             r.overfull_edges.empty() && r.hanging_vertices.empty() &&
             !r.area_mismatch;
  return r;
}

std::string AdmissibilityReport::summary() const {
  if (passed) return "admissible";
  std::ostringstream out;
  auto list = [&out](const char* label, const std::vector<Index>& ids) {
    if (ids.empty()) return;
    out << label << ":";
    const std::size_t shown = std::min<std::size_t>(ids.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) out << ' ' << ids[i];
    if (ids.size() > shown) out << " ... (" << ids.size() << " total)";
    out << "; ";
  };
  list("non-positive area triangles", nonpositive_area);
  list("triangles with several boundary edges", multiple_boundary_edges);
  list("edges shared by more than two triangles", overfull_edges);
  list("hanging vertices", hanging_vertices);
  if (area_mismatch) out << "total area " << total_area << " does not match the domain; ";
  std::string s = out.str();
  if (s.size() >= 2) s.resize(s.size() - 2);
  return s;
}

}  // namespace steklov
