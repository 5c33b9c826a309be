#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "steklov/error.hpp"
#include "steklov/mesh.hpp"

namespace steklov {

Mesh generate_uniform_square(int n) {
  if (n < 1) throw ArgumentError("square mesh needs n >= 1");
  const auto stride = static_cast<Index>(n + 1);
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(stride * stride));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      points.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

  std::vector<Triangle> tris;
  tris.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Index a = j * stride + i;
      const Index b = a + 1;
      const Index c = a + stride + 1;
      const Index d = a + stride;
      // "/" in the lower-left and upper-right quadrants, "\" elsewhere.
      const bool flip = (2 * i + 1 < n) != (2 * j + 1 < n);
      if (flip) {
        tris.push_back({{a, b, d}});
        tris.push_back({{b, c, d}});
      } else {
        tris.push_back({{a, b, c}});
        tris.push_back({{a, c, d}});
      }
    }
  }
  return Mesh(std::move(points), std::move(tris), DomainTag::square);
}

double lshape_size_bound(const LShapeOptions& o, double r) {
  const double base = std::numbers::sqrt2 / o.n0;
  if (o.grading <= 1.0) return base;
  const double r_min = o.radius * std::pow(2.0, -o.corner_levels * o.grading);
  const double rel = std::min(1.0, std::max(r, r_min) / o.radius);
  return base * std::pow(rel, 1.0 / o.grading);
}

namespace {

// Newest-vertex bisection on a triangle list. v[0] is the newest vertex and
// (v[1], v[2]) the refinement edge; children inherit counter-clockwise order.
class Bisector {
 public:
  Bisector(std::vector<Point> points, std::vector<std::array<Index, 3>> tris)
      : points_(std::move(points)), tris_(std::move(tris)),
        alive_(tris_.size(), 1) {}

  template <class Pred>
  void refine_while(Pred&& needs_refinement) {
    for (;;) {
      std::vector<std::size_t> marked;
      for (std::size_t t = 0; t < tris_.size(); ++t)
        if (alive_[t] && needs_refinement(corners(t))) marked.push_back(t);
      if (marked.empty()) return;
      for (std::size_t t : marked)
        if (alive_[t]) bisect(t);
      close();
    }
  }

  Mesh finish(DomainTag tag) const {
    std::vector<Triangle> out;
    for (std::size_t t = 0; t < tris_.size(); ++t)
      if (alive_[t]) out.push_back({tris_[t]});
    return Mesh(points_, std::move(out), tag);
  }

 private:
  std::array<Point, 3> corners(std::size_t t) const {
    const auto& v = tris_[t];
    return {points_[v[0]], points_[v[1]], points_[v[2]]};
  }

  static std::pair<Index, Index> key(Index a, Index b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
  }

  Index midpoint(Index a, Index b) {
    auto [it, inserted] =
        mid_.try_emplace(key(a, b), static_cast<Index>(points_.size()));
    if (inserted) {
      const Point pa = points_[a];
      const Point pb = points_[b];
      points_.push_back({0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)});
    }
    return it->second;
  }

  void bisect(std::size_t t) {
    const auto v = tris_[t];
    const Index m = midpoint(v[1], v[2]);
    alive_[t] = 0;
    tris_.push_back({m, v[0], v[1]});
    tris_.push_back({m, v[2], v[0]});
    alive_.push_back(1);
    alive_.push_back(1);
  }

  bool has_hanging_node(std::size_t t) const {
    const auto& v = tris_[t];
    for (int i = 0; i < 3; ++i)
      if (mid_.count(key(v[(i + 1) % 3], v[(i + 2) % 3]))) return true;
    return false;
  }

  // Bisect until no live triangle has a split edge. Terminates for meshes
  // whose initial refinement edges are matched across neighbours.
  void close() {
    bool changed = true;
    while (changed) {
      changed = false;
      const std::size_t count = tris_.size();
      for (std::size_t t = 0; t < count; ++t) {
        if (alive_[t] && has_hanging_node(t)) {
          bisect(t);
          changed = true;
        }
      }
    }
  }

  std::vector<Point> points_;
  std::vector<std::array<Index, 3>> tris_;
  std::vector<char> alive_;
  std::map<std::pair<Index, Index>, Index> mid_;
};

}  // namespace

Mesh generate_graded_lshape(const LShapeOptions& o) {
  if (o.n0 < 2) throw ArgumentError("L-shape mesh needs n0 >= 2");
  if (!(o.grading >= 1.0)) throw ArgumentError("grading exponent must be >= 1");
  if (!(o.radius > 0.0)) throw ArgumentError("refinement radius must be positive");
  if (o.corner_levels < 0) throw ArgumentError("corner_levels must be >= 0");

  const int n = o.n0;
  const int side = 2 * n;
  auto inside_cell = [n](int i, int j) { return i < n || j < n; };

  std::vector<Index> id((side + 1) * (side + 1), kNoIndex);
  std::vector<Point> points;
  for (int j = 0; j <= side; ++j) {
    for (int i = 0; i <= side; ++i) {
      if (i > n && j > n) continue;
      id[j * (side + 1) + i] = static_cast<Index>(points.size());
      points.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    }
  }
  auto vid = [&](int i, int j) { return id[j * (side + 1) + i]; };

  // Right-angle vertex first so the hypotenuse is the refinement edge.
  std::vector<std::array<Index, 3>> tris;
  for (int j = 0; j < side; ++j) {
    for (int i = 0; i < side; ++i) {
      if (!inside_cell(i, j)) continue;
      const Index a = vid(i, j), b = vid(i + 1, j);
      const Index c = vid(i + 1, j + 1), d = vid(i, j + 1);
      const bool flip = (i == side - 1 && j == 0) || (i == 0 && j == side - 1);
      if (flip) {
        tris.push_back({a, b, d});
        tris.push_back({c, d, b});
      } else {
        tris.push_back({b, c, a});
        tris.push_back({d, a, c});
      }
    }
  }

  Bisector bisector(std::move(points), std::move(tris));
  if (o.grading > 1.0) {
    const Point corner{1.0, 1.0};
    bisector.refine_while([&](const std::array<Point, 3>& p) {
      double hk = 0.0;
      for (int i = 0; i < 3; ++i) {
        const Point a = p[i], b = p[(i + 1) % 3];
        hk = std::max(hk, std::hypot(b.x - a.x, b.y - a.y));
      }
      const double r = distance_to_triangle(p, corner);
      return hk > lshape_size_bound(o, r) * (1.0 + 1e-12);
    });
  }

  Mesh mesh = bisector.finish(DomainTag::lshape);
  if (min_angle_degrees(mesh) < kMinAngleFloorDegrees)
    throw MeshError("graded L-shape mesh violates the minimum-angle floor");
  const auto report = check_admissibility(mesh);
  if (!report.passed)
    throw MeshError("graded L-shape mesh is not admissible: " + report.summary());
  return mesh;
}

Mesh generate_graded_lshape(int n0, double grading) {
  LShapeOptions o;
  o.n0 = n0;
  o.grading = grading;
  return generate_graded_lshape(o);
}

Mesh generate_graded_lshape_for_count(std::size_t target, double grading) {
  if (target == 0) throw ArgumentError("target element count must be positive");
  Mesh best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int n0 = 2;; ++n0) {
    Mesh m = generate_graded_lshape(n0, grading);
    const double count = static_cast<double>(m.num_triangles());
    const double gap = std::abs(count - static_cast<double>(target));
    if (gap < best_gap) {
      best_gap = gap;
      best = std::move(m);
    }
    if (count > static_cast<double>(target)) break;
  }
  return best;
}

}  // namespace steklov
