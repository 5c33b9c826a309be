#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "steklov/error.hpp"
#include "steklov/mesh.hpp"

namespace steklov {

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << "steklov-mesh 1\n";
  out << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
  out << "# domain: " << to_string(mesh.domain_tag()) << '\n';
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& p : mesh.points()) out << p.x << ' ' << p.y << '\n';
  for (const auto& t : mesh.triangles())
    out << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
  out.flags(old_flags);
  out.precision(old_precision);
}

void write_mesh(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot open " + path.string() + " for writing");
  write_mesh(mesh, out);
  if (!out) throw MeshError("failed writing " + path.string());
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

template <class... T>
bool parse_exact(const std::string& line, T&... values) {
  std::istringstream ss(line);
  (ss >> ... >> values);
  if (!ss) return false;
  std::string rest;
  return !(ss >> rest);
}

}  // namespace

Mesh read_mesh(std::istream& in) {
  LineReader reader(in);
  std::string line;

  if (!reader.next(line)) throw ParseError(reader.number(), "empty input");
  {
    std::string magic;
    int version = 0;
    if (!parse_exact(line, magic, version) || magic != "steklov-mesh")
      throw ParseError(reader.number(), "expected header 'steklov-mesh 1'");
    if (version != 1)
      throw ParseError(reader.number(),
                       "unsupported format version " + std::to_string(version));
  }

  long long nv = 0, nt = 0;
  if (!reader.next(line) || !parse_exact(line, nv, nt) || nv < 3 || nt < 1)
    throw ParseError(reader.number(), "expected '<nv> <nt>' with nv >= 3, nt >= 1");

  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    if (!reader.next(line)) throw ParseError(reader.number(), "unexpected end of vertex list");
    Point p;
    if (!parse_exact(line, p.x, p.y))
      throw ParseError(reader.number(), "expected '<x> <y>'");
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ParseError(reader.number(), "non-finite coordinate");
    points.push_back(p);
  }

  std::vector<Triangle> tris;
  tris.reserve(static_cast<std::size_t>(nt));
  for (long long t = 0; t < nt; ++t) {
    if (!reader.next(line)) throw ParseError(reader.number(), "unexpected end of triangle list");
    Triangle tri;
    if (!parse_exact(line, tri.v[0], tri.v[1], tri.v[2]))
      throw ParseError(reader.number(), "expected '<i> <j> <k>'");
    for (Index v : tri.v) {
      if (v < 0 || v >= nv)
        throw ParseError(reader.number(), "vertex index " + std::to_string(v) +
                                              " out of range [0, " +
                                              std::to_string(nv) + ")");
    }
    if (tri.v[0] == tri.v[1] || tri.v[1] == tri.v[2] || tri.v[0] == tri.v[2])
      throw ParseError(reader.number(), "repeated vertex index");
    const Point a = points[tri.v[0]], b = points[tri.v[1]], c = points[tri.v[2]];
    const double area = 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
    if (!(area > kAreaTolerance))
      throw ParseError(reader.number(), "triangle has non-positive area (clockwise or degenerate)");
    tris.push_back(tri);
  }

  if (reader.next(line)) throw ParseError(reader.number(), "trailing data after triangle list");
  return Mesh(std::move(points), std::move(tris), DomainTag::external);
}

Mesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open " + path.string());
  return read_mesh(in);
}

}  // namespace steklov
