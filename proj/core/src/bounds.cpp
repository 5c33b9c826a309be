#include "steklov/bounds.hpp"

#include <cmath>

#include <fmt/format.h>

#include "steklov/assembly.hpp"
#include "steklov/eigensolve.hpp"
#include "steklov/error.hpp"

namespace steklov {

double compute_Ch(const GeometryTable& g, double lambda_h1_lower, bool pad) {
  if (!(lambda_h1_lower > 0.0))
    throw ArgumentError("C_h needs a positive lower estimate of lambda_h1");
  if (g.boundary_triangles == 0 || !(g.max_h_over_sqrt_height > 0.0))
    throw MeshError("C_h needs boundary triangle geometry");
  double ch = Constants::c_trace * g.max_h_over_sqrt_height +
              Constants::c_interp / std::sqrt(lambda_h1_lower) * g.max_h;
  if (pad) ch *= 1.0 + kCertifiedPad;
  return ch;
}

double lower_bound_map(double lambda_h, double ch) {
  return lambda_h / (1.0 + ch * ch * lambda_h);
}

std::array<double, 5> reference_eigenvalues(Domain domain) {
  if (domain == Domain::square) return {0.240079, 1.492293, 1.492293, 2.082616, 4.733516};
  return {0.34141, 0.61686, 0.98427, 1.69206, 1.70092};
}

namespace {

struct SolvedLevel {
  std::vector<double> lambda;  // ascending
  std::vector<double> lower_end;
  std::vector<double> upper_end;
  bool certified = true;
};

SolvedLevel solve_level(const Mesh& mesh, ElementKind kind, std::size_t k,
                        bool with_enclosures) {
  const AssembledSystem sys = assemble(mesh, kind);
  const Pencil pencil = make_pencil(sys);
  const Spectrum spec = solve_pencil_largest(pencil, k);
  SolvedLevel out;
  out.lambda = to_lambda(spec, k);
  out.lower_end = out.lambda;
  out.upper_end = out.lambda;
  out.certified = with_enclosures;
  if (!with_enclosures) return out;

  for (std::size_t i = 0; i < k; ++i) {
    const Enclosure enc =
        certify(pencil, spec.mu[i], spec.vectors.col(static_cast<Eigen::Index>(i)));
    const auto lo = enc.lambda_lower();
    const auto hi = enc.lambda_upper();
    if (!lo || !hi) {
      out.certified = false;
      continue;
    }
    out.lower_end[i] = *lo;
    out.upper_end[i] = *hi;
  }
  return out;
}

std::string level_label(const Mesh& mesh) {
  if (mesh.domain_tag() == DomainTag::square) {
    const auto n = static_cast<long>(std::lround(std::sqrt(double(mesh.num_vertices()))) - 1);
    return fmt::format("1/{}", n);
  }
  return fmt::format("{} elements", mesh.num_triangles());
}

}  // namespace

BoundsReport compute_bounds(const Mesh& mesh, const BoundsOptions& options) {
  if (options.k == 0) throw ArgumentError("k must be at least 1");
  const GeometryTable geometry = compute_geometry(mesh);

  const SolvedLevel cr = solve_level(mesh, ElementKind::crouzeix_raviart, options.k,
                                     options.certify);
  const SolvedLevel p1 = solve_level(mesh, ElementKind::lagrange_p1, options.k,
                                     options.certify);

  BoundsReport report;
  report.domain = to_string(mesh.domain_tag());
  report.label = level_label(mesh);
  report.elements = mesh.num_triangles();
  report.max_h = geometry.max_h;
  report.max_h_over_sqrt_height = geometry.max_h_over_sqrt_height;
  report.h = mesh.domain_tag() == DomainTag::square ? geometry.max_h / std::sqrt(2.0)
                                                     : geometry.max_h;
  report.certified = options.certify && cr.certified && p1.certified;
  report.ch = compute_Ch(geometry, cr.lower_end.front(), options.certify);

  for (std::size_t i = 0; i < options.k; ++i) {
    BoundRow row;
    row.index = i + 1;
    row.lambda_h = cr.lambda[i];
    row.lower = lower_bound_map(cr.lower_end[i], report.ch);
    row.upper = p1.upper_end[i];
    row.lambda_h_radius = cr.lambda[i] - cr.lower_end[i];
    row.upper_radius = p1.upper_end[i] - p1.lambda[i];
    report.rows.push_back(row);
  }
  return report;
}

double rate(double err_coarse, double err_fine) {
  return std::log2(err_coarse / err_fine);
}

RateTable convergence_rates(const std::vector<BoundsReport>& reports,
                            const std::vector<double>& reference) {
  RateTable t;
  for (const auto& r : reports) {
    if (r.rows.size() < reference.size())
      throw ArgumentError(fmt::format("report '{}' has {} rows, reference needs {}", r.label,
                                      r.rows.size(), reference.size()));
    double lo = 0.0, up = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
      lo += std::abs(reference[i] - r.rows[i].lower);
      up += std::abs(reference[i] - r.rows[i].upper);
    }
    t.err_lower.push_back(lo);
    t.err_upper.push_back(up);
  }
  for (std::size_t l = 0; l < reports.size(); ++l) {
    if (l == 0) {
      t.sigma_lower.emplace_back();
      t.sigma_upper.emplace_back();
      continue;
    }
    t.sigma_lower.emplace_back(rate(t.err_lower[l - 1], t.err_lower[l]));
    t.sigma_upper.emplace_back(rate(t.err_upper[l - 1], t.err_upper[l]));
  }
  return t;
}

}  // namespace steklov
