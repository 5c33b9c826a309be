#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "steklov/assembly.hpp"
#include "steklov/bounds.hpp"
#include "steklov/eigensolve.hpp"
#include "steklov/error.hpp"
#include "steklov/mesh.hpp"
#include "steklov/report.hpp"

namespace steklov::cli {
namespace {

struct OutputArgs {
  std::string format = "md";
  int digits = 6;
  std::vector<double> reference;
  std::string out_path;
};

struct BoundArgs {
  std::size_t k = 5;
  bool certify = false;
};

void add_output_options(CLI::App* app, OutputArgs& o) {
  app->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"md", "csv"}))
      ->capture_default_str();
  app->add_option("--digits", o.digits, "Significant digits in numeric output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app->add_option("--reference", o.reference,
                  "Reference eigenvalues for error and rate rows (comma separated)")
      ->delimiter(',');
  app->add_option("--out", o.out_path, "Write output to this file instead of stdout");
}

void add_bound_options(CLI::App* app, BoundArgs& b) {
  app->add_option("--k", b.k, "Number of eigenvalues")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_flag("--certify", b.certify,
                "Use residual enclosures of the discrete eigenvalues");
}

std::size_t thread_cap() {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("STEKLOV_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) cap = static_cast<std::size_t>(v);
  }
  return cap;
}

// Levels run concurrently in batches; results keep level order.
std::vector<BoundsReport> bound_levels(const std::vector<Mesh>& meshes,
                                       const BoundsOptions& options) {
  std::vector<BoundsReport> reports(meshes.size());
  const std::size_t cap = thread_cap();
  for (std::size_t start = 0; start < meshes.size(); start += cap) {
    const std::size_t stop = std::min(meshes.size(), start + cap);
    std::vector<std::future<BoundsReport>> jobs;
    for (std::size_t i = start; i < stop; ++i) {
      jobs.push_back(std::async(cap > 1 ? std::launch::async : std::launch::deferred,
                                [&, i] { return compute_bounds(meshes[i], options); }));
    }
    for (std::size_t i = start; i < stop; ++i) reports[i] = jobs[i - start].get();
  }
  return reports;
}

void emit(const std::string& text, const OutputArgs& o, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path);
  if (!file) throw ArgumentError("cannot open " + o.out_path + " for writing");
  file << text;
}

std::string render(const std::vector<BoundsReport>& reports, const OutputArgs& o,
                   std::vector<double> fallback_reference) {
  FormatOptions fo;
  fo.digits = o.digits;
  fo.reference = o.reference.empty() ? std::move(fallback_reference) : o.reference;
  return o.format == "csv" ? format_csv(reports, fo) : format_markdown(reports, fo);
}

std::vector<double> as_vector(const std::array<double, 5>& a) { return {a.begin(), a.end()}; }

std::string mesh_info(const Mesh& mesh, int digits) {
  const auto report = check_admissibility(mesh);
  std::ostringstream s;
  s << "vertices: " << mesh.num_vertices() << '\n';
  s << mesh.num_triangles() << " triangles, " << mesh.num_edges() << " edges, "
    << mesh.num_boundary_edges() << " boundary, admissible: "
    << (report.passed ? "yes" : "no") << '\n';
  if (!report.passed) s << "violations: " << report.summary() << '\n';
  s << "total area: " << format_number(report.total_area, digits) << '\n';
  if (report.nonpositive_area.empty()) {
    const auto g = compute_geometry(mesh);
    s << "max h_K: " << format_number(g.max_h, digits) << '\n';
    s << "boundary triangles: " << g.boundary_triangles << '\n';
    s << "max h_K/sqrt(H_K): " << format_number(g.max_h_over_sqrt_height, digits) << '\n';
    s << "min angle (deg): " << format_number(min_angle_degrees(mesh), digits) << '\n';
  }
  return s.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Guaranteed two-sided bounds for Steklov eigenvalues"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  OutputArgs out_args;
  BoundArgs bound_args;

  auto* square = app.add_subcommand("square", "Uniform meshes of the unit square");
  std::vector<int> square_n{8, 16, 32, 64};
  square->add_option("--n", square_n, "Cells per side, one level per value")
      ->check(CLI::Range(2, 1 << 12))
      ->capture_default_str();
  add_bound_options(square, bound_args);
  add_output_options(square, out_args);

  auto* lshape = app.add_subcommand("lshape", "Graded mesh of the L-shaped domain");
  double grading = 3.0;
  std::size_t target_elems = 5000;
  int n0 = 0;
  lshape->add_option("--grading", grading, "Grading exponent g: h_K ~ r^(1/g)")
      ->check(CLI::Range(1.0, 100.0))
      ->capture_default_str();
  lshape->add_option("--target-elems", target_elems, "Approximate element count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lshape->add_option("--n0", n0, "Base cells per unit length (overrides --target-elems)")
      ->check(CLI::Range(2, 4096));
  add_bound_options(lshape, bound_args);
  add_output_options(lshape, out_args);

  auto* info = app.add_subcommand("mesh-info", "Counts, geometry and admissibility of a mesh");
  std::string mesh_file;
  info->add_option("--file", mesh_file, "steklov-mesh v1 file")->required();
  info->add_option("--digits", out_args.digits, "Significant digits")->check(CLI::Range(1, 17));

  auto* bound_file = app.add_subcommand("bound-file", "Bound eigenvalues on a mesh file");
  std::string spectrum_path;
  std::string matrix_prefix;
  bound_file->add_option("--file", mesh_file, "steklov-mesh v1 file")->required();
  bound_file->add_option("--dump-spectrum", spectrum_path,
                         "Write the CR spectrum as CSV index,mu,lambda,radius");
  bound_file->add_option("--dump-matrices", matrix_prefix,
                         "Write CR matrices to <prefix>_M.txt and <prefix>_N.txt");
  add_bound_options(bound_file, bound_args);
  add_output_options(bound_file, out_args);

  auto* gen = app.add_subcommand("write-mesh", "Generate a mesh and write it to a file");
  std::string domain = "square";
  int gen_n = 8;
  std::string gen_out;
  gen->add_option("--domain", domain, "square or lshape")
      ->check(CLI::IsMember({"square", "lshape"}))
      ->capture_default_str();
  gen->add_option("--n", gen_n, "Square cells per side, or L-shape base cells per unit")
      ->check(CLI::Range(1, 1 << 12))
      ->capture_default_str();
  gen->add_option("--grading", grading, "L-shape grading exponent")->check(CLI::Range(1.0, 100.0));
  gen->add_option("--out", gen_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    const BoundsOptions options{bound_args.k, bound_args.certify};
    if (*square) {
      std::vector<Mesh> meshes;
      for (int n : square_n) meshes.push_back(generate_uniform_square(n));
      const auto reports = bound_levels(meshes, options);
      emit(render(reports, out_args, as_vector(reference_eigenvalues(Domain::square))),
           out_args, out);
    } else if (*lshape) {
      Mesh mesh = n0 > 0 ? generate_graded_lshape(n0, grading)
                         : generate_graded_lshape_for_count(target_elems, grading);
      const auto reports = bound_levels({mesh}, options);
      emit(render(reports, out_args, as_vector(reference_eigenvalues(Domain::lshape))),
           out_args, out);
    } else if (*info) {
      const Mesh mesh = read_mesh(std::filesystem::path(mesh_file));
      out << mesh_info(mesh, out_args.digits);
      return check_admissibility(mesh).passed ? kExitOk : kExitInvalid;
    } else if (*bound_file) {
      const Mesh mesh = read_mesh(std::filesystem::path(mesh_file));
      const auto reports = bound_levels({mesh}, options);
      if (!spectrum_path.empty() || !matrix_prefix.empty()) {
        const auto sys = assemble(mesh, ElementKind::crouzeix_raviart);
        if (!matrix_prefix.empty()) {
          std::ofstream m(matrix_prefix + "_M.txt"), n(matrix_prefix + "_N.txt");
          if (!m || !n) throw ArgumentError("cannot write matrices with prefix " + matrix_prefix);
          write_coordinate(sys.M, m);
          write_coordinate(sys.N, n);
        }
        if (!spectrum_path.empty()) {
          const Pencil pencil = make_pencil(sys);
          const Spectrum spec = solve_pencil_largest(pencil, bound_args.k);
          std::vector<Enclosure> enclosures;
          if (bound_args.certify)
            for (std::size_t i = 0; i < spec.mu.size(); ++i)
              enclosures.push_back(
                  certify(pencil, spec.mu[i], spec.vectors.col(static_cast<Eigen::Index>(i))));
          std::ofstream s(spectrum_path);
          if (!s) throw ArgumentError("cannot open " + spectrum_path + " for writing");
          s << format_spectrum_csv(spec, enclosures, out_args.digits);
        }
      }
      emit(render(reports, out_args, {}), out_args, out);
    } else if (*gen) {
      const Mesh mesh = domain == "square" ? generate_uniform_square(gen_n)
                                           : generate_graded_lshape(gen_n, grading);
      write_mesh(mesh, std::filesystem::path(gen_out));
    }
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const ParseError& e) {
    err << "parse error: " << mesh_file << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace steklov::cli
