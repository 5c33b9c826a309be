#include "steklov/report.hpp"

#include <cmath>

#include <fmt/format.h>

#include "steklov/error.hpp"

namespace steklov {

std::string format_number(double value, int digits) {
  if (digits < 1 || digits > 17) throw ArgumentError("digits must be in [1, 17]");
  return fmt::format("{:.{}g}", value, digits);
}

namespace {

double round_directed(double value, int digits, bool up) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
  const double scale = std::pow(10.0, digits - 1 - exponent);
  const double scaled = value * scale;
  return (up ? std::ceil(scaled) : std::floor(scaled)) / scale;
}

}  // namespace

std::string format_lower(double value, int digits) {
  return format_number(round_directed(value, digits, false), digits);
}

std::string format_upper(double value, int digits) {
  return format_number(round_directed(value, digits, true), digits);
}

namespace {

std::string rigor_note(const std::vector<BoundsReport>& reports) {
  bool all = !reports.empty();
  for (const auto& r : reports) all = all && r.certified;
  if (all)
    return "Bounds use residual enclosures of the discrete eigenvalues "
           "(quasi-rigorous: residuals are evaluated in floating point, without "
           "directed rounding).";
  return "Bounds use raw floating-point discrete eigenvalues (no enclosure); "
         "pass --certify for residual enclosures.";
}

}  // namespace

std::string format_markdown(const std::vector<BoundsReport>& reports,
                            const FormatOptions& o) {
  if (reports.empty()) return {};
  std::size_t k = reports.front().rows.size();
  for (const auto& r : reports) k = std::min(k, r.rows.size());
  std::string out;
  auto append_row = [&out](const std::string& head, const std::vector<std::string>& cells) {
    out += "| " + head;
    for (const auto& c : cells) out += " | " + c;
    out += " |\n";
  };

  std::vector<std::string> cells;
  for (const auto& r : reports) cells.push_back(r.label);
  append_row("h", cells);
  out += "|---";
  for (std::size_t i = 0; i < reports.size(); ++i) out += "|---";
  out += "|\n";

  cells.clear();
  for (const auto& r : reports) cells.push_back(format_upper(r.ch, o.digits));
  append_row("C_h", cells);

  for (std::size_t i = 0; i < k; ++i) {
    cells.clear();
    for (const auto& r : reports)
      cells.push_back("(" + format_lower(r.rows[i].lower, o.digits) + ", " +
                      format_upper(r.rows[i].upper, o.digits) + ")");
    append_row(fmt::format("λ{}", i + 1), cells);
  }

  if (!o.reference.empty() && reports.size() > 1 && k >= o.reference.size()) {
    const RateTable rates = convergence_rates(reports, o.reference);
    auto sigma_row = [&](const char* head, const std::vector<std::optional<double>>& s) {
      cells.clear();
      for (const auto& v : s) cells.push_back(v ? fmt::format("{:.2f}", *v) : "-");
      append_row(head, cells);
    };
    sigma_row("σ_lower", rates.sigma_lower);
    sigma_row("σ_upper", rates.sigma_upper);
  }

  for (const auto& r : reports) {
    out += fmt::format("\n{} ({}, {} elements, C_h = {}):\n\n", r.domain, r.label, r.elements,
                       format_upper(r.ch, o.digits));
    const bool with_ref = o.reference.size() >= k;
    out += with_ref ? "| i | lower | λ_h (CR) | reference | upper (P1) |\n|---|---|---|---|---|\n"
                    : "| i | lower | λ_h (CR) | upper (P1) |\n|---|---|---|---|\n";
    for (std::size_t i = 0; i < k; ++i) {
      const auto& row = r.rows[i];
      out += fmt::format("| {} | {} | {} | ", row.index, format_lower(row.lower, o.digits),
                         format_number(row.lambda_h, o.digits));
      if (with_ref) out += format_number(o.reference[i], o.digits) + " | ";
      out += format_upper(row.upper, o.digits) + " |\n";
    }
  }
  out += "\n" + rigor_note(reports) + "\n";
  return out;
}

std::string format_csv(const std::vector<BoundsReport>& reports, const FormatOptions& o) {
  std::string out = "h,i,lower,lambda_h,upper,Ch\n";
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      out += fmt::format("{},{},{},{},{},{}\n", format_number(r.h, o.digits), row.index,
                         format_lower(row.lower, o.digits),
                         format_number(row.lambda_h, o.digits),
                         format_upper(row.upper, o.digits), format_upper(r.ch, o.digits));
    }
  }
  return out;
}

std::string format_spectrum_csv(const Spectrum& spectrum,
                                const std::vector<Enclosure>& enclosures, int digits) {
  std::string out = "index,mu,lambda,radius\n";
  for (std::size_t i = 0; i < spectrum.mu.size(); ++i) {
    const double mu = spectrum.mu[i];
    std::string radius;
    if (i < enclosures.size() && enclosures[i].available)
      radius = format_number(enclosures[i].radius, digits);
    out += fmt::format("{},{},{},{}\n", i + 1, format_number(mu, digits),
                       format_number(1.0 / mu, digits), radius);
  }
  return out;
}

}  // namespace steklov
