#include <gtest/gtest.h>

#include "steklov/error.hpp"
#include "steklov/report.hpp"

using namespace steklov;

namespace {

BoundsReport fake(const std::string& label, double h, double lower, double upper) {
  BoundsReport r;
  r.domain = "square";
  r.label = label;
  r.h = h;
  r.elements = 8;
  r.ch = 0.41234567;
  r.rows = {BoundRow{1, lower, (lower + upper) / 2, upper, 0, 0}};
  return r;
}

}  // namespace

TEST(Format, DirectedRounding) {
  EXPECT_EQ(format_lower(0.2311269, 4), "0.2311");
  EXPECT_EQ(format_lower(0.23112, 4), "0.2311");
  EXPECT_EQ(format_upper(0.23112, 4), "0.2312");
  EXPECT_EQ(format_lower(-0.23112, 4), "-0.2312");
  EXPECT_EQ(format_upper(-0.23112, 4), "-0.2311");
  EXPECT_EQ(format_lower(1.5, 3), "1.5");
  EXPECT_EQ(format_upper(1.5, 3), "1.5");
  EXPECT_EQ(format_upper(4.8964381, 4), "4.897");
  EXPECT_EQ(format_lower(0.0, 4), "0");
  EXPECT_EQ(format_number(1.0 / 3.0, 6), "0.333333");
  EXPECT_THROW(format_number(1.0, 0), ArgumentError);
  EXPECT_THROW(format_number(1.0, 18), ArgumentError);
}

TEST(Format, CsvStructure) {
  const std::string csv = format_csv({fake("1/2", 0.5, 0.2, 0.3)}, {});
  EXPECT_EQ(csv, "h,i,lower,lambda_h,upper,Ch\n0.5,1,0.2,0.25,0.3,0.412346\n");
}

TEST(Format, MarkdownStructure) {
  FormatOptions o;
  o.digits = 4;
  const std::string md = format_markdown({fake("1/2", 0.5, 0.5, 1.5), fake("1/4", 0.25, 0.75, 1.25)}, o);
  EXPECT_NE(md.find("| h | 1/2 | 1/4 |\n|---|---|---|\n"), std::string::npos) << md;
  EXPECT_NE(md.find("| C_h | 0.4124 | 0.4124 |"), std::string::npos) << md;
  EXPECT_NE(md.find("| λ1 | (0.5, 1.5) | (0.75, 1.25) |"), std::string::npos) << md;
  EXPECT_EQ(md.find("σ_lower"), std::string::npos);
  EXPECT_NE(md.find("raw floating-point"), std::string::npos);

  o.reference = {1.0};
  const std::string with_rates =
      format_markdown({fake("1/2", 0.5, 0.5, 1.5), fake("1/4", 0.25, 0.75, 1.25)}, o);
  EXPECT_NE(with_rates.find("| σ_lower | - | 1.00 |"), std::string::npos) << with_rates;
  EXPECT_NE(with_rates.find("| σ_upper | - | 1.00 |"), std::string::npos) << with_rates;
  EXPECT_NE(with_rates.find("| reference |"), std::string::npos);
}

TEST(Format, MarkdownRigorNote) {
  auto r = fake("1/2", 0.5, 0.5, 1.5);
  r.certified = true;
  EXPECT_NE(format_markdown({r}, {}).find("quasi-rigorous"), std::string::npos);
  EXPECT_TRUE(format_markdown({}, {}).empty());
}

TEST(Format, SpectrumCsv) {
  Spectrum s;
  s.mu = {4.0, 2.0};
  Enclosure e;
  e.available = true;
  e.radius = 1e-12;
  EXPECT_EQ(format_spectrum_csv(s, {e}, 6), "index,mu,lambda,radius\n1,4,0.25,1e-12\n2,2,0.5,\n");
}
