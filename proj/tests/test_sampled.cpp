#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "orlicz/norms.hpp"

using namespace orlicz;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x;
  for (int i = 0; i < n; ++i) x.push_back(a + (b - a) * i / (n - 1));
  return x;
}

SampledFunction indicator(double measure) {
  return SampledFunction::grid1d({-1.0, -1.0 + measure}, {1.0, 0.0}, Shape::step);
}

SampledFunction tent(int points = 2001) {
  return SampledFunction::sample(Domain::grid1d, 1, linspace(-1.0, 1.0, points),
                                 [](double x) { return std::max(0.0, 1.0 - std::abs(x)); });
}

double modular(const YoungFunction& a, const std::vector<Cell>& cells) {
  double acc = 0.0;
  for (const auto& c : cells) acc += c.weight * a(std::abs(c.value));
  return acc;
}

}  // namespace

TEST(Rearrangement, IndicatorIsInitialSegment) {
  const auto star = decreasing_rearrangement(indicator(2.5));
  ASSERT_EQ(star.size(), 1u);
  EXPECT_DOUBLE_EQ(star(0.0), 1.0);
  EXPECT_DOUBLE_EQ(star(2.4999), 1.0);
  EXPECT_DOUBLE_EQ(star(2.5), 0.0);  // right-continuous
}

TEST(Rearrangement, TentIsLinear) {
  // |{u > t}| = 2(1 - t), so u*(r) = 1 - r/2.
  const auto star = decreasing_rearrangement(tent());
  for (double r : {0.0, 0.3, 1.0, 1.7, 1.999}) EXPECT_NEAR(star(r), 1.0 - r / 2.0, 1.5e-3) << r;
  EXPECT_EQ(star(2.1), 0.0);
}

TEST(Rearrangement, TranslationInvariant) {
  const auto u = tent(401);
  const auto a = decreasing_rearrangement(u), b = decreasing_rearrangement(u.translated(7.25));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_NEAR(a.ends()[k], b.ends()[k], 1e-12);
    EXPECT_DOUBLE_EQ(a.values()[k], b.values()[k]);
  }
}

TEST(Rearrangement, Equimeasurable) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> x = linspace(0.0, 3.0, 300), v;
  for (std::size_t i = 0; i < x.size(); ++i) v.push_back(d(rng));
  const auto u = SampledFunction::halfline(x, v);
  const auto star = decreasing_rearrangement(u);
  const double cell = 3.0 / 299.0;
  for (double t : linspace(0.0, 0.98, 50)) EXPECT_NEAR(star.distribution(t), distribution_function(u, t), cell) << t;
  double prev = kInf;
  for (double val : star.values()) {
    EXPECT_LE(val, prev);
    prev = val;
  }
}

TEST(Rearrangement, ModularIsPreserved) {
  const auto u = tent(501).mapped([](double v) { return 3.0 * v * v - 0.5; });
  const auto a = YoungFunction::spliced(PowerLog{1.0, 1.5, 0.0}, PowerLog{1.0, 3.0, 0.0});
  EXPECT_NEAR(modular(a, u.cells()), modular(a, decreasing_rearrangement(u).cells()), 1e-12);
}

TEST(Rearrangement, InfiniteLevelSetThrows) {
  const auto u = SampledFunction::halfline({0.0, 1.0, kInf}, {2.0, 1.0, 0.0}, Shape::step);
  EXPECT_THROW(decreasing_rearrangement(u), std::domain_error);
}

TEST(Rearrangement, RadialShells) {
  // Unit disc in R^2 has area pi.
  const auto u = SampledFunction::radial(2, {0.0, 1.0}, {1.0, 0.0}, Shape::step);
  EXPECT_NEAR(decreasing_rearrangement(u).support(), std::numbers::pi, 1e-14);
}

TEST(Luxemburg, SquareOfIndicator) {
  // 4 / lambda^2 = 1.
  EXPECT_NEAR(luxemburg_norm(YoungFunction::power(2.0), indicator(4.0)), 2.0, 1e-9);
  const auto disc = SampledFunction::radial(2, {0.0, 1.0}, {1.0, 0.0}, Shape::step);
  EXPECT_NEAR(luxemburg_norm(YoungFunction::power(2.0), disc), std::sqrt(std::numbers::pi), 1e-9);
}

TEST(Luxemburg, ZeroAndHomogeneity) {
  const auto a = YoungFunction::spliced(PowerLog{1.0, 1.5, 1.0}, PowerLog{1.0, 3.0, 0.0});
  EXPECT_EQ(luxemburg_norm(a, tent().scaled(0.0)), 0.0);
  const double base = luxemburg_norm(a, tent());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-50.0, 50.0);
  for (int i = 0; i < 10; ++i) {
    const double c = d(rng);
    EXPECT_NEAR(luxemburg_norm(a, tent().scaled(c)), std::abs(c) * base, 1e-6 * std::abs(c) * base) << c;
  }
}

TEST(Luxemburg, LinfType) {
  EXPECT_NEAR(luxemburg_norm(YoungFunction::linf(1.0), indicator(2.0).scaled(3.0)), 3.0, 1e-9);
  // Linear cells are seen through their midpoint values.
  const auto t = tent(11).scaled(3.0);
  EXPECT_NEAR(luxemburg_norm(YoungFunction::linf(1.0), t), 3.0 * 0.9, 1e-9);
}

TEST(Luxemburg, Holder) {
  const auto a = YoungFunction::spliced(PowerLog{1.0, 1.5, 0.0}, PowerLog{1.0, 3.0, 0.0});
  const auto c = conjugate(a);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-4.0, 4.0);
  const auto x = linspace(-2.0, 2.0, 200);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> uv, vv;
    for (std::size_t i = 0; i < x.size(); ++i) uv.push_back(d(rng)), vv.push_back(d(rng));
    const auto u = SampledFunction::grid1d(x, uv), v = SampledFunction::grid1d(x, vv);
    EXPECT_LE(product_integral(u, v), 2.0 * luxemburg_norm(a, u) * luxemburg_norm(c, v) * (1 + 1e-9));
  }
}

TEST(Luxemburg, MonotoneUnderDomination) {
  // 5 t^2 <= (sqrt 5 t)^2, so the constant is sqrt 5 and the bound is sharp.
  const auto a = YoungFunction::power(2.0), b = YoungFunction::power(2.0, 5.0);
  const auto dom = dominates(a, b, Range::global);
  ASSERT_TRUE(dom.holds);
  for (const auto& u : {tent(), indicator(3.0), tent().scaled(40.0)}) {
    EXPECT_LE(luxemburg_norm(b, u), dom.constant * luxemburg_norm(a, u) * (1 + 1e-9));
    EXPECT_NEAR(luxemburg_norm(b, u), std::sqrt(5.0) * luxemburg_norm(a, u), 1e-8 * luxemburg_norm(b, u));
  }
}

TEST(OrliczLorentz, DivergentFirstCell) {
  // int_0^1 r^{-1} dr diverges at every lambda.
  EXPECT_TRUE(std::isinf(orlicz_lorentz_norm(YoungFunction::power(2.0), 2.0, indicator(1.0))));
}

TEST(OrliczLorentz, ClosedForm) {
  // int_0^1 (r^{-1/4} / lambda)^{1.5} dr = 1.6 lambda^{-1.5}.
  const auto e = YoungFunction::power(1.5);
  EXPECT_NEAR(orlicz_lorentz_norm(e, 4.0, indicator(1.0)), std::pow(1.6, 2.0 / 3.0), 1e-9);
  // Two steps: 1 on [0, 1), 1/2 on [1, 3).
  const auto u = SampledFunction::grid1d({0.0, 1.0, 3.0}, {1.0, 0.5, 0.0}, Shape::step);
  const double m = 1.6 + std::pow(0.5, 1.5) * (std::pow(3.0, 0.625) - 1.0) / 0.625;
  EXPECT_NEAR(orlicz_lorentz_norm(e, 4.0, u), std::pow(m, 2.0 / 3.0), 1e-8);
}

TEST(OrliczLorentz, Homogeneous) {
  const auto e = YoungFunction::spliced(PowerLog{1.0, 1.5, 0.0}, PowerLog{1.0, 1.8, 0.0});
  const double base = orlicz_lorentz_norm(e, 2.0, tent(401));
  ASSERT_TRUE(std::isfinite(base));
  for (double c : {-3.0, 0.01, 250.0})
    EXPECT_NEAR(orlicz_lorentz_norm(e, 2.0, tent(401).scaled(c)), std::abs(c) * base, 1e-6 * std::abs(c) * base);
  EXPECT_TRUE(orlicz_lorentz_is_norm(e, 2.0));
  EXPECT_FALSE(orlicz_lorentz_is_norm(YoungFunction::power(2.0), 2.0));
}

TEST(Intersection, ZeroAndHomogeneity) {
  const SpaceParams p(1, 0.5);
  const auto hat = orlicz_lorentz_target(YoungFunction::power(1.5), p);
  const auto zero = intersection_norm(hat, p, tent().scaled(0.0));
  EXPECT_EQ(zero.sum_form, 0.0);
  EXPECT_EQ(zero.weighted_form, 0.0);
  const auto one = intersection_norm(hat, p, tent(401));
  const auto five = intersection_norm(hat, p, tent(401).scaled(-5.0));
  EXPECT_NEAR(five.sum_form, 5.0 * one.sum_form, 1e-6 * five.sum_form);
  EXPECT_NEAR(five.weighted_form, 5.0 * one.weighted_form, 1e-6 * five.weighted_form);
  EXPECT_GT(one.weighted_form, 0.0);
  EXPECT_TRUE(std::isfinite(one.sum_form));
}

TEST(L1PlusLinf, Indicators) {
  EXPECT_NEAR(l1_plus_linf_norm(indicator(2.0)), 1.0, 1e-15);
  EXPECT_NEAR(l1_plus_linf_norm(indicator(0.5)), 0.5, 1e-15);
  EXPECT_EQ(l1_plus_linf_norm(tent().scaled(0.0)), 0.0);
}

TEST(SampledCsv, RoundTrip) {
  const auto u = SampledFunction::radial(3, {0.0, 0.5, 1.0}, {2.0, 1.0, 0.0}, Shape::step);
  std::stringstream ss;
  write_csv(ss, u);
  const auto back = read_csv(ss);
  EXPECT_EQ(back.domain(), Domain::radial);
  EXPECT_EQ(back.dimension(), 3);
  EXPECT_EQ(back.shape(), Shape::step);
  EXPECT_EQ(back.grid(), u.grid());
  EXPECT_EQ(back.values(), u.values());
  std::stringstream bad("kind=sphere,n=1\n0,1\n");
  EXPECT_THROW(read_csv(bad), std::runtime_error);
}
