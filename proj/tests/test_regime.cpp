#include <gtest/gtest.h>

#include <cmath>

#include "orlicz/regime.hpp"

using namespace orlicz;

namespace {

YoungFunction spliced(double p0, double a0, double p, double a) {
  return YoungFunction::spliced(PowerLog{1.0, p0, a0}, PowerLog{1.0, p, a});
}

}  // namespace

TEST(EndpointEngine, PowerAtZero) {
  const auto r = classify_endpoint_integral([](double t) { return std::pow(t, -0.5); }, Endpoint::zero);
  EXPECT_TRUE(r.converges);
  EXPECT_NEAR(r.value, 2.0, 1e-8);
}

TEST(EndpointEngine, HarmonicAtInfinity) {
  const auto r = classify_endpoint_integral([](double t) { return 1.0 / t; }, Endpoint::infinity);
  EXPECT_FALSE(r.converges);
  EXPECT_TRUE(std::isinf(r.value));
}

TEST(EndpointEngine, InverseSquareAtInfinity) {
  const auto r = classify_endpoint_integral([](double t) { return 1.0 / (t * t); }, Endpoint::infinity);
  EXPECT_TRUE(r.converges);
  EXPECT_NEAR(r.value, 1.0, 1e-8);
}

TEST(EndpointEngine, ThresholdOnBothEnds) {
  for (double e : {-1.5, -1.05, -1.0, -0.95, -0.5}) {
    const auto g = [e](double t) { return std::pow(t, e); };
    EXPECT_EQ(classify_endpoint_integral(g, Endpoint::zero).converges, e > -1.0) << e;
    EXPECT_EQ(classify_endpoint_integral(g, Endpoint::infinity).converges, e < -1.0) << e;
  }
}

TEST(EndpointEngine, LogarithmicBorderline) {
  // t^{-1} (1 + log t)^beta at infinity converges iff beta < -1.
  const auto lg = [](double beta) {
    return [beta](double u) { return -u + beta * std::log1p(u); };
  };
  const auto fast = classify_log_integrand(lg(-2.0), Endpoint::infinity);
  EXPECT_TRUE(fast.converges);
  EXPECT_NEAR(fast.value, 1.0, 1e-6);
  const auto slow = classify_log_integrand(lg(-1.1), Endpoint::infinity);
  EXPECT_TRUE(slow.converges);
  EXPECT_EQ(slow.method, Method::adaptive_tail);
  EXPECT_NEAR(slow.value, 10.0, 1e-3);
  EXPECT_FALSE(classify_log_integrand(lg(0.0), Endpoint::infinity).converges);
  const auto edge = classify_log_integrand(lg(-1.0), Endpoint::infinity);
  EXPECT_FALSE(edge.converges);
  EXPECT_TRUE(edge.borderline);
}

TEST(EndpointEngine, NonMonotoneThrows) {
  const auto g = [](double t) { return std::pow(t, -0.5) * (2.0 + std::sin(std::log(t) * 3.0)); };
  EXPECT_THROW(classify_endpoint_integral(g, Endpoint::zero), ClassificationError);
}

TEST(Indisp, Examples) {
  const SpaceParams p(1, 0.5);
  EXPECT_TRUE(check_indisp(YoungFunction::power(1.5), p).converges);
  EXPECT_FALSE(check_indisp(YoungFunction::power(2.0), p).converges);
  EXPECT_TRUE(check_indisp(spliced(2.0, 1.5, 3.0, 0.0), p).converges);
  EXPECT_FALSE(check_indisp(spliced(2.0, 1.0, 3.0, 0.0), p).converges);
  EXPECT_THROW(check_indisp(YoungFunction::power(1.5), SpaceParams(1, 1.5)), std::invalid_argument);
}

TEST(Indisp, ValueMatchesClosedForm) {
  // (t / t^1.5)^1 = t^{-1/2}, integral over (0, 1] equals 2.
  const auto r = check_indisp(YoungFunction::power(1.5), SpaceParams(1, 0.5));
  EXPECT_EQ(r.method, Method::closed_form);
  EXPECT_NEAR(r.value, 2.0, 1e-8);
}

TEST(ClassifyGrowth, Examples) {
  const SpaceParams p(1, 0.5);
  EXPECT_EQ(classify_growth(YoungFunction::power(3.0), p).tag, RegimeTag::inadmissible);
  EXPECT_EQ(classify_growth(spliced(1.5, 0.0, 3.0, 0.0), p).tag, RegimeTag::supercritical);
  const auto sub = classify_growth(YoungFunction::power(1.5), p);
  EXPECT_EQ(sub.tag, RegimeTag::subcritical);
  EXPECT_TRUE(std::isinf(sub.tail_value));
  EXPECT_EQ(classify_growth(YoungFunction::power(1.5), SpaceParams(1, 1.5)).tag, RegimeTag::inadmissible);
}

TEST(ClassifyGrowth, NumericPathMatchesRule) {
  // Tabulated copies force the exponent-fitting path.
  const SpaceParams p(1, 0.5);
  for (double pinf : {1.5, 2.0, 3.0}) {
    const auto a = spliced(1.5, 0.0, pinf, 0.0);
    std::vector<std::pair<double, double>> knots;
    for (double t : log_space(1e-20, 1e20, 400)) knots.emplace_back(t, a(t));
    const YoungFunction tab({Piece{0.0, Tabulated::from_knots(knots)}});
    EXPECT_EQ(classify_growth(tab, p).tag, classify_growth(a, p).tag) << pinf;
  }
}

TEST(ClassifyGrowth, LinfTypeIsSupercritical) {
  const SpaceParams p(1, 0.5);
  const YoungFunction a({Piece{0.0, PowerLog{1.0, 1.5, 0.0}}}, 10.0);
  const auto r = classify_growth(a, p);
  EXPECT_EQ(r.tag, RegimeTag::supercritical);
  // (t / t^1.5) on [1, 10]: 2 (sqrt 10 - 1).
  EXPECT_NEAR(r.tail_value, 2.0 * (std::sqrt(10.0) - 1.0), 1e-7);
}

TEST(ClassifyGrowth, TailMonotoneUnderDomination) {
  const SpaceParams p(1, 0.5);
  const auto small = spliced(1.5, 0.0, 3.0, 0.0);
  const auto big = spliced(1.5, 0.0, 4.0, 0.0);
  EXPECT_GE(check_tail(small, p).value, check_tail(big, p).value);
}

TEST(FullLine, FiniteOnlyWhenBothEndsConverge) {
  const SpaceParams p(1, 0.5);
  EXPECT_TRUE(std::isfinite(full_line_integral(spliced(1.5, 0.0, 3.0, 0.0), p)));
  EXPECT_TRUE(std::isinf(full_line_integral(YoungFunction::power(1.5), p)));
}
