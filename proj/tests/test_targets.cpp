#include <gtest/gtest.h>

#include <cmath>

#include "orlicz/targets.hpp"
#include "orlicz/young_json.hpp"

using namespace orlicz;

namespace {

const SpaceParams kHalf(1, 0.5);

YoungFunction spliced(double p0, double a0, double p = 3.0, double a = 0.0) {
  return YoungFunction::spliced(PowerLog{1.0, p0, a0}, PowerLog{1.0, p, a});
}

// Slope of y against x by ordinary least squares.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size(), my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

// Trend of log(B/A) against log log(1/t) for t = e^u, u in [-1e5, -1e3].
// Zero trend and zero power gap mean B and A agree up to constants there.
double log_ratio_trend(const YoungFunction& b, const YoungFunction& a) {
  std::vector<double> x, y;
  for (int i = 0; i < 40; ++i) {
    const double u = -std::pow(10.0, 3.0 + 2.0 * i / 39.0);
    x.push_back(std::log(-u));
    y.push_back(b.log_value(u) - a.log_value(u));
  }
  return ls_slope(x, y);
}

}  // namespace

TEST(SobolevCompanion, PowerClosedForm) {
  // int_0^t tau^{-1/2} = 2 sqrt t, then to the power 1/2.
  const auto h = sobolev_companion_H(YoungFunction::power(1.5), kHalf);
  for (double t : log_space(1e-10, 1e10, 21)) EXPECT_NEAR(h(t), std::sqrt(2.0) * std::pow(t, 0.25), 1e-7 * h(t)) << t;
  EXPECT_LT(h(1e-300), 1e-70);
  EXPECT_TRUE(std::isinf(h.sup_value()));
}

TEST(SobolevCompanion, SupercriticalLimit) {
  // int_0^1 t^{-1/2} + int_1^inf t^{-2} = 3.
  const auto h = sobolev_companion_H(spliced(1.5, 0.0), kHalf);
  EXPECT_NEAR(h.sup_value(), std::sqrt(3.0), 1e-7);
  EXPECT_NEAR(h(1e100), std::sqrt(3.0), 1e-7);
}

TEST(SobolevCompanion, RequiresIndisp) {
  EXPECT_THROW(sobolev_companion_H(YoungFunction::power(2.0), kHalf), std::invalid_argument);
}

TEST(OrliczTarget, PowerClosedForm) {
  const auto ans = orlicz_target(YoungFunction::power(1.5), kHalf);
  for (double t : log_space(1e-4, 1e4, 33)) EXPECT_NEAR(ans(t), std::pow(t, 6) / 8.0, 1e-6 * ans(t)) << t;
  EXPECT_EQ(ans(0.0), 0.0);
  EXPECT_TRUE(ans.validate().ok) << ans.validate().message;
}

TEST(OrliczTarget, SubcriticalSlopeNearZero) {
  for (double p0 : {1.2, 1.5, 1.8}) {
    const auto ans = orlicz_target(spliced(p0, 0.0), kHalf);
    std::vector<double> x, y;
    for (double t : log_space(1e-8, 1e-4, 30)) x.push_back(std::log(t)), y.push_back(std::log(ans(t)));
    const double expected = p0 / (1.0 - 0.5 * p0);
    EXPECT_NEAR(ls_slope(x, y), expected, 0.02 * expected) << p0;
  }
}

TEST(OrliczTarget, InfiniteBeyondSupH) {
  const auto ans = orlicz_target(spliced(1.5, 0.0), kHalf);
  EXPECT_NEAR(ans.inf_threshold(), std::sqrt(3.0), 1e-7);
  EXPECT_TRUE(std::isinf(ans(1.8)));
  EXPECT_TRUE(std::isfinite(ans(1.7)));
  EXPECT_TRUE(ans.validate().ok) << ans.validate().message;
}

TEST(OrliczTarget, ExponentialBranch) {
  // p0 = n/s = 2, alpha0 = 2: log(-log A_{n/s}) has slope -n/(s(alpha0+1)-n) = -2.
  const auto ans = orlicz_target(spliced(2.0, 2.0), kHalf);
  std::vector<double> x, y;
  for (double t : log_space(1e-6, 1e-2, 40)) x.push_back(std::log(t)), y.push_back(std::log(-ans.log_value(std::log(t))));
  EXPECT_NEAR(ls_slope(x, y), -2.0, 0.1);
  EXPECT_TRUE(ans.validate().ok) << ans.validate().message;
}

TEST(HatDensityInverse, PowerIsHomogeneous) {
  const HatConstruction hc(YoungFunction::power(1.5), kHalf);
  const double r0 = hc.density_inverse(2e-3) / hc.density_inverse(1e-3);
  for (double t : log_space(1e-3, 10.0, 9)) EXPECT_NEAR(hc.density_inverse(2 * t) / hc.density_inverse(t), r0, 0.01 * r0);
  EXPECT_EQ(hc.density_inverse(0.0), 0.0);
}

TEST(HatDensityInverse, RequiresIndisp) {
  EXPECT_THROW(hat_density_inverse(YoungFunction::power(2.0), kHalf, 1.0), std::invalid_argument);
}

TEST(OrliczLorentzTarget, FirstBranchKeepsPowerAndLog) {
  for (auto [p0, a0] : std::vector<std::pair<double, double>>{{1.5, 0.0}, {1.5, 1.0}, {1.2, -0.5}}) {
    const auto hat = orlicz_lorentz_target(spliced(p0, a0), kHalf);
    const auto fit = fit_power_log(hat, -1e5, -1e3);
    EXPECT_NEAR(fit.power, p0, 0.02 * p0);
    EXPECT_NEAR(fit.log_power, a0, 0.02 * std::max(1.0, std::abs(a0)));
    EXPECT_TRUE(hat.validate().ok) << hat.validate().message;
    EXPECT_EQ(hat(0.0), 0.0);
  }
}

TEST(OrliczLorentzTarget, SecondBranchShiftsLog) {
  for (double a0 : {1.5, 2.0, 3.0}) {
    const auto hat = orlicz_lorentz_target(spliced(2.0, a0), kHalf);
    const auto fit = fit_power_log(hat, -1e5, -1e3);
    EXPECT_NEAR(fit.power, 2.0, 0.1);
    EXPECT_NEAR(fit.log_power, a0 - 2.0, 0.05 * std::max(1.0, std::abs(a0 - 2.0)));
    EXPECT_TRUE(hat.validate().ok) << hat.validate().message;
  }
}

TEST(OrliczLorentzTarget, EquivalentToANearZeroIffIndexBelow) {
  // Below n/s the log ratio has no trend; at n/s with alpha0 > 1 it drifts by -n/s.
  const auto low = spliced(1.5, 1.0);
  EXPECT_LT(matuszewska_index_zero(low), 2.0);
  EXPECT_NEAR(log_ratio_trend(orlicz_lorentz_target(low, kHalf), low), 0.0, 0.05);
  const auto edge = spliced(2.0, 2.0);
  EXPECT_NEAR(matuszewska_index_zero(edge), 2.0, 0.04);
  EXPECT_NEAR(log_ratio_trend(orlicz_lorentz_target(edge, kHalf), edge), -2.0, 0.1);
}

TEST(Truncation, SpliceAndWeight) {
  const auto hat = orlicz_lorentz_target(YoungFunction::power(1.5), kHalf);
  const auto tr = truncate_to_EA(hat, kHalf);
  EXPECT_TRUE(std::isinf(tr.young(1.0001)));
  for (double t : {1e-3, 0.2, 1.0}) EXPECT_DOUBLE_EQ(tr.young(t), hat(t));
  EXPECT_DOUBLE_EQ(tr.weight(0.5), 1.0);
  EXPECT_DOUBLE_EQ(tr.weight(4.0), 0.5);
}

TEST(DensityTable, JsonRoundTrip) {
  const auto hat = orlicz_lorentz_target(YoungFunction::power(1.5), kHalf);
  const auto back = young_from_json(Json::parse(to_json(hat).dump()));
  for (double t : log_space(1e-8, 1e8, 30)) {
    EXPECT_NEAR(back(t), hat(t), 1e-12 * hat(t));
    EXPECT_NEAR(back.density(t), hat.density(t), 1e-12 * hat.density(t));
  }
}
