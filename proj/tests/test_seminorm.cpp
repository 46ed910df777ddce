#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "orlicz/seminorm.hpp"

using namespace orlicz;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x;
  for (int i = 0; i < n; ++i) x.push_back(a + (b - a) * i / (n - 1));
  return x;
}

SampledFunction tent(int points = 201, double half_width = 1.0) {
  return SampledFunction::sample(Domain::grid1d, 1, linspace(-half_width, half_width, points),
                                 [=](double x) { return std::max(0.0, 1.0 - std::abs(x) / half_width); });
}

// J(u, 1) for A(t) = t^2 and the unit tent:
// 2 int_0^inf h^{-1-2 sigma} int |u(x+h) - u(x)|^2 dx dh, by Simpson in x and
// the trapezoid rule in log h.
double tent_square_modular(double sigma) {
  const auto inner = [](double h) {
    if (h >= 2.0) return 4.0 / 3.0;  // disjoint translates: 2 int u^2
    const int n = 4000;
    const double a = -1.0 - h, b = 1.0, dx = (b - a) / n;
    const auto f = [&](double x) {
      const auto t = [](double y) { return std::max(0.0, 1.0 - std::abs(y)); };
      const double d = t(x + h) - t(x);
      return d * d;
    };
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * dx) * (i % 2 ? 4.0 : 2.0);
    return s * dx / 3.0;
  };
  const double lo = -40.0, hi = 60.0;
  const int n = 4000;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = lo + (hi - lo) * i / n;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += w * inner(std::exp(t)) * std::exp(-2.0 * sigma * t);
  }
  return 2.0 * acc * (hi - lo) / n;
}

}  // namespace

TEST(Gagliardo, ConstantHasZeroModular) {
  const auto c = SampledFunction::grid1d(linspace(0.0, 1.0, 11), std::vector<double>(11, 3.0));
  const auto a = YoungFunction::power(2.0);
  EXPECT_EQ(gagliardo_modular(c, 0.5, a, 1.0), 0.0);
  EXPECT_EQ(fractional_seminorm(c, SpaceParams(1, 0.5), a), 0.0);
}

TEST(Gagliardo, MismatchedEndsThrow) {
  const auto u = SampledFunction::grid1d({0.0, 1.0}, {0.0, 1.0});
  EXPECT_THROW(gagliardo_modular(u, 0.5, YoungFunction::power(2.0), 1.0), std::domain_error);
}

TEST(Gagliardo, SquareMatchesIndependentQuadrature) {
  const auto a = YoungFunction::power(2.0);
  for (double sigma : {0.3, 0.5, 0.7}) {
    const double ref = tent_square_modular(sigma);
    EXPECT_NEAR(gagliardo_modular(tent(), sigma, a, 1.0), ref, 2e-3 * ref) << sigma;
  }
}

TEST(Gagliardo, TensorAgreesWithMonteCarlo) {
  const auto a = YoungFunction::power(2.0);
  const auto u = tent();
  const double tensor = gagliardo_modular(u, 0.5, a, 1.0);
  ModularConfig cfg;
  cfg.jobs = 2;
  const auto mc = gagliardo_modular_mc(u, 0.5, a, 1.0, cfg);
  EXPECT_GT(mc.std_error, 0.0);
  EXPECT_NEAR(mc.value, tensor, 3.0 * mc.std_error);
  EXPECT_LT(mc.std_error, 0.05 * tensor);
}

TEST(Gagliardo, MonteCarloIsDeterministicAcrossJobs) {
  const auto a = YoungFunction::power(1.5);
  ModularConfig one, four;
  one.montecarlo.samples = four.montecarlo.samples = 100'000;
  four.jobs = 4;
  const auto x = gagliardo_modular_mc(tent(), 0.5, a, 1.0, one);
  const auto y = gagliardo_modular_mc(tent(), 0.5, a, 1.0, four);
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.std_error, y.std_error);
}

TEST(Gagliardo, DilationLaw) {
  // J(u(./N), lambda) = N J(u, lambda N^sigma) in one dimension.
  const auto a = YoungFunction::spliced(PowerLog{1.0, 1.5, 0.0}, PowerLog{1.0, 3.0, 0.0});
  const double sigma = 0.5;
  const auto u = tent(401);
  for (double n : {2.0, 4.0, 8.0}) {
    const double lhs = gagliardo_modular(u.dilated(n), sigma, a, 1.0);
    const double rhs = n * gagliardo_modular(u, sigma, a, std::pow(n, sigma));
    EXPECT_NEAR(lhs, rhs, 0.03 * rhs) << n;
  }
}

TEST(Seminorm, Homogeneous) {
  const auto a = YoungFunction::spliced(PowerLog{1.0, 1.5, 1.0}, PowerLog{1.0, 3.0, 0.0});
  const SpaceParams p(1, 0.5);
  const double base = fractional_seminorm(tent(), p, a);
  ASSERT_TRUE(std::isfinite(base));
  ASSERT_GT(base, 0.0);
  for (double c : {-2.0, 0.1, 30.0})
    EXPECT_NEAR(fractional_seminorm(tent().scaled(c), p, a), std::abs(c) * base, 1e-4 * std::abs(c) * base) << c;
}

TEST(Seminorm, TranslationInvariant) {
  const auto a = YoungFunction::power(2.0);
  const SpaceParams p(1, 0.4);
  const double base = fractional_seminorm(tent(), p, a);
  EXPECT_NEAR(fractional_seminorm(tent().translated(5.5), p, a), base, 1e-9 * base);
}

TEST(Seminorm, SquareIsGaugeOfModular) {
  // For A = t^2 the seminorm is sqrt(J(u, 1)).
  const auto a = YoungFunction::power(2.0);
  const double j = gagliardo_modular(tent(), 0.5, a, 1.0);
  EXPECT_NEAR(fractional_seminorm(tent(), SpaceParams(1, 0.5), a), std::sqrt(j), 1e-9);
}

TEST(Seminorm, FirstOrderUsesDerivative) {
  // s = 1.5: the gradient of a smooth bump, compared with the order-1/2
  // seminorm of its exact derivative.
  const auto x = linspace(-1.0, 1.0, 801);
  const auto bump = SampledFunction::sample(Domain::grid1d, 1, x, [](double t) { return std::pow(std::cos(t * std::numbers::pi / 2), 2); });
  const auto der = SampledFunction::sample(Domain::grid1d, 1, x,
                                           [](double t) { return -std::numbers::pi / 2 * std::sin(t * std::numbers::pi); });
  const auto a = YoungFunction::power(2.0);
  const double direct = fractional_seminorm(der, SpaceParams(1, 0.5), a);
  EXPECT_NEAR(fractional_seminorm(bump, SpaceParams(1, 1.5), a), direct, 5e-3 * direct);
}

TEST(Seminorm, ReportCarriesErrorEstimate) {
  const auto r = fractional_seminorm_report(tent(), SpaceParams(1, 0.5), YoungFunction::power(2.0));
  EXPECT_EQ(r.method, ModularMethod::tensor);
  EXPECT_NEAR(r.seminorm, std::sqrt(r.modular_at_one), 1e-9);
  EXPECT_LT(r.error_estimate, 1e-3 * r.seminorm);
}

TEST(Seminorm, RadialMonteCarloMatchesLine) {
  // A radial profile in R^1 is an even function on the line.
  const auto a = YoungFunction::power(2.0);
  const auto radial = SampledFunction::sample(Domain::radial, 1, linspace(0.0, 1.0, 201),
                                              [](double r) { return 1.0 - r; });
  ModularConfig cfg;
  cfg.jobs = 2;
  const auto mc = gagliardo_draws(radial, 0.5, cfg).estimate(a, 1.0);
  const double line = gagliardo_modular(tent(), 0.5, a, 1.0);
  EXPECT_NEAR(mc.value, line, 3.0 * mc.std_error);
}

TEST(Seminorm, RadialDilationInTwoDimensions) {
  // J(u(./N)) = N^n J(u, lambda N^sigma) with n = 2.
  const auto a = YoungFunction::power(2.0);
  const auto u = SampledFunction::sample(Domain::radial, 2, linspace(0.0, 1.0, 101),
                                         [](double r) { return 1.0 - r * r; });
  ModularConfig cfg;
  cfg.jobs = 2;
  cfg.montecarlo.samples = 400'000;
  const auto big = gagliardo_draws(u.dilated(2.0), 0.5, cfg).estimate(a, 1.0);
  const auto small = gagliardo_draws(u, 0.5, cfg).estimate(a, std::sqrt(2.0));
  EXPECT_NEAR(big.value, 4.0 * small.value, 3.0 * std::hypot(big.std_error, 4.0 * small.std_error));
}

TEST(DifferenceQuotient, HalfOfGagliardoInOneDimension) {
  const auto a = YoungFunction::spliced(PowerLog{1.0, 1.5, 0.0}, PowerLog{1.0, 3.0, 0.0});
  const double sigma = 0.5, c = 1.7;
  EXPECT_NEAR(difference_quotient_modular(tent(), sigma, a, c), 0.5 * gagliardo_modular(tent(), sigma, a, 1.0 / c),
              1e-10 * gagliardo_modular(tent(), sigma, a, 1.0 / c));
}

TEST(DifferenceQuotient, MonotoneInScale) {
  const auto a = YoungFunction::spliced(PowerLog{1.0, 1.5, 1.0}, PowerLog{1.0, 3.0, 0.0});
  double prev = 0.0;
  for (double c : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double m = difference_quotient_modular(tent(), 0.5, a, c);
    EXPECT_GE(m, prev) << c;
    prev = m;
  }
}

TEST(DifferenceQuotient, TwoSidedInRadialCase) {
  // For radial u the inner integral does not depend on the direction, so
  // the axis form is n / |S^{n-1}| = 1 / pi times the full modular.
  const auto a = YoungFunction::power(2.0);
  const auto u = SampledFunction::sample(Domain::radial, 2, linspace(0.0, 1.0, 101),
                                         [](double r) { return 1.0 - r * r; });
  ModularConfig cfg;
  cfg.montecarlo.samples = 200'000;
  cfg.jobs = 2;
  const double dq = difference_quotient_modular(u, 0.5, a, 1.0, cfg);
  const double j = gagliardo_draws(u, 0.5, cfg).estimate(a, 1.0).value;
  EXPECT_NEAR(dq / j, 1.0 / std::numbers::pi, 0.05 / std::numbers::pi);
}

TEST(Mollify, PreservesConstantsAndLinearPieces) {
  // Trapezoid: on the flat top and away from the kinks the values at the
  // nodes are reproduced.
  const auto u = SampledFunction::sample(Domain::grid1d, 1, linspace(-3.0, 3.0, 61),
                                         [](double x) { return std::min(2.0, 3.0 - std::abs(x)); });
  const auto m = mollify(u, 0.1);
  for (double x : {-0.5, 0.0, 0.7}) EXPECT_NEAR(m(x), 2.0, 1e-8);
  EXPECT_NEAR(m(-2.0), 1.0, 1e-8);
  EXPECT_NEAR(m(2.5), 0.5, 1e-8);
}

TEST(Mollify, BumpMomentsMatchQuadrature) {
  const auto& b = Bump::line();
  EXPECT_NEAR(b.mass(), 0.44399381616807943, 1e-12);
  EXPECT_NEAR(b.moment1(1.0), 0.0, 1e-14);
  EXPECT_NEAR(b.moment0(0.0), 0.5 * b.mass(), 1e-13);
}

TEST(Mollify, ContractsModularAndConverges) {
  const auto a = YoungFunction::power(2.0);
  const auto u = tent(2001);
  const double base = gagliardo_modular(u, 0.5, a, 1.0);
  double prev = kInf;
  for (double eps : {0.1, 0.03, 0.01, 0.001}) {
    const auto m = mollify(u, eps);
    EXPECT_LE(gagliardo_modular(m, 0.5, a, 1.0), base * (1 + 1e-3)) << eps;
    const double err = fractional_seminorm(difference(m, u), SpaceParams(1, 0.5), a);
    EXPECT_LT(err, prev) << eps;
    prev = err;
  }
  EXPECT_LT(prev, 0.05);
}

TEST(Mollify, RadialConstantInterior) {
  const auto u = SampledFunction::sample(Domain::radial, 3, linspace(0.0, 2.0, 81),
                                         [](double r) { return r < 1.0 ? 1.0 : 2.0 - r; });
  const auto m = mollify(u, 0.2);
  EXPECT_NEAR(m(0.0), 1.0, 1e-10);
  EXPECT_NEAR(m(0.5), 1.0, 1e-10);
}
