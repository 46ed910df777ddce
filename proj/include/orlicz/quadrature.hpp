#pragma once

// Quadrature helpers. Finite intervals go through Boost's adaptive
// Gauss-Kronrod; everything that may over- or underflow is done on log
// integrands, i.e. we integrate exp(phi(v)) and return the log of the result.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "orlicz/numeric.hpp"

namespace orlicz::quad {

using LogIntegrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (15 point) on [a, b].
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 12) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(std::forward<F>(f), a, b, max_depth,
                                                                       rel_tol, &err);
}

/// Gauss-Legendre rule with `N` points mapped onto [a, b].
template <unsigned N>
struct GaussRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussRule(double a, double b) {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    unsigned k = 0;
    // Boost stores the non-negative half of the symmetric rule.
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        nodes[k] = mid;
        weights[k++] = half * w[i];
      } else {
        nodes[k] = mid - half * x[i];
        weights[k++] = half * w[i];
        nodes[k] = mid + half * x[i];
        weights[k++] = half * w[i];
      }
    }
  }
};

/// log of the integral of exp(phi) over [a, b], a < b.
inline double log_integrate(const LogIntegrand& phi, double a, double b, double rel_tol = 1e-10) {
  if (!(b > a)) return kNegInf;
  // Shift by the largest sampled value so the integrand stays O(1).
  double shift = kNegInf;
  constexpr int kProbe = 9;
  for (int i = 0; i < kProbe; ++i) {
    const double v = a + (b - a) * static_cast<double>(i) / (kProbe - 1);
    const double p = phi(v);
    if (p == kInf) return kInf;
    if (!std::isnan(p)) shift = std::max(shift, p);
  }
  if (shift == kNegInf) return kNegInf;
  bool infinite = false;
  const double value = integrate(
      [&](double v) {
        const double p = phi(v);
        if (p == kInf) {
          infinite = true;
          return 0.0;
        }
        if (std::isnan(p) || p == kNegInf) return 0.0;
        return std::exp(p - shift);
      },
      a, b, rel_tol);
  if (infinite) return kInf;
  return safe_log(value) + shift;
}

/// log of the integral of exp(phi(v)) over the ray starting at `start`,
/// towards +inf (direction = +1) or -inf (direction = -1).
///
/// The ray is parametrised as v = start + direction * s with s = e^w - 1, and
/// integrated in unit panels of w. Panels are added until they become
/// negligible; if the panel sequence is still significant after `max_w`, the
/// remainder is closed with a geometric model, or declared divergent when the
/// panels are not decreasing.
inline double log_ray_integral(const LogIntegrand& phi, double start, int direction, double rel_tol = 1e-12,
                               double max_w = 80.0) {
  const auto in_w = [&](double w) {
    const double s = std::expm1(w);
    return phi(start + direction * s) + w;
  };
  double total = kNegInf;
  double prev_panel = kNegInf;
  double panel = kNegInf;
  int quiet = 0;
  for (double w = 0.0; w < max_w; w += 1.0) {
    prev_panel = panel;
    panel = log_integrate(in_w, w, w + 1.0, 1e-11);
    if (panel == kInf) return kInf;
    total = log_add(total, panel);
    if (panel < total + std::log(rel_tol)) {
      if (++quiet >= 3) return total;
    } else {
      quiet = 0;
    }
  }
  if (panel == kNegInf) return total;
  const double log_ratio = panel - prev_panel;
  if (!(log_ratio < 0.0)) return kInf;
  // Geometric remainder: panel * r / (1 - r).
  return log_add(total, panel + log_ratio - std::log(-std::expm1(log_ratio)));
}

}  // namespace orlicz::quad
