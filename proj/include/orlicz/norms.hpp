#pragma once

// Luxemburg, Orlicz-Lorentz, intersection and L^1 + L^inf norms of sampled
// functions.
//
// Modulars are summed in log space over cells. On the half-line the weights
// r^{-1/q} and min(1, r^{-1/q}) are integrated exactly in r by the change of
// variables tau = c r^{-1/q}, so the improper cell at r = 0 is an integral
// of E(tau) tau^{-q-1} over a ray.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "orlicz/numeric.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/regime.hpp"
#include "orlicz/sampled.hpp"
#include "orlicz/space.hpp"
#include "orlicz/targets.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct GaugeConfig {
  double lo = 1e-12;
  double hi = 1e12;
  int iterations = 80;
  /// Stop once hi / lo - 1 drops below this.
  double rel_tol = 1e-13;
};

/// inf{lambda in [lo, hi] : modular(lambda) <= 1} by bisection in log lambda,
/// given log modular(lambda). +inf when even hi fails. The modular must be
/// non-increasing in lambda.
inline double gauge(const std::function<double(double)>& log_modular, const GaugeConfig& cfg = {}) {
  if (log_modular(cfg.hi) > 0.0) return kInf;
  double lo = std::log(cfg.lo), hi = std::log(cfg.hi);
  if (log_modular(cfg.lo) <= 0.0) return cfg.lo;
  for (int i = 0; i < cfg.iterations && hi - lo > cfg.rel_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (log_modular(std::exp(mid)) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return std::exp(hi);
}

/// log of sum_i w_i A(|v_i| / lambda).
inline double log_cell_modular(const YoungFunction& a, const std::vector<Cell>& cells, double lambda) {
  double acc = kNegInf;
  const double ll = std::log(lambda);
  for (const auto& c : cells) {
    if (c.value == 0.0) continue;
    const double la = a.log_value(std::log(std::abs(c.value)) - ll);
    if (la == kNegInf) continue;
    if (la == kInf) return kInf;
    acc = log_add(acc, la + std::log(c.weight));
  }
  return acc;
}

inline double luxemburg_norm(const YoungFunction& a, const std::vector<Cell>& cells, const GaugeConfig& cfg = {}) {
  bool zero = true;
  for (const auto& c : cells) zero = zero && c.value == 0.0;
  if (zero) return 0.0;
  return gauge([&](double l) { return log_cell_modular(a, cells, l); }, cfg);
}

inline double luxemburg_norm(const YoungFunction& a, const SampledFunction& u, const GaugeConfig& cfg = {}) {
  return luxemburg_norm(a, u.cells(), cfg);
}

inline double luxemburg_norm(const YoungFunction& a, const RearrangedFunction& u, const GaugeConfig& cfg = {}) {
  return luxemburg_norm(a, u.cells(), cfg);
}

/// int |u v| over the common cells; both functions must share the grid.
inline double product_integral(const SampledFunction& u, const SampledFunction& v) {
  if (u.grid() != v.grid() || u.domain() != v.domain())
    throw std::invalid_argument("product_integral: functions must share a grid");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.cell_count(); ++i) acc += std::abs(u.cell_value(i) * v.cell_value(i)) * u.cell_weight(i);
  return acc;
}

/// Modular of r -> v(r) w(r) on (0, inf) for a step function v and the
/// weight w(r) = r^{-1/q}, optionally capped at 1 (min(1, r^{-1/q})).
class HalfLineWeightedModular {
 public:
  HalfLineWeightedModular(const YoungFunction& e, double q, bool capped)
      : e_(e), q_(q), capped_(capped), phi_([this](double w) { return e_.log_value(w) - q_ * w; }) {
    if (!(q > 0.0)) throw std::invalid_argument("HalfLineWeightedModular: q must be positive");
    // int^inf E(tau) tau^{-1-q} dtau decides every cell touching r = 0.
    if (!e.finite_valued()) {
      ray_converges_ = false;
    } else {
      const auto tail = classify_log_integrand([this](double u) { return e_.log_value(u) - (q_ + 1.0) * u; },
                                               Endpoint::infinity);
      ray_converges_ = tail.converges;
    }
  }

  HalfLineWeightedModular(const HalfLineWeightedModular&) = delete;
  HalfLineWeightedModular& operator=(const HalfLineWeightedModular&) = delete;

  bool ray_converges() const { return ray_converges_; }

  /// log int_a^b E(c w(r)) dr for 0 <= a < b < inf and c > 0.
  double log_cell(double log_c, double a, double b) const {
    if (!capped_) return log_power_cell(log_c, a, b);
    // The weight is 1 on (0, 1].
    const double flat = a < 1.0 ? e_.log_value(log_c) + std::log(std::min(b, 1.0) - a) : kNegInf;
    if (b <= 1.0 || flat == kInf) return flat;
    return log_add(flat, log_power_cell(log_c, std::max(a, 1.0), b));
  }

  double log_modular(const RearrangedFunction& u, double lambda) const {
    double acc = kNegInf;
    const double ll = std::log(lambda);
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double term = log_cell(std::log(u.values()[k]) - ll, u.left(k), u.ends()[k]);
      if (term == kInf) return kInf;
      acc = log_add(acc, term);
    }
    return acc;
  }

 private:
  const YoungFunction& e_;
  double q_;
  bool capped_;
  quad::LogIntegrand phi_;
  bool ray_converges_ = false;

  // tau = c r^{-1/q}: int_a^b E(c r^{-1/q}) dr = q c^q int E(tau) tau^{-q-1} dtau.
  double log_power_cell(double log_c, double a, double b) const {
    const double w_lo = log_c - std::log(b) / q_;
    double core;
    if (a == 0.0) {
      if (!ray_converges_) return kInf;
      core = quad::log_ray_integral(phi_, w_lo, +1, 1e-12, 30.0);
    } else {
      const double w_hi = log_c - std::log(a) / q_;
      if (w_hi - w_lo < 0.25) {
        const quad::GaussRule<8> rule(w_lo, w_hi);
        core = kNegInf;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double p = phi_(rule.nodes[i]);
          if (p == kInf) return kInf;
          core = log_add(core, p + std::log(rule.weights[i]));
        }
      } else {
        core = quad::log_integrate(phi_, w_lo, w_hi, 1e-10);
      }
    }
    return std::log(q_) + q_ * log_c + core;
  }
};

/// Sufficient condition for the Orlicz-Lorentz functional to be a norm:
/// q > 1 and int^inf E(t) t^{-1-q} dt < inf.
inline bool orlicz_lorentz_is_norm(const YoungFunction& e, double q) {
  return q > 1.0 && HalfLineWeightedModular(e, q, false).ray_converges();
}

/// || r^{-1/q} u*(r) ||_{L^E(0, inf)}.
inline double orlicz_lorentz_norm(const YoungFunction& e, double q, const RearrangedFunction& u,
                                  const GaugeConfig& cfg = {}) {
  if (u.size() == 0) return 0.0;
  const HalfLineWeightedModular m(e, q, false);
  if (!m.ray_converges()) return kInf;
  return gauge([&](double l) { return m.log_modular(u, l); }, cfg);
}

inline double orlicz_lorentz_norm(const YoungFunction& e, double q, const SampledFunction& u,
                                  const GaugeConfig& cfg = {}) {
  return orlicz_lorentz_norm(e, q, decreasing_rearrangement(u), cfg);
}

/// || u*(r) min(1, r^{-s/n}) ||_{L^E(0, inf)}.
inline double weighted_rearrangement_norm(const YoungFunction& e, const SpaceParams& p, const RearrangedFunction& u,
                                          const GaugeConfig& cfg = {}) {
  if (u.size() == 0) return 0.0;
  const HalfLineWeightedModular m(e, p.critical(), true);
  return gauge([&](double l) { return m.log_modular(u, l); }, cfg);
}

struct IntersectionNorms {
  /// sup |u| + || u ||_{L(A-hat, n/s)}.
  double sum_form = 0.0;
  /// || u* phi ||_{L^{E_A}}.
  double weighted_form = 0.0;
};

inline IntersectionNorms intersection_norm(const YoungFunction& a_hat, const SpaceParams& p, const SampledFunction& u,
                                           const GaugeConfig& cfg = {}) {
  const auto star = decreasing_rearrangement(u);
  if (star.size() == 0) return {};
  const auto e_a = truncate_to_EA(a_hat, p).young;
  return {u.sup_abs() + orlicz_lorentz_norm(a_hat, p.critical(), star, cfg),
          weighted_rearrangement_norm(e_a, p, star, cfg)};
}

/// int_0^1 u*.
inline double l1_plus_linf_norm(const RearrangedFunction& u) { return u.integral(1.0); }
inline double l1_plus_linf_norm(const SampledFunction& u) { return l1_plus_linf_norm(decreasing_rearrangement(u)); }

}  // namespace orlicz
