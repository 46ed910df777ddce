#pragma once

// One-dimensional Hardy operator with kernel rho^{-1+s/n} and the checks
// built on it.
//
// Trials are piecewise constant or piecewise linear on the half-line, so
// int_r^inf f(rho) rho^kappa drho is a sum of closed-form power
// antiderivatives.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/regime.hpp"
#include "orlicz/sampled.hpp"
#include "orlicz/space.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct HardyKernel {
  SpaceParams p;

  explicit HardyKernel(const SpaceParams& params) : p(params) {
    if (!(p.s() > 0.0 && p.s() < p.n())) throw std::domain_error("HardyKernel: need 0 < s < n");
  }
  double exponent() const { return -1.0 + p.s() / p.n(); }
};

namespace detail {

// int_a^b rho^e drho for e > -1 and 0 <= a <= b < inf.
inline double power_integral(double a, double b, double e) {
  return (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
}

inline void check_trial(const SampledFunction& f) {
  if (f.domain() != Domain::halfline) throw std::invalid_argument("hardy_operator: trials live on the half-line");
  for (double v : f.values())
    if (v < 0.0) throw std::invalid_argument("hardy_operator: trials must be non-negative");
}

}  // namespace detail

/// int_r^inf f(rho) rho^{-1+s/n} drho; +inf for a non-zero infinite last cell.
inline double hardy_operator(const SampledFunction& f, const SpaceParams& p, double r) {
  detail::check_trial(f);
  if (!(r >= 0.0)) throw std::invalid_argument("hardy_operator: r must be non-negative");
  const double e = HardyKernel(p).exponent();
  const auto& x = f.grid();
  const auto& v = f.values();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = std::max(x[i], r), b = x[i + 1];
    if (!(b > a)) continue;
    if (b == kInf) {
      if (v[i] != 0.0) return kInf;
      continue;
    }
    if (f.shape() == Shape::step) {
      acc += v[i] * detail::power_integral(a, b, e);
    } else {
      // v(rho) = alpha + m rho on the cell.
      const double m = (v[i + 1] - v[i]) / (x[i + 1] - x[i]);
      const double alpha = v[i] - m * x[i];
      acc += alpha * detail::power_integral(a, b, e) + m * detail::power_integral(a, b, e + 1.0);
    }
  }
  return acc;
}

/// r -> hardy_operator(f, p, r) sampled on f's grid with every cell cut into
/// `refine` parts, starting at r = 0 and ending where f does. A cell starting
/// at 0, where the derivative -f(r) r^kappa blows up, is graded as (k/refine)^4.
inline SampledFunction hardy_profile(const SampledFunction& f, const SpaceParams& p, int refine = 64) {
  detail::check_trial(f);
  if (refine < 1) throw std::invalid_argument("hardy_profile: refine must be >= 1");
  std::vector<double> nodes;
  if (f.grid().front() > 0.0) nodes.push_back(0.0);
  const auto& x = f.grid();
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (x[i + 1] == kInf) {
      if (f.values()[i] != 0.0) throw std::domain_error("hardy_profile: the Hardy transform is infinite");
      break;
    }
    for (int k = 0; k < refine; ++k) {
      const double w = static_cast<double>(k) / refine;
      nodes.push_back(x[i] + (x[i + 1] - x[i]) * (x[i] == 0.0 ? w * w * w * w : w));
    }
  }
  std::size_t last = x.size() - 1;
  while (last > 0 && x[last] == kInf) --last;
  nodes.push_back(x[last]);
  std::vector<double> values;
  values.reserve(nodes.size());
  for (double r : nodes) values.push_back(hardy_operator(f, p, r));
  return SampledFunction::halfline(std::move(nodes), std::move(values));
}

/// ||rho^{-1+s/n}||_{L^{A~}(0, inf)}. The substitution tau = rho^kappa / lambda
/// gives the modular lambda^{1/kappa} K / |kappa| with
/// K = int_0^inf A~(tau) tau^{1/kappa - 1} dtau, so the norm is
/// (K / |kappa|)^{-kappa} when K is finite.
inline ExtReal kernel_conjugate_norm(const YoungFunction& a, const SpaceParams& p, const EngineConfig& cfg = {}) {
  const double kappa = HardyKernel(p).exponent();
  const auto conj = conjugate(a);
  const double e = 1.0 / kappa - 1.0;
  const auto log_g = [&](double u) { return conj.log_value(u) + e * u; };
  const auto zero = classify_log_integrand(log_g, Endpoint::zero, cfg);
  if (!zero.converges) return kInf;
  const auto inf = classify_log_integrand(log_g, Endpoint::infinity, cfg);
  if (!inf.converges) return kInf;
  return std::pow((zero.value + inf.value) / std::abs(kappa), -kappa);
}

struct LinfTarget {};
struct OrliczTarget {
  YoungFunction b;
};
/// L^inf intersected with the Orlicz-Lorentz space L(A-hat, n/s).
struct IntersectionTarget {
  YoungFunction a_hat;
};
using TargetNorm = std::variant<LinfTarget, OrliczTarget, IntersectionTarget>;

inline const char* to_string(const TargetNorm& t) {
  if (std::holds_alternative<LinfTarget>(t)) return "linf";
  if (std::holds_alternative<OrliczTarget>(t)) return "orlicz";
  return "intersection";
}

/// Norm of r -> hardy_operator(f, p, r) in the target space on (0, inf).
inline double hardy_target_norm(const TargetNorm& target, const SampledFunction& f, const SpaceParams& p,
                                int refine = 64) {
  if (std::holds_alternative<LinfTarget>(target)) return hardy_operator(f, p, 0.0);
  const auto g = hardy_profile(f, p, refine);
  if (const auto* o = std::get_if<OrliczTarget>(&target)) return luxemburg_norm(o->b, g);
  // The transform is non-increasing, so its sup is at r = 0.
  const auto& hat = std::get<IntersectionTarget>(target).a_hat;
  return g.values().front() + orlicz_lorentz_norm(hat, p.critical(), g);
}

struct ReductionEstimate {
  /// Largest ratio found; a lower bound for the best constant.
  double estimate = 0.0;
  std::size_t trials_used = 0;
  std::size_t best_trial = 0;
  std::vector<double> ratios;
};

/// max over trials of ||H f||_target / ||f||_{L^A}; zero trials are skipped.
inline ReductionEstimate reduction_constant_estimate(const YoungFunction& a, const SpaceParams& p,
                                                     const TargetNorm& target, const std::vector<SampledFunction>& trials,
                                                     unsigned jobs = 1) {
  std::vector<double> ratios(trials.size(), std::numeric_limits<double>::quiet_NaN());
  parallel_for(trials.size(), jobs, [&](std::size_t i) {
    const double den = luxemburg_norm(a, trials[i]);
    if (!(den > 0.0)) return;
    ratios[i] = hardy_target_norm(target, trials[i], p) / den;
  });
  ReductionEstimate out;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (std::isnan(ratios[i])) continue;
    out.ratios.push_back(ratios[i]);
    if (out.trials_used++ == 0 || ratios[i] > out.estimate) {
      out.estimate = ratios[i];
      out.best_trial = i;
    }
  }
  return out;
}

/// Hoelder bound for the L^inf target: 2 ||rho^{-1+s/n}||_{L^{A~}}.
inline ExtReal linf_upper_bound(const YoungFunction& a, const SpaceParams& p) {
  return 2.0 * kernel_conjugate_norm(a, p);
}

/// f_k = A^{-1}(k) on (0, 1/k), so that int A(f_k) = 1.
inline std::vector<SampledFunction> spike_trials(const YoungFunction& a, const std::vector<double>& ks) {
  std::vector<SampledFunction> out;
  for (double k : ks) {
    if (!(k > 0.0)) throw std::invalid_argument("spike_trials: k must be positive");
    out.push_back(SampledFunction::halfline({0.0, 1.0 / k}, {a.inverse(k), 0.0}, Shape::step));
  }
  return out;
}

}  // namespace orlicz
