#pragma once

// Optimal target spaces: the companion H, the Sobolev conjugate
// A_{n/s} = A o H^{-1}, the rearrangement-invariant building block A-hat
// and its truncation E_A with the weight phi.
//
// Everything is tabulated on grids in u = log t. The grids are uniform on
// [log 1e-12, log 1e12] and are continued geometrically in |u| outside, which
// is where the exponential and log-corrected asymptotics live.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "orlicz/monotone.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/regime.hpp"
#include "orlicz/space.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct TargetGridConfig {
  double t_lo = 1e-12;
  double t_hi = 1e12;
  std::size_t uniform_points = 512;
  /// Growth factor of |u| per step outside [t_lo, t_hi].
  double ratio = 1.05;
  /// H's grid is continued towards 0 until H drops below this level ...
  double log_h_floor = -18.420680743952367;  // log 1e-8
  /// ... or u reaches this value.
  double u_floor = -1e30;
  /// Lower end of the A-hat grid, in u.
  double hat_u_floor = -2e5;
  double inner_rel_tol = 1e-9;
  double outer_rel_tol = 1e-7;
};

namespace detail {

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return g;
}

/// Geometric continuation of a grid edge: start * ratio^k while beyond `stop`
/// has not been passed.
inline std::vector<double> geometric_tail(double start, double stop, double ratio) {
  std::vector<double> out;
  for (double u = start * ratio; start < 0 ? u > stop : u < stop; u *= ratio) out.push_back(u);
  out.push_back(stop);
  return out;
}

inline void require_indisp(const YoungFunction& a, const SpaceParams& p, const char* who) {
  if (!p.admissible_order()) throw std::invalid_argument(std::string(who) + ": requires s in (0, n)");
  if (!check_indisp(a, p).converges)
    throw std::invalid_argument(std::string(who) + ": the integral of (t/A)^{s/(n-s)} diverges near zero");
}

}  // namespace detail

/// H(t) = (int_0^t (tau/A(tau))^{s/(n-s)} dtau)^{(n-s)/n}, tabulated in
/// log-log form. In the supercritical case the map saturates at sup H.
inline MonotoneMap sobolev_companion_H(const YoungFunction& a, const SpaceParams& p,
                                       const TargetGridConfig& cfg = {}) {
  detail::require_indisp(a, p, "sobolev_companion_H");
  const double expo = (p.n() - p.s()) / p.n();
  const quad::LogIntegrand phi = [&](double u) { return log_regime_measure(a, p, u); };
  const double u_lo = std::log(cfg.t_lo);
  double u_top = std::log(cfg.t_hi);
  const bool capped = !a.finite_valued() && std::log(a.inf_threshold()) < u_top;
  if (capped) u_top = std::log(a.inf_threshold());
  const double u_start = std::min(u_lo, u_top - 20.0);

  // Continue towards zero until H is small.
  std::vector<double> lower;
  for (double u = u_start * cfg.ratio; u > cfg.u_floor; u *= cfg.ratio) {
    lower.push_back(u);
    if (lower.size() % 8 == 0 && expo * quad::log_ray_integral(phi, u, -1) < cfg.log_h_floor) break;
  }
  std::vector<double> us(lower.rbegin(), lower.rend());
  const auto mid = detail::uniform_grid(u_start, u_top, cfg.uniform_points);
  us.insert(us.end(), mid.begin(), mid.end());

  const Regime regime = classify_growth(a, p);
  const bool super = regime.tag == RegimeTag::supercritical;
  const double log_sup = super ? expo * std::log(regime.indisp_value + regime.tail_value) : kInf;

  std::vector<double> log_i{quad::log_ray_integral(phi, us.front(), -1)};
  for (std::size_t i = 1; i < us.size(); ++i)
    log_i.push_back(log_add(log_i.back(), quad::log_integrate(phi, us[i - 1], us[i], cfg.inner_rel_tol)));
  if (!capped) {
    // Continue upwards: until saturation when supercritical, else to ~1e300.
    double u = u_top;
    while (u < 690.0) {
      const double next = std::min(u * cfg.ratio, 690.0);
      const double inc = quad::log_integrate(phi, u, next, cfg.inner_rel_tol);
      const double total = log_add(log_i.back(), inc);
      us.push_back(next);
      log_i.push_back(total);
      u = next;
      if (super && inc < total + std::log(1e-14)) break;
    }
  }
  MonotoneMap::Tabulated tab;
  tab.sup_value = super ? std::exp(log_sup) : kInf;
  for (std::size_t i = 0; i < us.size(); ++i) {
    tab.log_t.push_back(us[i]);
    double lh = expo * log_i[i];
    if (super) lh = std::min(lh, log_sup);
    if (!tab.log_f.empty()) lh = std::max(lh, tab.log_f.back());
    tab.log_f.push_back(lh);
  }
  return MonotoneMap(std::move(tab));
}

/// A_{n/s}(t) = A(H^{-1}(t)); +inf beyond sup H in the supercritical case.
inline YoungFunction orlicz_target(const YoungFunction& a, const SpaceParams& p, const TargetGridConfig& cfg = {}) {
  const MonotoneMap h = sobolev_companion_H(a, p, cfg);
  const auto& tab = h.table();
  const double expo = (p.n() - p.s()) / p.n();
  const double log_sup = safe_log(h.sup_value());
  // Density of A o H^{-1} at H(t): a(t) / H'(t).
  std::vector<double> lx, ld;
  double v0 = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < tab.log_t.size(); ++i) {
    const double u = tab.log_t[i], lh = tab.log_f[i];
    if (lh >= log_sup - 1e-12) break;
    const double la = a.log_value(u);
    const double lh_prime = std::log(expo) + (expo - 1.0) * lh / expo + log_regime_measure(a, p, u) - u;
    const double d = a.log_density(u) - lh_prime;
    if (!std::isfinite(la) || !std::isfinite(d)) continue;
    if (!lx.empty() && !(lh > lx.back() + 1e-13 * std::max(1.0, std::abs(lh)))) continue;
    if (lx.empty()) v0 = la;
    lx.push_back(lh);
    ld.push_back(std::max(d, ld.empty() ? kNegInf : ld.back()));
  }
  if (lx.size() < 2) throw std::runtime_error("orlicz_target: degenerate tables");
  auto knots = Tabulated::from_density(std::move(lx), std::move(ld), v0);
  return YoungFunction({Piece{0.0, std::move(knots)}}, h.sup_value());
}

/// Tables behind A-hat:
///   K(tau)     = int_0^tau a^{-s/(n-s)},
///   Outer(sig) = int_sig^inf K^{-n/s} a^{-n/(n-s)},
///   a-hat^{-1}(a(sig)) = Outer(sig)^{s/(s-n)}.
class HatConstruction {
 public:
  HatConstruction(const YoungFunction& a, const SpaceParams& p, const TargetGridConfig& cfg = {})
      : a_(a), p_(p), cfg_(cfg) {
    detail::require_indisp(a, p, "hat_density_inverse");
    double u_top = std::log(cfg.t_hi);
    if (!a.finite_valued()) u_top = std::min(u_top, std::log(a.inf_threshold()));
    const double u_start = std::min(std::log(cfg.t_lo), u_top - 20.0);
    auto lower = detail::geometric_tail(u_start, cfg.hat_u_floor, cfg.ratio);
    u_.assign(lower.rbegin(), lower.rend());
    const auto mid = detail::uniform_grid(u_start, u_top, cfg.uniform_points);
    u_.insert(u_.end(), mid.begin(), mid.end());

    for (double u : u_) {
      const double lk = quad::log_ray_integral(inner_measure(), u, -1, cfg.inner_rel_tol);
      if (!std::isfinite(lk)) throw std::invalid_argument("hat_density_inverse: inner integral is not finite");
      log_k_.push_back(lk);
      dlog_k_.push_back(std::exp(inner_measure()(u) - lk));
    }
    for (double u : u_) log_o_.push_back(log_outer(u));
  }

  const YoungFunction& base() const { return a_; }

  /// log K(e^w).
  double log_inner(double w) const {
    if (w <= u_.front()) return quad::log_ray_integral(inner_measure(), w, -1, cfg_.inner_rel_tol);
    if (w >= u_.back()) return log_k_.back() + dlog_k_.back() * (w - u_.back());
    const std::size_t i = static_cast<std::size_t>(std::upper_bound(u_.begin(), u_.end(), w) - u_.begin()) - 1;
    // Cubic Hermite with the exact derivative d log K / du = e^u a^{-q} / K.
    const double h = u_[i + 1] - u_[i];
    const double t = (w - u_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * log_k_[i] + (t3 - 2 * t2 + t) * h * dlog_k_[i] + (-2 * t3 + 3 * t2) * log_k_[i + 1] +
           (t3 - t2) * h * dlog_k_[i + 1];
  }

  /// log Outer(e^v).
  double log_outer(double v) const { return quad::log_ray_integral(outer_measure(), v, +1, cfg_.outer_rel_tol); }

  /// a-hat^{-1}(t).
  double density_inverse(double t) const {
    if (!(t > 0.0)) return 0.0;
    const double sigma = generalized_inverse_of([&](double x) { return a_.density_or_inf(x); }, t);
    if (sigma == kInf) return kInf;
    if (sigma == 0.0) return 0.0;
    return std::exp(hat_power() * log_outer(std::log(sigma)));
  }

  /// A-hat, integrated from the knots (a-hat^{-1}(a(sig_i)), a(sig_i)) with
  /// power-law density segments.
  YoungFunction young() const {
    std::vector<double> lx, ld;
    for (std::size_t i = 0; i < u_.size(); ++i) {
      const double x = hat_power() * log_o_[i];
      const double d = a_.log_density(u_[i]);
      if (!std::isfinite(x) || !std::isfinite(d)) continue;
      if (!lx.empty() && !(x > lx.back() + 1e-12 * std::max(1.0, std::abs(x)))) continue;
      lx.push_back(x);
      ld.push_back(std::max(d, ld.empty() ? kNegInf : ld.back()));
    }
    if (lx.size() < 2) throw std::runtime_error("orlicz_lorentz_target: degenerate tables");
    // Below the first knot the first density segment is continued down to 0.
    const double m0 = (ld[1] - ld[0]) / (lx[1] - lx[0]);
    const double v0 = ld[0] + lx[0] - std::log(m0 + 1.0);
    auto tab = Tabulated::from_density(std::move(lx), std::move(ld), v0);
    return YoungFunction({Piece{0.0, std::move(tab)}});
  }

 private:
  YoungFunction a_;
  SpaceParams p_;
  TargetGridConfig cfg_;
  std::vector<double> u_, log_k_, dlog_k_, log_o_;

  double hat_power() const { return p_.s() / (p_.s() - p_.n()); }

  quad::LogIntegrand inner_measure() const {
    return [this](double w) { return log_density_measure(a_, p_.regime_power(), 1.0, w); };
  }

  quad::LogIntegrand outer_measure() const {
    return [this](double w) {
      const double n = p_.n(), s = p_.s();
      const double m = log_density_measure(a_, n / (n - s), 1.0, w);
      return m == kNegInf ? kNegInf : m - (n / s) * log_inner(w);
    };
  }
};

inline double hat_density_inverse(const YoungFunction& a, const SpaceParams& p, double t) {
  return HatConstruction(a, p).density_inverse(t);
}

/// A-hat, the Young function of the optimal Orlicz-Lorentz target.
inline YoungFunction orlicz_lorentz_target(const YoungFunction& a, const SpaceParams& p,
                                           const TargetGridConfig& cfg = {}) {
  return HatConstruction(a, p, cfg).young();
}

/// r -> min(1, r^{-s/n}).
inline std::function<double(double)> hardy_weight(const SpaceParams& p) {
  const double e = p.s() / p.n();
  return [e](double r) { return r <= 1.0 ? 1.0 : std::pow(r, -e); };
}

struct Truncation {
  YoungFunction young;
  std::function<double(double)> weight;
};

/// E_A: A-hat on [0, 1] and +inf beyond, with the weight phi.
inline Truncation truncate_to_EA(const YoungFunction& a_hat, const SpaceParams& p) {
  return {YoungFunction(a_hat.pieces(), std::min(1.0, a_hat.inf_threshold())), hardy_weight(p)};
}

struct TargetBundle {
  MonotoneMap h;
  YoungFunction a_ns;
  YoungFunction a_hat;
  YoungFunction e_a;
  std::function<double(double)> phi;
};

inline TargetBundle build_targets(const YoungFunction& a, const SpaceParams& p, const TargetGridConfig& cfg = {}) {
  auto h = sobolev_companion_H(a, p, cfg);
  auto a_ns = orlicz_target(a, p, cfg);
  auto a_hat = orlicz_lorentz_target(a, p, cfg);
  auto trunc = truncate_to_EA(a_hat, p);
  return {std::move(h), std::move(a_ns), std::move(a_hat), std::move(trunc.young), std::move(trunc.weight)};
}

/// Least-squares fit of log A(e^u) ~ c + power u + log_power log(-u) over
/// u in [u_lo, u_hi] (u < 0).
struct PowerLogFit {
  double power = 0.0;
  double log_power = 0.0;
};

inline PowerLogFit fit_power_log(const YoungFunction& a, double u_lo, double u_hi, std::size_t samples = 64) {
  std::vector<double> ones, us, logs, ys;
  for (std::size_t i = 0; i < samples; ++i) {
    // Geometric in |u| so every decade of the log factor counts equally.
    const double u = -std::exp(std::log(-u_hi) + (std::log(-u_lo) - std::log(-u_hi)) * i / (samples - 1));
    const double y = a.log_value(u);
    if (!std::isfinite(y)) continue;
    ones.push_back(1.0);
    us.push_back(u);
    logs.push_back(std::log(-u));
    ys.push_back(y);
  }
  const auto beta = least_squares({ones, us, logs}, ys);
  return {beta[1], beta[2]};
}

}  // namespace orlicz
