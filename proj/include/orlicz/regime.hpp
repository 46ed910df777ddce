#pragma once

// Convergence of improper integrals at 0 or at infinity, and the regime of a
// (SpaceParams, YoungFunction) pair built on top of it.
//
// The engine never decides divergence from quadrature overflow. It fits the
// local power exponent of the integrand over the four decades next to the
// cutoff; a clear exponent decides, a borderline one (|e + 1| < margin) is
// resolved by comparing partial integrals over dyadic blocks in log t with
// the harmonic benchmark 1/(t log t), whose blocks are all equal.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "orlicz/numeric.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/space.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

enum class Endpoint { zero, infinity };
enum class Method { closed_form, exponent_rule, adaptive_tail };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::exponent_rule: return "exponent_rule";
    case Method::adaptive_tail: return "adaptive_tail";
  }
  return "?";
}

struct ConvergenceReport {
  bool converges = false;
  /// Integral over (0, 1] (zero endpoint) or [1, inf) (infinity endpoint);
  /// +inf when divergent.
  ExtReal value = kInf;
  Method method = Method::exponent_rule;
  double local_exponent = 0.0;
  /// Set when the exponent and the block test both sit on the harmonic edge.
  bool borderline = false;
};

class ClassificationError : public std::runtime_error {
 public:
  ClassificationError(const std::string& what, double exponent) : std::runtime_error(what), exponent_(exponent) {}
  double local_exponent() const { return exponent_; }

 private:
  double exponent_;
};

struct EngineConfig {
  double cutoff_zero = 1e-12;
  double cutoff_infinity = 1e12;
  double margin = 0.05;
  int fit_decades = 4;
  int dyadic_blocks = 24;
};

namespace detail {

/// log of the integral of g over the unit side of the endpoint, where
/// phi(u) = log g(e^u) + u is the integrand in u = log t. An optional
/// breakpoint `split` inside the body is honoured.
inline double unit_side_log_integral(const quad::LogIntegrand& phi, Endpoint end, double u_cut,
                                     double split = std::numeric_limits<double>::quiet_NaN()) {
  double lo = end == Endpoint::zero ? u_cut : 0.0;
  double hi = end == Endpoint::zero ? 0.0 : u_cut;
  double body;
  if (split > lo && split < hi)
    body = log_add(quad::log_integrate(phi, lo, split), quad::log_integrate(phi, split, hi));
  else
    body = quad::log_integrate(phi, lo, hi);
  // Past |u| ~ 1e13 the sum log g + u cancels catastrophically for
  // integrands near 1/t; the geometric closure takes over from there.
  return log_add(body, quad::log_ray_integral(phi, u_cut, end == Endpoint::zero ? -1 : +1, 1e-12, 30.0));
}

}  // namespace detail

/// Classifies the integral of g near `end` given phi(u) = log(g(e^u) e^u),
/// the integrand after the substitution t = e^u.
inline ConvergenceReport classify_log_measure(const quad::LogIntegrand& phi, Endpoint end,
                                              const EngineConfig& cfg = {},
                                              double split = std::numeric_limits<double>::quiet_NaN()) {
  const double dir = end == Endpoint::zero ? -1.0 : 1.0;
  const double u_cut = std::log(end == Endpoint::zero ? cfg.cutoff_zero : cfg.cutoff_infinity);
  const double span = cfg.fit_decades * std::log(10.0);
  constexpr int kFit = 17;
  std::vector<double> us, lg;
  bool any_finite = false;
  for (int i = 0; i < kFit; ++i) {
    // From the inner edge of the fit window out to the cutoff.
    const double u = u_cut - dir * span * (1.0 - static_cast<double>(i) / (kFit - 1));
    const double v = phi(u);
    if (v == kInf) {
      ConvergenceReport r;
      r.local_exponent = kInf;
      return r;
    }
    if (std::isnan(v)) throw ClassificationError("integrand is NaN near the endpoint", 0.0);
    if (v != kNegInf) any_finite = true;
    us.push_back(u);
    lg.push_back(v);
  }
  if (!any_finite) {
    // g vanishes identically near the endpoint.
    ConvergenceReport r;
    r.converges = true;
    r.local_exponent = kNegInf;
    r.value = std::exp(detail::unit_side_log_integral(phi, end, u_cut, split));
    return r;
  }
  for (double v : lg)
    if (v == kNegInf) throw ClassificationError("integrand vanishes intermittently near the endpoint", 0.0);
  // Eventual monotonicity in t.
  int ups = 0, downs = 0;
  for (std::size_t i = 1; i < lg.size(); ++i) {
    const double d = (lg[i] - us[i] - lg[i - 1] + us[i - 1]) * dir;
    const double tol = 1e-10 * std::max(1.0, std::abs(lg[i]));
    if (d > tol) ++ups;
    if (d < -tol) ++downs;
  }
  const double e = linear_fit(us, lg).slope - 1.0;
  if (ups > 0 && downs > 0) {
    std::ostringstream os;
    os << "non-monotone integrand near the endpoint (fitted exponent " << e << ")";
    throw ClassificationError(os.str(), e);
  }

  ConvergenceReport r;
  r.local_exponent = e;
  // Convergence at 0 needs e > -1, at infinity e < -1.
  const double lead = end == Endpoint::zero ? e + 1.0 : -(e + 1.0);
  const double eps = 1e-9;
  if (lead <= -cfg.margin + eps) {
    r.method = Method::exponent_rule;
    return r;
  }
  if (lead < cfg.margin - eps) {
    // Dyadic blocks |u| in [|u_cut| 2^k, |u_cut| 2^(k+1)].
    r.method = Method::adaptive_tail;
    const double base = std::abs(u_cut);
    std::vector<double> logs;
    for (int k = 0; k < cfg.dyadic_blocks; ++k) {
      const double a = base * std::ldexp(1.0, k), b = base * std::ldexp(1.0, k + 1);
      logs.push_back(end == Endpoint::zero ? quad::log_integrate(phi, -b, -a) : quad::log_integrate(phi, a, b));
    }
    double mean = 0.0;
    constexpr int kLast = 6;
    for (int k = cfg.dyadic_blocks - kLast; k < cfg.dyadic_blocks; ++k) mean += (logs[k] - logs[k - 1]) / std::log(2.0);
    mean /= kLast;
    if (std::abs(mean) < cfg.margin) {
      r.borderline = true;
      return r;
    }
    if (mean > 0.0) return r;
  } else {
    r.method = Method::exponent_rule;
  }
  const double lv = detail::unit_side_log_integral(phi, end, u_cut, split);
  if (lv == kInf) return r;
  r.converges = true;
  r.value = std::exp(lv);
  return r;
}

/// Same, given log g as a function of u = log t.
inline ConvergenceReport classify_log_integrand(const std::function<double(double)>& log_g, Endpoint end,
                                                const EngineConfig& cfg = {}) {
  return classify_log_measure([&](double u) { return log_g(u) + u; }, end, cfg);
}

/// Classifies the integral of a non-negative scalar map g near `end`.
///
/// Where e^u leaves the double range, g is continued as the power law it
/// follows at the edge of that range.
inline ConvergenceReport classify_endpoint_integral(const std::function<double(double)>& g, Endpoint end,
                                                    const EngineConfig& cfg = {}) {
  constexpr double kEdge = 700.0;
  const auto direct = [&](double u) { return safe_log(g(std::exp(u))); };
  const double lo_v = direct(-kEdge), lo_slope = (direct(-kEdge + 10.0) - lo_v) / 10.0;
  const double hi_v = direct(kEdge), hi_slope = (hi_v - direct(kEdge - 10.0)) / 10.0;
  const auto log_g = [&](double u) {
    if (u < -kEdge) return std::isfinite(lo_v) && std::isfinite(lo_slope) ? lo_v + lo_slope * (u + kEdge) : lo_v;
    if (u > kEdge) return std::isfinite(hi_v) && std::isfinite(hi_slope) ? hi_v + hi_slope * (u - kEdge) : hi_v;
    return direct(u);
  };
  return classify_log_integrand(log_g, end, cfg);
}

/// log of (t / A(t))^{s/(n-s)} at t = e^u.
inline double log_regime_integrand(const YoungFunction& a, const SpaceParams& p, double u) {
  const double la = a.log_value(u);
  if (la == kInf) return kNegInf;
  if (la == kNegInf) return kInf;
  return p.regime_power() * (u - la);
}

/// log of (t / A(t))^{s/(n-s)} t at t = e^u. On power-log end pieces the
/// powers of t are combined first, so that |u| up to ~1e300 stays accurate.
inline double log_regime_measure(const YoungFunction& a, const SpaceParams& p, double u) {
  if (u > safe_log(a.inf_threshold())) return kNegInf;
  if (const PowerLog* pl = end_power_log(a, u)) {
    const double q = p.regime_power();
    double v = (q * (1.0 - pl->p) + 1.0) * u - q * std::log(pl->k);
    if (pl->has_log()) v -= q * pl->alpha * std::log(pl->log_factor(u));
    return v;
  }
  const double g = log_regime_integrand(a, p, u);
  return g == kNegInf || g == kInf ? g : g + u;
}

namespace detail {

/// Exponent rule for an end piece k t^p L^alpha: the integrand is
/// t^e L^beta with e = q(1 - p), beta = -q alpha.
struct PowerRule {
  double exponent;
  double log_exponent;
};

inline std::optional<PowerRule> end_power_rule(const YoungFunction& a, const SpaceParams& p, Endpoint end) {
  const auto& ps = a.pieces();
  if (ps.empty()) return std::nullopt;
  const Piece& piece = end == Endpoint::zero ? ps.front() : ps.back();
  const auto* pl = std::get_if<PowerLog>(&piece.form);
  if (!pl) return std::nullopt;
  const double q = p.regime_power();
  return PowerRule{q * (1.0 - pl->p), -q * pl->alpha};
}

inline bool rule_converges(const PowerRule& r, Endpoint end) {
  const double lead = end == Endpoint::zero ? r.exponent + 1.0 : -(r.exponent + 1.0);
  if (std::abs(lead) <= 1e-12) return r.log_exponent < -1.0;
  return lead > 0.0;
}

inline ConvergenceReport classify_regime_integral(const YoungFunction& a, const SpaceParams& p, Endpoint end,
                                                  const EngineConfig& cfg) {
  const quad::LogIntegrand phi = [&](double u) { return log_regime_measure(a, p, u); };
  const bool vanishes_beyond = end == Endpoint::infinity && !a.finite_valued();
  const bool zero_near_zero =
      end == Endpoint::zero && (a.pieces().empty() || std::holds_alternative<ZeroForm>(a.pieces().front().form));
  if (zero_near_zero) {
    ConvergenceReport r;
    r.method = Method::closed_form;
    r.local_exponent = kInf;
    return r;
  }
  if (!vanishes_beyond) {
    if (auto rule = end_power_rule(a, p, end)) {
      ConvergenceReport r;
      r.method = Method::closed_form;
      r.local_exponent = rule->exponent;
      r.converges = rule_converges(*rule, end);
      if (r.converges) {
        const double u_cut = std::log(end == Endpoint::zero ? cfg.cutoff_zero : cfg.cutoff_infinity);
        r.value = std::exp(unit_side_log_integral(phi, end, u_cut));
      }
      return r;
    }
  }
  const double split = a.finite_valued() ? std::numeric_limits<double>::quiet_NaN() : std::log(a.inf_threshold());
  return classify_log_measure(phi, end, cfg, split);
}

}  // namespace detail

/// Convergence of the integral of (t / A(t))^{s/(n-s)} near zero.
inline ConvergenceReport check_indisp(const YoungFunction& a, const SpaceParams& p, const EngineConfig& cfg = {}) {
  if (!p.admissible_order()) throw std::invalid_argument("check_indisp: requires s in (0, n)");
  return detail::classify_regime_integral(a, p, Endpoint::zero, cfg);
}

/// Convergence of the same integrand near infinity (supercritical iff it
/// converges).
inline ConvergenceReport check_tail(const YoungFunction& a, const SpaceParams& p, const EngineConfig& cfg = {}) {
  if (!p.admissible_order()) throw std::invalid_argument("check_tail: requires s in (0, n)");
  return detail::classify_regime_integral(a, p, Endpoint::infinity, cfg);
}

enum class RegimeTag { inadmissible, subcritical, supercritical };

inline const char* to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::inadmissible: return "inadmissible";
    case RegimeTag::subcritical: return "subcritical";
    case RegimeTag::supercritical: return "supercritical";
  }
  return "?";
}

struct Regime {
  RegimeTag tag = RegimeTag::inadmissible;
  ExtReal indisp_value = kInf;
  ExtReal tail_value = kInf;
  double local_exponent_zero = 0.0;
  double local_exponent_inf = 0.0;
  ConvergenceReport indisp;
  ConvergenceReport tail;
  std::string reason;
};

inline Regime classify_growth(const YoungFunction& a, const SpaceParams& p, const EngineConfig& cfg = {}) {
  Regime r;
  if (!p.admissible_order()) {
    r.reason = "smoothness outside (0, n)";
    return r;
  }
  r.indisp = check_indisp(a, p, cfg);
  r.tail = check_tail(a, p, cfg);
  r.indisp_value = r.indisp.value;
  r.tail_value = r.tail.value;
  r.local_exponent_zero = r.indisp.local_exponent;
  r.local_exponent_inf = r.tail.local_exponent;
  if (!r.indisp.converges) {
    r.reason = "integral near zero diverges";
    return r;
  }
  r.tag = r.tail.converges ? RegimeTag::supercritical : RegimeTag::subcritical;
  return r;
}

/// Integral of (t / A(t))^{s/(n-s)} over (0, inf); +inf unless both ends
/// converge.
inline ExtReal full_line_integral(const YoungFunction& a, const SpaceParams& p, const EngineConfig& cfg = {}) {
  const auto zero = check_indisp(a, p, cfg);
  const auto inf = check_tail(a, p, cfg);
  if (!zero.converges || !inf.converges) return kInf;
  return zero.value + inf.value;
}

}  // namespace orlicz
