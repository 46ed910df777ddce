#pragma once

// Non-decreasing scalar maps on [0, inf) and their left-continuous
// generalized inverses.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "orlicz/numeric.hpp"

namespace orlicz {

/// inf{t >= 0 : f(t) >= y} for a non-decreasing f, by bracketing bisection.
/// The infimum of the empty set is +inf. Bracketing stops at `t_max`.
template <class F>
double generalized_inverse_of(F&& f, double y, double t_max = 1e300) {
  if (std::isnan(y)) throw std::invalid_argument("generalized_inverse: NaN level");
  if (y <= 0.0 && f(0.0) >= y) return 0.0;
  // Bracket [lo, hi] with f(lo) < y <= f(hi), moving geometrically.
  double hi = 1.0;
  double lo = 0.0;
  if (f(hi) >= y) {
    for (;;) {
      const double cand = hi / 16.0;
      if (cand < 1e-300) {
        if (f(0.0) >= y) return 0.0;
        lo = 0.0;
        break;
      }
      if (f(cand) >= y) {
        hi = cand;
      } else {
        lo = cand;
        break;
      }
    }
  } else {
    lo = hi;
    for (;;) {
      double cand = hi * 16.0;
      if (cand > t_max) cand = t_max;
      if (f(cand) >= y) {
        hi = cand;
        break;
      }
      if (cand >= t_max) return kInf;
      lo = cand;
      hi = cand;
    }
  }
  if (lo == 0.0 && hi <= 1e-300) return 0.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = (lo > 0.0 && hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (f(mid) >= y)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-15 * hi) break;
  }
  return hi;
}

/// Monotone map with either an analytic evaluator or log-log tabulated knots.
class MonotoneMap {
 public:
  struct Analytic {
    std::function<double(double)> eval;
    double sup_value = kInf;  ///< lim_{t->inf} f(t)
  };
  /// Knots (log t_i, log f_i), strictly increasing in log t and non-decreasing
  /// in log f. Interpolation is linear in log-log; below the first knot the
  /// first segment's power law continues down to f(0) = 0; above the last knot
  /// the map is extended by the last segment's power law but never exceeds
  /// `sup_value`.
  struct Tabulated {
    std::vector<double> log_t;
    std::vector<double> log_f;
    double sup_value = kInf;
  };

  MonotoneMap(Analytic a) : rep_(std::move(a)) {}
  MonotoneMap(Tabulated t) : rep_(std::move(t)) {
    const auto& tab = std::get<Tabulated>(rep_);
    if (tab.log_t.size() != tab.log_f.size() || tab.log_t.size() < 2)
      throw std::invalid_argument("MonotoneMap: need >= 2 knots");
    for (std::size_t i = 1; i < tab.log_t.size(); ++i) {
      if (!(tab.log_t[i] > tab.log_t[i - 1])) throw std::invalid_argument("MonotoneMap: knots not increasing");
      if (tab.log_f[i] < tab.log_f[i - 1]) throw std::invalid_argument("MonotoneMap: values not monotone");
    }
  }

  static MonotoneMap from_function(std::function<double(double)> f, double sup_value = kInf) {
    return MonotoneMap(Analytic{std::move(f), sup_value});
  }

  bool tabulated() const { return std::holds_alternative<Tabulated>(rep_); }
  const Tabulated& table() const { return std::get<Tabulated>(rep_); }

  double sup_value() const {
    return std::visit([](const auto& r) { return r.sup_value; }, rep_);
  }

  double operator()(double t) const {
    if (t < 0.0) throw std::domain_error("MonotoneMap: negative argument");
    if (const auto* a = std::get_if<Analytic>(&rep_)) return a->eval(t);
    if (t == 0.0) return 0.0;
    if (t == kInf) return sup_value();
    return std::exp(log_eval(std::log(t)));
  }

  /// log f(e^u) for tabulated maps.
  double log_eval(double u) const {
    if (const auto* a = std::get_if<Analytic>(&rep_)) return safe_log(a->eval(std::exp(u)));
    const auto& tab = std::get<Tabulated>(rep_);
    const auto& x = tab.log_t;
    const auto& y = tab.log_f;
    const std::size_t n = x.size();
    std::size_t i;
    if (u <= x.front())
      i = 0;
    else if (u >= x.back())
      i = n - 2;
    else
      i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), u) - x.begin()) - 1;
    const double slope = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    const double v = y[i] + slope * (u - x[i]);
    return std::min(v, safe_log(tab.sup_value));
  }

  /// Left-continuous generalized inverse inf{t : f(t) >= y}.
  double inverse(double y) const {
    if (const auto* a = std::get_if<Analytic>(&rep_)) {
      if (y > a->sup_value) return kInf;
      return generalized_inverse_of(a->eval, y);
    }
    if (y <= 0.0) return 0.0;
    if (y >= sup_value()) return kInf;
    return std::exp(log_inverse(std::log(y)));
  }

  /// log of the inverse at level e^v, for tabulated maps.
  double log_inverse(double v) const {
    if (std::holds_alternative<Analytic>(rep_)) return safe_log(inverse(std::exp(v)));
    const auto& tab = std::get<Tabulated>(rep_);
    if (v >= safe_log(tab.sup_value)) return kInf;
    const auto& x = tab.log_t;
    const auto& y = tab.log_f;
    const std::size_t n = x.size();
    std::size_t i;
    if (v <= y.front())
      i = 0;
    else if (v > y.back())
      i = n - 2;
    else
      i = static_cast<std::size_t>(std::lower_bound(y.begin(), y.end(), v) - y.begin()) - 1;
    // Skip flat segments: the left-continuous inverse picks the left end of a
    // plateau.
    while (i + 1 < n - 1 && y[i + 1] == y[i] && v > y[i]) ++i;
    const double dy = y[i + 1] - y[i];
    if (dy == 0.0) return x[i];
    return x[i] + (v - y[i]) * (x[i + 1] - x[i]) / dy;
  }

 private:
  std::variant<Analytic, Tabulated> rep_;
};

/// Free-function spelling of MonotoneMap::inverse.
inline double generalized_inverse(const MonotoneMap& f, double y) { return f.inverse(y); }

}  // namespace orlicz
