#pragma once

// Young functions A : [0, inf) -> [0, inf], stored as breakpoint-delimited
// pieces, and their calculus: values, densities, conjugates, generalized
// inverses, domination and the Matuszewska-Orlicz index at zero.
//
// Every evaluation has a log-space twin (log_value, log_density taking
// u = log t). The target-space constructions routinely need A at arguments
// like exp(-1e12), far outside the range of a double.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orlicz/monotone.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

class YoungFunction;

enum class LogSide { zero, infinity };

/// k t^p L(t)^alpha, where L(t) = shift + log(1/t) on the zero side and
/// L(t) = shift + log(t) on the infinity side. The shift is the smallest
/// value >= 1 for which the piece is convex and non-decreasing wherever
/// L >= shift, i.e. on (0, 1] (zero side) or [1, inf) (infinity side); it
/// does not change the behaviour up to equivalence.
struct PowerLog {
  double k = 1.0;
  double p = 1.0;
  double alpha = 0.0;
  LogSide side = LogSide::zero;
  double shift = 0.0;

  bool has_log() const { return alpha != 0.0; }

  double log_factor(double u) const { return side == LogSide::zero ? shift - u : shift + u; }

  double log_value(double u) const {
    double v = std::log(k) + p * u;
    if (has_log()) {
      const double l = log_factor(u);
      if (!(l > 0.0)) throw std::domain_error("PowerLog: argument outside the log factor's domain");
      v += alpha * std::log(l);
    }
    return v;
  }

  double log_density(double u) const { return (p - 1.0) * u + log_density_rest(u); }

  /// log a(e^u) - (p - 1) u, free of the large power term.
  double log_density_rest(double u) const {
    if (!has_log()) return std::log(k * p);
    const double l = log_factor(u);
    if (!(l > 0.0)) throw std::domain_error("PowerLog: argument outside the log factor's domain");
    const double lin = side == LogSide::zero ? p * l - alpha : p * l + alpha;
    return std::log(k) + (alpha - 1.0) * std::log(l) + safe_log(lin);
  }

  /// Smallest admissible shift (see class comment).
  static double minimal_shift(double p, double alpha, LogSide side) {
    if (alpha == 0.0) return 0.0;
    // Convexity: q2 L^2 + q1 L + q0 >= 0; monotonicity: p L -/+ alpha >= 0.
    const double q2 = p * (p - 1.0);
    const double q1 = (side == LogSide::zero ? -1.0 : 1.0) * alpha * (2.0 * p - 1.0);
    const double q0 = alpha * (alpha - 1.0);
    double c = 1.0;
    c = std::max(c, (side == LogSide::zero ? alpha : -alpha) / p);
    if (q2 > 0.0) {
      const double disc = q1 * q1 - 4.0 * q2 * q0;
      if (disc >= 0.0) c = std::max(c, (-q1 + std::sqrt(disc)) / (2.0 * q2));
    } else if (q1 > 0.0) {
      c = std::max(c, -q0 / q1);
    } else if (q1 < 0.0 || q0 < 0.0) {
      throw std::invalid_argument("PowerLog: exponents do not define a Young function near the endpoint");
    }
    return c * (1.0 + 1e-12) + 1e-12;
  }
};

/// Knot-based piece in one of two modes.
///
/// Value knots only: linear interpolation in log-log through (t_i, A(t_i)).
/// Convex as long as the log-log slopes do not decrease.
///
/// Value and density knots: the density is a power law between consecutive
/// knots and the values are its exact integrals, so a non-decreasing density
/// table gives an exactly convex piece. Below the first knot the power law
/// matching value and density there is continued.
///
/// In both modes the end segments are continued beyond the last knot.
struct Tabulated {
  std::vector<double> log_t;
  std::vector<double> log_v;
  std::vector<double> log_d;

  static Tabulated from_knots(const std::vector<std::pair<double, double>>& knots) {
    Tabulated tab;
    for (const auto& [t, v] : knots) {
      if (!(t > 0.0) || !(v > 0.0)) throw std::invalid_argument("Tabulated: knots must be positive");
      tab.log_t.push_back(std::log(t));
      tab.log_v.push_back(std::log(v));
    }
    tab.check();
    return tab;
  }

  /// Density knots (log t_i, log a_i) and the value at the first knot; the
  /// other values are integrated.
  static Tabulated from_density(std::vector<double> log_t, std::vector<double> log_d, double log_v0) {
    Tabulated tab;
    tab.log_t = std::move(log_t);
    tab.log_d = std::move(log_d);
    if (tab.log_t.size() != tab.log_d.size() || tab.log_t.size() < 2)
      throw std::invalid_argument("Tabulated: need >= 2 density knots");
    tab.log_v.push_back(log_v0);
    for (std::size_t i = 0; i + 1 < tab.log_t.size(); ++i)
      tab.log_v.push_back(log_add(tab.log_v.back(), tab.log_segment(i, tab.log_t[i + 1])));
    tab.check();
    return tab;
  }

  bool has_density() const { return !log_d.empty(); }

  void check() const {
    if (log_t.size() != log_v.size() || log_t.size() < 2)
      throw std::invalid_argument("Tabulated: need >= 2 knots");
    if (has_density() && log_d.size() != log_t.size())
      throw std::invalid_argument("Tabulated: density knots do not match value knots");
    for (std::size_t i = 1; i < log_t.size(); ++i) {
      if (!(log_t[i] > log_t[i - 1])) throw std::invalid_argument("Tabulated: knots must increase");
      if (log_v[i] < log_v[i - 1]) throw std::invalid_argument("Tabulated: values must not decrease");
    }
  }

  /// Segment used for arguments in (t_i, t_{i+1}] (left slopes at knots).
  std::size_t segment(double u) const {
    if (u <= log_t[1]) return 0;
    if (u > log_t[log_t.size() - 2]) return log_t.size() - 2;
    return static_cast<std::size_t>(std::lower_bound(log_t.begin(), log_t.end(), u) - log_t.begin()) - 1;
  }
  /// Log-log slope of the values (value mode) or of the density (density mode).
  double slope(std::size_t i) const {
    const auto& y = has_density() ? log_d : log_v;
    return (y[i + 1] - y[i]) / (log_t[i + 1] - log_t[i]);
  }

  double log_value(double u) const {
    const auto i = segment(u);
    if (!has_density()) return log_v[i] + slope(i) * (u - log_t[i]);
    if (u < log_t[0]) return log_v[0] + head_power() * (u - log_t[0]);
    return log_add(log_v[i], log_segment(i, u));
  }
  double log_density(double u) const {
    const auto i = segment(u);
    if (!has_density()) return log_value(u) + safe_log(slope(i)) - u;
    if (u < log_t[0]) return log_d[0] + (head_power() - 1.0) * (u - log_t[0]);
    return log_d[i] + slope(i) * (u - log_t[i]);
  }

  /// lim a(t) as t -> inf along the continued last segment.
  double density_limit() const {
    const double m = slope(log_t.size() - 2);
    if (has_density()) return m > 1e-12 ? kInf : std::exp(log_d.back());
    if (m > 1.0 + 1e-12) return kInf;
    return std::exp(log_v.back() - log_t.back()) * m;
  }

  void rescale(double log_factor) {
    for (double& v : log_v) v += log_factor;
    for (double& d : log_d) d += log_factor;
  }

 private:
  /// log of the integral of the density segment i from t_i to e^u (u >= t_i).
  double log_segment(std::size_t i, double u) const {
    const double z = (slope(i) + 1.0) * (u - log_t[i]);
    if (!(z > 0.0)) return kNegInf;
    const double log_expm1 = z > 30.0 ? z + std::log1p(-std::exp(-z)) : std::log(std::expm1(z));
    return log_d[i] + log_t[i] + log_expm1 - std::log(slope(i) + 1.0);
  }
  /// Exponent of the power law continued below the first knot.
  double head_power() const { return std::exp(log_d[0] + log_t[0] - log_v[0]); }
};

struct ZeroForm {};

/// The Young conjugate of `base`, evaluated through the Legendre identity
/// A~(t) = t * tau - A(tau) with tau = a^{-1}(t).
struct ConjugateForm {
  std::shared_ptr<const YoungFunction> base;
};

using PieceForm = std::variant<ZeroForm, PowerLog, Tabulated, ConjugateForm>;

struct Piece {
  double from = 0.0;
  PieceForm form;
};

struct Validation {
  bool ok = true;
  std::string message;
};

class YoungFunction {
 public:
  YoungFunction() = default;

  /// Pieces must start at 0 with increasing breakpoints. Right pieces are
  /// rescaled so that the function is continuous at every breakpoint.
  explicit YoungFunction(std::vector<Piece> pieces, double inf_threshold = kInf)
      : pieces_(std::move(pieces)), threshold_(inf_threshold) {
    if (!(threshold_ > 0.0)) throw std::invalid_argument("YoungFunction: infinity threshold must be positive");
    if (!pieces_.empty() && pieces_.front().from != 0.0)
      throw std::invalid_argument("YoungFunction: first piece must start at 0");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (i > 0 && !(pieces_[i].from > pieces_[i - 1].from))
        throw std::invalid_argument("YoungFunction: breakpoints must increase");
      if (auto* pl = std::get_if<PowerLog>(&pieces_[i].form)) {
        if (!(pl->k > 0.0) || !(pl->p >= 1.0)) throw std::invalid_argument("PowerLog: need k > 0 and p >= 1");
        const double minimal = PowerLog::minimal_shift(pl->p, pl->alpha, pl->side);
        if (pl->has_log()) {
          if (pl->shift < minimal) pl->shift = minimal;
          const double end = i + 1 < pieces_.size() ? pieces_[i + 1].from : kInf;
          if (pl->side == LogSide::zero && end > 1.0)
            throw std::invalid_argument("PowerLog: a log(1/t) piece must end at or before t = 1");
          if (pl->side == LogSide::infinity && pieces_[i].from < 1.0)
            throw std::invalid_argument("PowerLog: a log(t) piece must start at or after t = 1");
        }
      }
      if (i > 0) splice(i);
    }
  }

  static YoungFunction power(double p, double k = 1.0) {
    return YoungFunction({Piece{0.0, PowerLog{k, p, 0.0, LogSide::zero, 0.0}}});
  }

  /// Near zero `low` on [0, 1], near infinity `high` on [1, inf), spliced
  /// continuously at t = 1.
  static YoungFunction spliced(PowerLog low, PowerLog high) {
    low.side = LogSide::zero;
    high.side = LogSide::infinity;
    return YoungFunction({Piece{0.0, low}, Piece{1.0, high}});
  }

  /// 0 on [0, threshold], +inf beyond: the L-infinity Young function.
  static YoungFunction linf(double threshold = 1.0) { return YoungFunction({}, threshold); }

  const std::vector<Piece>& pieces() const { return pieces_; }
  double inf_threshold() const { return threshold_; }
  bool finite_valued() const { return threshold_ == kInf; }

  /// A(t). Negative arguments are a domain error.
  ExtReal operator()(double t) const {
    if (t < 0.0 || std::isnan(t)) throw std::domain_error("YoungFunction: negative argument");
    if (t > threshold_) return kInf;
    if (t == 0.0) return 0.0;
    return eval_piece(piece_index(t), t);
  }
  ExtReal value(double t) const { return (*this)(t); }

  /// log A(e^u); -inf where A vanishes, +inf beyond the threshold.
  double log_value(double u) const {
    if (u == kNegInf) return kNegInf;
    if (u > safe_log(threshold_)) return kInf;
    const double t = std::exp(u);
    const std::size_t i = piece_index_log(u, t);
    return log_eval_piece(i, u, t);
  }

  /// a(t), the left-continuous density. Beyond the threshold a domain error.
  ExtReal density(double t) const {
    if (t < 0.0 || std::isnan(t)) throw std::domain_error("YoungFunction: negative argument");
    if (t > threshold_) throw std::domain_error("YoungFunction: density beyond the infinity threshold");
    if (t == 0.0) return 0.0;
    return std::exp(log_density(std::log(t)));
  }

  double log_density(double u) const {
    if (u > safe_log(threshold_)) return kInf;
    const double t = std::exp(u);
    const std::size_t i = piece_index_log(u, t);
    return log_density_piece(i, u, t);
  }

  /// Density extended by +inf beyond the threshold (as a map on [0, inf)).
  double density_or_inf(double t) const {
    if (t > threshold_) return kInf;
    return density(t);
  }

  /// lim a(t) at the right end of the finite domain (inf when a explodes).
  double density_sup() const {
    if (threshold_ < kInf) return kInf;
    if (pieces_.empty()) return 0.0;
    const Piece& last = pieces_.back();
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ZeroForm>) {
            return 0.0;
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            if (f.p > 1.0) return kInf;
            if (f.alpha == 0.0) return f.k;
            return f.side == LogSide::infinity && f.alpha > 0.0 ? kInf : 0.0;
          } else if constexpr (std::is_same_v<T, Tabulated>) {
            return f.density_limit();
          } else {
            return f.base->inf_threshold();
          }
        },
        last.form);
  }

  /// The density as a monotone map (with +inf beyond the threshold).
  MonotoneMap density_map() const {
    auto self = std::make_shared<const YoungFunction>(*this);
    return MonotoneMap::from_function([self](double t) { return self->density_or_inf(t); }, kInf);
  }

  /// Left-continuous inverse of A itself.
  double inverse(double y) const {
    return generalized_inverse_of([this](double t) { return (*this)(t); }, y);
  }

  /// Samples monotonicity, A(0) = 0 and midpoint convexity at log-spaced
  /// triples, and the log factors' domains.
  Validation validate(double lo = 1e-8, double hi = 1e8, std::size_t samples = 100) const {
    std::ostringstream msg;
    auto grid = log_space(lo, std::min(hi, threshold_), samples);
    double prev = 0.0;
    for (double t : grid) {
      double v;
      try {
        v = (*this)(t);
      } catch (const std::exception& e) {
        return {false, std::string("evaluation failed: ") + e.what()};
      }
      if (std::isnan(v) || v < 0.0) {
        msg << "invalid value at t=" << t;
        return {false, msg.str()};
      }
      if (v < prev * (1.0 - 1e-12)) {
        msg << "not monotone at t=" << t;
        return {false, msg.str()};
      }
      prev = v;
    }
    for (std::size_t i = 0; i + 2 < grid.size(); ++i) {
      for (std::size_t j : {i + 1, i + 2}) {
        const double x = grid[i], y = grid[j];
        const double m = (*this)(0.5 * (x + y));
        const double avg = 0.5 * ((*this)(x) + (*this)(y));
        if (m > avg * (1.0 + 1e-9) + 1e-300) {
          msg << "convexity fails on [" << x << ", " << y << "]";
          return {false, msg.str()};
        }
      }
    }
    // Convexity through each breakpoint: left density <= right density.
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
      const double b = pieces_[i].from;
      if (b >= threshold_) break;
      const double left = std::exp(log_density_piece(i - 1, std::log(b), b));
      const double right = std::exp(log_density_piece(i, std::log(b) + 1e-12, b * (1.0 + 1e-12)));
      if (left > right * (1.0 + 1e-9)) {
        msg << "convexity fails at breakpoint t=" << b;
        return {false, msg.str()};
      }
    }
    return {};
  }

 private:
  std::vector<Piece> pieces_;
  double threshold_ = kInf;

  std::size_t piece_index(double t) const {
    std::size_t i = 0;
    while (i + 1 < pieces_.size() && pieces_[i + 1].from < t) ++i;
    return i;
  }
  std::size_t piece_index_log(double /*u*/, double t) const {
    // Very small u underflow t to 0: that is the first piece either way.
    return piece_index(t);
  }

  double eval_piece(std::size_t i, double t) const {
    if (pieces_.empty()) return 0.0;
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ZeroForm>) {
            return 0.0;
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            if (!f.has_log()) return f.k * std::pow(t, f.p);
            return std::exp(f.log_value(std::log(t)));
          } else if constexpr (std::is_same_v<T, Tabulated>) {
            return std::exp(f.log_value(std::log(t)));
          } else {
            return std::exp(log_conjugate_value(*f.base, std::log(t)));
          }
        },
        pieces_[i].form);
  }

  double log_eval_piece(std::size_t i, double u, double /*t*/) const {
    if (pieces_.empty()) return kNegInf;
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ZeroForm>) {
            return kNegInf;
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            return f.log_value(u);
          } else if constexpr (std::is_same_v<T, Tabulated>) {
            return f.log_value(u);
          } else {
            return log_conjugate_value(*f.base, u);
          }
        },
        pieces_[i].form);
  }

  double log_density_piece(std::size_t i, double u, double /*t*/) const {
    if (pieces_.empty()) return kNegInf;
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ZeroForm>) {
            return kNegInf;
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            return f.log_density(u);
          } else if constexpr (std::is_same_v<T, Tabulated>) {
            return f.log_density(u);
          } else {
            return log_density_inverse(*f.base, u);
          }
        },
        pieces_[i].form);
  }

  /// log a^{-1}(e^u) = log inf{x : a(x) >= e^u}, by bracketing bisection in
  /// log x. Inverses below e^{-1e15} are reported as 0.
  static double log_density_inverse(const YoungFunction& base, double u) {
    const double top = safe_log(base.inf_threshold());
    if (top < kInf && base.log_density(top) < u) return top;
    double hi = std::min(0.0, top), lo;
    if (base.log_density(hi) >= u) {
      lo = hi - 1.0;
      while (base.log_density(lo) >= u) {
        hi = lo;
        lo *= 2.0;
        if (lo < -1e15) return kNegInf;
      }
    } else if (top < kInf) {
      lo = hi;
      hi = top;
    } else {
      lo = hi;
      hi = 1.0;
      while (base.log_density(hi) < u) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) return kInf;
      }
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
      const double mid = 0.5 * (lo + hi);
      if (base.log_density(mid) >= u)
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  }

  /// log A~(e^u) = log(t tau - A(tau)) with tau = a^{-1}(t). The error in tau
  /// enters only to second order since tau maximises t x - A(x).
  static double log_conjugate_value(const YoungFunction& base, double u) {
    const double v = log_density_inverse(base, u);
    if (v == kInf) return kInf;
    if (v == kNegInf) return kNegInf;
    return log_sub(u + v, base.log_value(v));
  }

  /// Rescales piece i so that it continues piece i-1 continuously.
  void splice(std::size_t i) {
    const double b = pieces_[i].from;
    const double u = std::log(b);
    const double left = log_eval_piece(i - 1, u, b);
    if (left == kNegInf || left == kInf) return;
    std::visit(
        [&](auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, PowerLog>) {
            f.k *= std::exp(left - f.log_value(u));
          } else if constexpr (std::is_same_v<T, Tabulated>) {
            f.rescale(left - f.log_value(u));
          }
        },
        pieces_[i].form);
  }
};

/// The power-log piece governing e^u when it is an end piece: the first
/// piece up to the first breakpoint, the last one beyond the last breakpoint.
inline const PowerLog* end_power_log(const YoungFunction& a, double u) {
  const auto& ps = a.pieces();
  if (ps.empty() || u > safe_log(a.inf_threshold())) return nullptr;
  if (ps.size() == 1 || u <= std::log(ps[1].from)) return std::get_if<PowerLog>(&ps.front().form);
  if (u > std::log(ps.back().from)) return std::get_if<PowerLog>(&ps.back().form);
  return nullptr;
}

/// log(a(e^u)^{-q} e^{c u}), with the powers of e^u combined on power-log end
/// pieces so that very large |u| keep full accuracy.
inline double log_density_measure(const YoungFunction& a, double q, double c, double u) {
  if (const PowerLog* pl = end_power_log(a, u)) return (c - q * (pl->p - 1.0)) * u - q * pl->log_density_rest(u);
  const double ld = a.log_density(u);
  if (ld == kInf) return q > 0 ? kNegInf : kInf;
  if (ld == kNegInf) return q > 0 ? kInf : kNegInf;
  return -q * ld + c * u;
}

/// Young conjugate. Closed forms for powers, linear and L-infinity type
/// functions; otherwise a lazily evaluated Legendre transform.
inline YoungFunction conjugate(const YoungFunction& a) {
  const auto& pieces = a.pieces();
  if (pieces.empty()) {
    // 0 on [0, T], inf beyond  ->  T t.
    return YoungFunction::power(1.0, a.inf_threshold());
  }
  if (pieces.size() == 1 && a.finite_valued()) {
    if (const auto* pl = std::get_if<PowerLog>(&pieces.front().form); pl && !pl->has_log()) {
      if (pl->p == 1.0) return YoungFunction::linf(pl->k);
      const double q = pl->p / (pl->p - 1.0);
      const double k = (pl->p - 1.0) / pl->p * std::pow(pl->k * pl->p, -1.0 / (pl->p - 1.0));
      return YoungFunction::power(q, k);
    }
  }
  auto base = std::make_shared<const YoungFunction>(a);
  const double sup = a.density_sup();
  return YoungFunction({Piece{0.0, ConjugateForm{base}}}, sup);
}

/// Least-squares estimate of the Matuszewska-Orlicz index at zero.
struct IndexGrid {
  double t_hi = 1e-3;
  double t_lo = 1e-10;
  int points_per_decade = 8;
  int max_log2_lambda = 10;
};

inline double matuszewska_index_zero(const YoungFunction& a, const IndexGrid& grid = {}) {
  const int decades = static_cast<int>(std::round(std::log10(grid.t_hi / grid.t_lo)));
  const auto ts = log_space(grid.t_hi, grid.t_lo, static_cast<std::size_t>(decades * grid.points_per_decade + 1));
  if (a.log_value(std::log(grid.t_lo)) == kNegInf)
    throw std::invalid_argument("matuszewska_index_zero: A vanishes near zero");
  std::vector<double> log_lambda, inner;
  for (int m = 1; m <= grid.max_log2_lambda; ++m) {
    const double lambda = std::ldexp(1.0, m);
    std::vector<double> x, r;
    for (double t : ts) {
      if (lambda * t > grid.t_hi * 1.000001 && ts.size() > 3) continue;
      const double lu = std::log(t);
      const double num = a.log_value(lu + std::log(lambda));
      const double den = a.log_value(lu);
      if (den == kNegInf) throw std::invalid_argument("matuszewska_index_zero: A vanishes near zero");
      x.push_back(1.0 / -lu);
      r.push_back(num - den);
    }
    if (x.size() < 4) continue;
    // Extrapolate the ratio to t -> 0+ in the variable 1 / log(1/t); for
    // regularly varying A the approach is analytic in this variable.
    std::vector<double> ones(x.size(), 1.0), x2(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) x2[i] = x[i] * x[i];
    const auto beta = least_squares({ones, x, x2}, r);
    log_lambda.push_back(std::log(lambda));
    inner.push_back(beta[0]);
  }
  return linear_fit(log_lambda, inner).slope;
}

enum class Range { zero, infinity, global };

struct Domination {
  bool holds = false;
  double constant = kInf;
};

/// Does A dominate B, i.e. B(t) <= A(c t) on the sampled range, for some c in
/// the dyadic grid 2^-20 .. 2^20? Returns the smallest such c.
inline Domination dominates(const YoungFunction& a, const YoungFunction& b, Range range,
                            int points_per_decade = 8) {
  std::vector<double> ts;
  auto add = [&](double lo, double hi) {
    const int decades = static_cast<int>(std::round(std::log10(hi / lo)));
    auto g = log_space(lo, hi, static_cast<std::size_t>(decades * points_per_decade + 1));
    ts.insert(ts.end(), g.begin(), g.end());
  };
  if (range == Range::zero || range == Range::global) add(1e-10, 1e-2);
  if (range == Range::global) add(1e-2, 1e2);
  if (range == Range::infinity || range == Range::global) add(1e2, 1e10);
  std::vector<double> log_b(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) log_b[i] = b.log_value(std::log(ts[i]));
  for (int e = -20; e <= 20; ++e) {
    const double lc = e * std::log(2.0);
    bool ok = true;
    for (std::size_t i = 0; i < ts.size() && ok; ++i) {
      if (log_b[i] == kNegInf) continue;
      const double la = a.log_value(std::log(ts[i]) + lc);
      if (la == kInf) continue;
      if (log_b[i] == kInf || log_b[i] > la + 1e-12 * std::max(1.0, std::abs(la))) ok = false;
    }
    if (ok) return {true, std::ldexp(1.0, e)};
  }
  return {};
}

inline bool equivalent(const YoungFunction& a, const YoungFunction& b, Range range) {
  return dominates(a, b, range).holds && dominates(b, a, range).holds;
}

}  // namespace orlicz
