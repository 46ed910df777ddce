#pragma once

// Gagliardo modular, fractional seminorm, difference-quotient modular and
// mollification.
//
// On a line grid
//   J(u, lambda) = int int A(|u(x) - u(y)| / (lambda |x - y|^sigma)) dx dy / |x - y|
//                = 2 int_0^inf dh/h int A(|u(x + h) - u(x)| / (lambda h^sigma)) dx
// is reduced once to weighted samples (v_k, w_k) with
// J(u, lambda) = sum_k w_k A(v_k / lambda), so a bisection in lambda only
// re-evaluates A. The h-range is split at delta (one grid cell by default)
// and at the support length L:
//   h < delta       u(x + h) - u(x) is taken as slope * h on each cell;
//   delta <= h <= L the difference is linear between the merged breakpoints
//                   {x_i} and {x_i - h} and each piece gets a Gauss rule;
//   h > L           the translates are disjoint and the inner integral is
//                   twice the integral of A(|u| / (lambda h^sigma)).
// Both infinite h-ranges are cut where convexity bounds the remainder by
// e^{-log_tail} times the retained part.
//
// Outside its grid u is extended by its end value; both end values must
// agree. Radial profiles in R^n go through Monte Carlo only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/sampled.hpp"
#include "orlicz/space.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct TensorConfig {
  /// Gauss nodes per unit of log h on [delta, L].
  int resolution = 16;
  /// Near-diagonal split radius; unset means the smallest grid cell.
  std::optional<double> split_radius;
  /// Cut of the infinite h-ranges, as a log of the relative remainder.
  double log_tail = 36.0;
  /// Samples whose values agree to this relative width are merged.
  double merge_width = 1e-3;
};

struct MonteCarloConfig {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0x5EED;
  /// Draws per independently seeded block.
  std::size_t block = 1u << 15;
};

struct ModularConfig {
  TensorConfig tensor;
  MonteCarloConfig montecarlo;
  unsigned jobs = 1;

  void check() const {
    if (tensor.resolution < 16) throw std::invalid_argument("ModularConfig: resolution must be >= 16");
    if (tensor.split_radius && !(*tensor.split_radius > 0.0))
      throw std::invalid_argument("ModularConfig: split radius must be positive");
    if (montecarlo.samples < 2 || montecarlo.block == 0)
      throw std::invalid_argument("ModularConfig: need >= 2 Monte Carlo samples");
  }
};

enum class ModularMethod { tensor, montecarlo };
inline const char* to_string(ModularMethod m) { return m == ModularMethod::tensor ? "tensor" : "montecarlo"; }

/// J(u, lambda) = sum_k w_k A(v_k / lambda).
struct ModularSamples {
  std::vector<Cell> cells;
  ModularMethod method = ModularMethod::tensor;

  bool vanishes() const {
    return std::all_of(cells.begin(), cells.end(), [](const Cell& c) { return c.value == 0.0 || c.weight == 0.0; });
  }
  double log_modular(const YoungFunction& a, double lambda) const { return log_cell_modular(a, cells, lambda); }
  double modular(const YoungFunction& a, double lambda) const { return std::exp(log_modular(a, lambda)); }

  /// Merges samples whose log values share a bin of width `width`; the bin
  /// keeps the weighted mean log value.
  void merge(double width) {
    std::erase_if(cells, [](const Cell& c) { return c.value == 0.0 || c.weight == 0.0; });
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.value < b.value; });
    std::vector<Cell> out;
    double w_sum = 0.0, lw_sum = 0.0, key = kNaN;
    const auto flush = [&] {
      if (w_sum > 0.0) out.push_back({std::exp(lw_sum / w_sum), w_sum});
      w_sum = lw_sum = 0.0;
    };
    for (const auto& c : cells) {
      const double lv = std::log(c.value);
      const double k = std::floor(lv / width);
      if (k != key) {
        flush();
        key = k;
      }
      w_sum += c.weight;
      lw_sum += c.weight * lv;
    }
    flush();
    cells = std::move(out);
  }

  void append(const std::vector<Cell>& more) { cells.insert(cells.end(), more.begin(), more.end()); }

 private:
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
};

struct ModularEstimate {
  double value = 0.0;
  double std_error = 0.0;
  ModularMethod method = ModularMethod::montecarlo;
};

/// Monte Carlo draws: the k-th draw estimates J(u, lambda) by
/// N w_k A(v_k / lambda).
struct MonteCarloSamples {
  std::vector<Cell> draws;

  ModularEstimate estimate(const YoungFunction& a, double lambda) const {
    const double n = static_cast<double>(draws.size());
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& d : draws) {
      const double e = d.value == 0.0 ? 0.0 : n * d.weight * a(d.value / lambda);
      sum += e;
      sum_sq += e * e;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), ModularMethod::montecarlo};
  }

  ModularSamples merged(double width) const {
    ModularSamples s{draws, ModularMethod::montecarlo};
    s.merge(width);
    return s;
  }
};

namespace detail {

struct NodeWeight {
  double node;
  double weight;
};

/// Gauss-Legendre nodes on [a, b], 8 per panel, `per_unit` nodes per unit length.
inline std::vector<NodeWeight> panel_rule(double a, double b, double per_unit) {
  std::vector<NodeWeight> out;
  if (!(b > a)) return out;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) * per_unit / 8.0)));
  for (int p = 0; p < panels; ++p) {
    const quad::GaussRule<8> rule(a + (b - a) * p / panels, a + (b - a) * (p + 1) / panels);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) out.push_back({rule.nodes[i], rule.weights[i]});
  }
  return out;
}

/// Piecewise linear profile, 0 outside its nodes.
struct LinearProfile {
  std::vector<double> x;
  std::vector<double> v;

  double operator()(double y) const {
    if (!(y > x.front()) || !(y < x.back())) return y == x.front() ? v.front() : (y == x.back() ? v.back() : 0.0);
    const std::size_t i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), y) - x.begin()) - 1;
    const double t = (y - x[i]) / (x[i + 1] - x[i]);
    return (1.0 - t) * v[i] + t * v[i + 1];
  }
  double slope(std::size_t i) const { return (v[i + 1] - v[i]) / (x[i + 1] - x[i]); }
  double support() const { return x.back() - x.front(); }
  double min_cell() const {
    double m = kInf;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) m = std::min(m, x[i + 1] - x[i]);
    return m;
  }
};

/// u minus its end value, which must be common to both ends.
inline LinearProfile centred_profile(const SampledFunction& u, const char* who) {
  if (u.shape() != Shape::linear) throw std::invalid_argument(std::string(who) + ": needs a linear (continuous) sample");
  const auto& v = u.values();
  const double c = v.back();
  if (u.domain() == Domain::grid1d && std::abs(v.front() - c) > 1e-12 * std::max(1.0, u.sup_abs()))
    throw std::domain_error(std::string(who) + ": end values differ, so the function does not settle outside its grid");
  LinearProfile p{u.grid(), v};
  for (double& x : p.v) x -= c;
  p.v.back() = 0.0;
  if (u.domain() == Domain::grid1d) p.v.front() = 0.0;
  return p;
}

inline double split_radius(const LinearProfile& p, const TensorConfig& cfg) {
  return cfg.split_radius ? *cfg.split_radius : p.min_cell();
}

/// Sorted union of x and x - h, clipped to [lo, hi].
inline std::vector<double> merged_breakpoints(const std::vector<double>& x, double h, double lo, double hi) {
  std::vector<double> out;
  out.reserve(2 * x.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < x.size()) {
    double y;
    if (j >= x.size() || (i < x.size() && x[i] <= x[j] - h))
      y = x[i++];
    else
      y = x[j++] - h;
    if (y < lo || y > hi) continue;
    if (out.empty() || y > out.back()) out.push_back(y);
  }
  return out;
}

/// Gauss-3 samples of |d(y)| on [p, q] where d is linear with d(p) = dp, d(q) = dq.
inline void linear_piece(double p, double q, double dp, double dq, double scale, double weight,
                         std::vector<Cell>& out) {
  if (dp == 0.0 && dq == 0.0) return;
  const auto emit = [&](double a, double b, double da, double db) {
    const quad::GaussRule<3> rule(a, b);
    for (std::size_t k = 0; k < 3; ++k) {
      const double t = (rule.nodes[k] - a) / (b - a);
      const double d = std::abs((1.0 - t) * da + t * db);
      if (d > 0.0) out.push_back({d * scale, weight * rule.weights[k]});
    }
  };
  if ((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0)) {
    const double r = p + (q - p) * dp / (dp - dq);
    emit(p, r, dp, 0.0);
    emit(r, q, 0.0, dq);
  } else {
    emit(p, q, dp, dq);
  }
}

/// Tensor samples for a line profile; `sym` is 2 for the double integral
/// and 1 for the one-sided difference-quotient form.
inline ModularSamples line_tensor_samples(const LinearProfile& f, double sigma, double sym, const ModularConfig& cfg) {
  const double delta = split_radius(f, cfg.tensor);
  const double len = f.support();
  if (!(delta < len)) throw std::invalid_argument("gagliardo_modular: split radius must be below the support length");
  const double ld = std::log(delta), ll = std::log(len);
  const std::size_t cells = f.x.size() - 1;

  ModularSamples out;
  // h < delta: slope * h.
  const auto diag = panel_rule(ld - cfg.tensor.log_tail / (1.0 - sigma), ld, 4.0);
  for (std::size_t i = 0; i < cells; ++i) {
    const double s = std::abs(f.slope(i));
    if (s == 0.0) continue;
    const double width = f.x[i + 1] - f.x[i];
    for (const auto& [t, w] : diag) out.cells.push_back({s * std::exp((1.0 - sigma) * t), sym * w * width});
  }
  // h > L: two disjoint copies.
  std::vector<Cell> profile;
  for (std::size_t i = 0; i < cells; ++i) {
    const quad::GaussRule<3> rule(f.x[i], f.x[i + 1]);
    for (std::size_t k = 0; k < 3; ++k) {
      const double v = std::abs(f(rule.nodes[k]));
      if (v > 0.0) profile.push_back({v, rule.weights[k]});
    }
  }
  for (const auto& [t, w] : panel_rule(ll, ll + cfg.tensor.log_tail / sigma, 4.0)) {
    const double scale = std::exp(-sigma * t);
    for (const auto& c : profile) out.cells.push_back({c.value * scale, 2.0 * sym * w * c.weight});
  }
  // delta <= h <= L: exact linear differences.
  const auto mid = panel_rule(ld, ll, cfg.tensor.resolution);
  std::vector<std::vector<Cell>> parts(mid.size());
  parallel_for(mid.size(), cfg.jobs, [&](std::size_t k) {
    const double h = std::exp(mid[k].node);
    const double scale = std::exp(-sigma * mid[k].node);
    const auto bp = merged_breakpoints(f.x, h, f.x.front() - h, f.x.back());
    auto& part = parts[k];
    double prev = f(bp[0] + h) - f(bp[0]);
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      const double next = f(bp[i + 1] + h) - f(bp[i + 1]);
      linear_piece(bp[i], bp[i + 1], prev, next, scale, sym * mid[k].weight, part);
      prev = next;
    }
    ModularSamples tmp{std::move(part)};
    tmp.merge(cfg.tensor.merge_width);
    part = std::move(tmp.cells);
  });
  for (const auto& part : parts) out.append(part);
  out.merge(cfg.tensor.merge_width);
  return out;
}

inline std::mt19937_64 block_rng(std::uint64_t seed, std::size_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

/// Monte Carlo draws over blocks with pre-assigned seeds. `draw(rng)` returns
/// one Cell holding (value, weight * N).
template <class Draw>
MonteCarloSamples monte_carlo(const MonteCarloConfig& mc, unsigned jobs, Draw&& draw) {
  const std::size_t blocks = (mc.samples + mc.block - 1) / mc.block;
  std::vector<std::vector<Cell>> parts(blocks);
  parallel_for(blocks, jobs, [&](std::size_t b) {
    auto rng = block_rng(mc.seed, b);
    const std::size_t count = std::min(mc.block, mc.samples - b * mc.block);
    parts[b].reserve(count);
    for (std::size_t i = 0; i < count; ++i) parts[b].push_back(draw(rng));
  });
  MonteCarloSamples out;
  out.draws.reserve(mc.samples);
  const double n = static_cast<double>(mc.samples);
  for (auto& part : parts)
    for (auto& c : part) out.draws.push_back({c.value, c.weight / n});
  return out;
}

/// Line Monte Carlo: log h uniform, x uniform on [x_0 - h, x_m].
inline MonteCarloSamples line_monte_carlo(const LinearProfile& f, double sigma, double sym, const ModularConfig& cfg) {
  const double delta = split_radius(f, cfg.tensor);
  const double len = f.support();
  const double t_lo = std::log(delta) - cfg.tensor.log_tail / (1.0 - sigma);
  const double t_hi = std::log(len) + cfg.tensor.log_tail / sigma;
  return monte_carlo(cfg.montecarlo, cfg.jobs, [&](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double t = t_lo + (t_hi - t_lo) * unit(rng);
    const double h = std::exp(t);
    const double x = f.x.front() - h + (len + h) * unit(rng);
    const double d = std::abs(f(x + h) - f(x));
    return Cell{d * std::exp(-sigma * t), sym * (t_hi - t_lo) * (len + h)};
  });
}

inline double sphere_area(int n) { return n * unit_ball_volume(n); }

/// Uniform point in the ball of radius R in R^n.
inline std::vector<double> ball_point(std::mt19937_64& rng, int n, double radius) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> z(n);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& c : z) {
      c = g(rng);
      norm += c * c;
    }
  } while (norm == 0.0);
  const double r = radius * std::pow(unit(rng), 1.0 / n) / std::sqrt(norm);
  for (double& c : z) c *= r;
  return z;
}

inline std::vector<double> unit_direction(std::mt19937_64& rng, int n) {
  auto z = ball_point(rng, n, 1.0);
  double norm = 0.0;
  for (double c : z) norm += c * c;
  norm = std::sqrt(norm);
  if (norm == 0.0) z[0] = norm = 1.0;
  for (double& c : z) c /= norm;
  return z;
}

/// Radial Monte Carlo. With `gradient` the field is f(|z|) z / |z| (f is then
/// the derivative profile), else the scalar f(|z|). With `axis_only` the
/// direction is e_1 and the weight counts n coordinate directions.
inline MonteCarloSamples radial_monte_carlo(const LinearProfile& f, int n, double sigma, bool gradient, bool axis_only,
                                            const ModularConfig& cfg) {
  const double delta = split_radius(f, cfg.tensor);
  const double radius = f.x.back();
  const double t_lo = std::log(delta) - cfg.tensor.log_tail / (1.0 - sigma);
  const double t_hi = std::log(2.0 * radius) + cfg.tensor.log_tail / sigma;
  const double angular = axis_only ? static_cast<double>(n) : sphere_area(n);
  const auto field = [&](const std::vector<double>& z, std::vector<double>& out) {
    double r = 0.0;
    for (double c : z) r += c * c;
    r = std::sqrt(r);
    if (!gradient) {
      out.assign(1, f(r));
    } else {
      out.assign(z.size(), 0.0);
      if (r > 0.0)
        for (std::size_t i = 0; i < z.size(); ++i) out[i] = f(r) * z[i] / r;
    }
  };
  return monte_carlo(cfg.montecarlo, cfg.jobs, [&](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double t = t_lo + (t_hi - t_lo) * unit(rng);
    const double h = std::exp(t);
    const auto x = ball_point(rng, n, radius + h);
    std::vector<double> dir(n, 0.0);
    if (axis_only)
      dir[0] = 1.0;
    else
      dir = unit_direction(rng, n);
    std::vector<double> y(x);
    for (int i = 0; i < n; ++i) y[i] += h * dir[i];
    std::vector<double> fx, fy;
    field(x, fx);
    field(y, fy);
    double d = 0.0;
    for (std::size_t i = 0; i < fx.size(); ++i) d += (fy[i] - fx[i]) * (fy[i] - fx[i]);
    const double vol = unit_ball_volume(n) * std::pow(radius + h, n);
    return Cell{std::sqrt(d) * std::exp(-sigma * t), vol * angular * (t_hi - t_lo)};
  });
}

inline void check_sigma(double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::domain_error("gagliardo_modular: sigma must lie in (0, 1)");
}

}  // namespace detail

/// Derivative of a line sample by centred differences at the nodes; the
/// constant extension contributes a zero derivative, so two zero nodes are
/// added one cell outside each end.
inline SampledFunction gradient(const SampledFunction& u) {
  if (u.domain() == Domain::halfline) throw std::invalid_argument("gradient: half-line samples have no gradient here");
  const auto& x = u.grid();
  const auto& v = u.values();
  const std::size_t m = x.size();
  std::vector<double> d(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double hl = i > 0 ? x[i] - x[i - 1] : x[1] - x[0];
    const double hr = i + 1 < m ? x[i + 1] - x[i] : x[m - 1] - x[m - 2];
    const double vl = i > 0 ? v[i - 1] : (u.domain() == Domain::radial && x[0] == 0.0 ? v[1] : v[0]);
    const double vr = i + 1 < m ? v[i + 1] : v[m - 1];
    // Three-point formula on a non-uniform stencil.
    d[i] = (hl * hl * (vr - v[i]) + hr * hr * (v[i] - vl)) / (hl * hr * (hl + hr));
  }
  if (u.domain() == Domain::radial) {
    d.back() = 0.0;
    return SampledFunction::radial(u.dimension(), x, d);
  }
  std::vector<double> gx{x.front() - (x[1] - x[0])}, gv{0.0};
  gx.insert(gx.end(), x.begin(), x.end());
  gv.insert(gv.end(), d.begin(), d.end());
  gx.push_back(x.back() + (x[m - 1] - x[m - 2]));
  gv.push_back(0.0);
  return SampledFunction::grid1d(std::move(gx), std::move(gv));
}

/// Sample set for J(u, .) of order sigma: tensor quadrature on line grids,
/// merged Monte Carlo draws for radial profiles.
inline ModularSamples gagliardo_samples(const SampledFunction& u, double sigma, const ModularConfig& cfg = {},
                                        bool gradient_field = false) {
  detail::check_sigma(sigma);
  cfg.check();
  const auto f = detail::centred_profile(u, "gagliardo_modular");
  if (u.domain() == Domain::grid1d) return detail::line_tensor_samples(f, sigma, 2.0, cfg);
  if (u.domain() == Domain::radial)
    return detail::radial_monte_carlo(f, u.dimension(), sigma, gradient_field, false, cfg).merged(cfg.tensor.merge_width);
  throw std::invalid_argument("gagliardo_modular: needs a line grid or a radial profile");
}

/// Independent Monte Carlo draws for cross-checks.
inline MonteCarloSamples gagliardo_draws(const SampledFunction& u, double sigma, const ModularConfig& cfg = {},
                                         bool gradient_field = false) {
  detail::check_sigma(sigma);
  cfg.check();
  const auto f = detail::centred_profile(u, "gagliardo_modular");
  if (u.domain() == Domain::grid1d) return detail::line_monte_carlo(f, sigma, 2.0, cfg);
  if (u.domain() == Domain::radial)
    return detail::radial_monte_carlo(f, u.dimension(), sigma, gradient_field, false, cfg);
  throw std::invalid_argument("gagliardo_modular: needs a line grid or a radial profile");
}

inline double gagliardo_modular(const SampledFunction& u, double sigma, const YoungFunction& a, double lambda,
                                const ModularConfig& cfg = {}) {
  if (!(lambda > 0.0)) throw std::invalid_argument("gagliardo_modular: lambda must be positive");
  return gagliardo_samples(u, sigma, cfg).modular(a, lambda);
}

inline ModularEstimate gagliardo_modular_mc(const SampledFunction& u, double sigma, const YoungFunction& a,
                                            double lambda, const ModularConfig& cfg = {}) {
  return gagliardo_draws(u, sigma, cfg).estimate(a, lambda);
}

/// The function whose order-{s} modular defines the seminorm: u for [s] = 0,
/// its derivative for [s] = 1.
inline SampledFunction seminorm_field(const SampledFunction& u, const SpaceParams& p) {
  if (p.int_part() == 0) return u;
  if (p.int_part() == 1) return gradient(u);
  throw std::invalid_argument("fractional_seminorm: only [s] in {0, 1} is supported");
}

inline ModularSamples seminorm_samples(const SampledFunction& u, const SpaceParams& p, const ModularConfig& cfg = {}) {
  if (u.domain() == Domain::radial && u.dimension() != p.n())
    throw std::invalid_argument("fractional_seminorm: profile dimension differs from n");
  if (u.domain() != Domain::radial && p.n() != 1)
    throw std::invalid_argument("fractional_seminorm: line grids need n = 1");
  return gagliardo_samples(seminorm_field(u, p), p.frac_part(), cfg, p.int_part() == 1 && u.domain() == Domain::radial);
}

/// inf{lambda : J(grad^{[s]} u / lambda) <= 1} from precomputed samples.
inline double seminorm_from_samples(const ModularSamples& s, const YoungFunction& a) {
  if (s.vanishes()) return 0.0;
  return gauge([&](double l) { return s.log_modular(a, l); });
}

inline double fractional_seminorm(const SampledFunction& u, const SpaceParams& p, const YoungFunction& a,
                                  const ModularConfig& cfg = {}) {
  return seminorm_from_samples(seminorm_samples(u, p, cfg), a);
}

struct SeminormReport {
  double modular_at_one = 0.0;
  double seminorm = 0.0;
  ModularMethod method = ModularMethod::tensor;
  /// Tensor: change of the seminorm at half resolution. Monte Carlo: the
  /// standard error of the modular at lambda = 1.
  double error_estimate = 0.0;
};

inline SeminormReport fractional_seminorm_report(const SampledFunction& u, const SpaceParams& p, const YoungFunction& a,
                                                 const ModularConfig& cfg = {}) {
  const auto s = seminorm_samples(u, p, cfg);
  SeminormReport r{s.modular(a, 1.0), seminorm_from_samples(s, a), s.method, 0.0};
  if (s.method == ModularMethod::tensor) {
    ModularConfig coarse = cfg;
    coarse.tensor.resolution = std::max(16, cfg.tensor.resolution / 2);
    if (coarse.tensor.resolution == cfg.tensor.resolution) coarse.tensor.resolution = 2 * cfg.tensor.resolution;
    r.error_estimate = std::abs(fractional_seminorm(u, p, a, coarse) - r.seminorm);
  } else {
    const auto f = seminorm_field(u, p);
    r.error_estimate = gagliardo_draws(f, p.frac_part(), cfg, p.int_part() == 1).estimate(a, 1.0).std_error;
  }
  return r;
}

/// sum_i int_0^inf int A(c |u(x + h e_i) - u(x)| / h^sigma) dx dh / h.
inline double difference_quotient_modular(const SampledFunction& u, double sigma, const YoungFunction& a, double c,
                                          const ModularConfig& cfg = {}) {
  detail::check_sigma(sigma);
  cfg.check();
  if (!(c > 0.0)) throw std::invalid_argument("difference_quotient_modular: c must be positive");
  const auto f = detail::centred_profile(u, "difference_quotient_modular");
  if (u.domain() == Domain::grid1d) return detail::line_tensor_samples(f, sigma, 1.0, cfg).modular(a, 1.0 / c);
  if (u.domain() == Domain::radial)
    return detail::radial_monte_carlo(f, u.dimension(), sigma, false, true, cfg).estimate(a, 1.0 / c).value;
  throw std::invalid_argument("difference_quotient_modular: needs a line grid or a radial profile");
}

/// The bump exp(-1 / (1 - |z|^2)) on the unit ball, with cumulative moment
/// tables int_{-1}^z rho and int_{-1}^z zeta rho on the line.
class Bump {
 public:
  static double profile(double r2) { return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0; }

  static const Bump& line() {
    static const Bump b;
    return b;
  }

  /// int_{-1}^1 rho.
  double mass() const { return p0_.back(); }
  double moment0(double z) const { return lookup(p0_, z, [](double t) { return profile(t * t); }); }
  double moment1(double z) const { return lookup(p1_, z, [](double t) { return t * profile(t * t); }); }

 private:
  static constexpr int kCells = 4096;
  std::vector<double> p0_, p1_;

  Bump() {
    p0_.assign(kCells + 1, 0.0);
    p1_.assign(kCells + 1, 0.0);
    for (int i = 0; i < kCells; ++i) {
      const quad::GaussRule<8> rule(knot(i), knot(i + 1));
      double a = 0.0, b = 0.0;
      for (std::size_t k = 0; k < 8; ++k) {
        const double z = rule.nodes[k], w = rule.weights[k] * profile(z * z);
        a += w;
        b += w * z;
      }
      p0_[i + 1] = p0_[i] + a;
      p1_[i + 1] = p1_[i] + b;
    }
  }

  static double knot(int i) { return -1.0 + 2.0 * i / kCells; }

  // Cubic Hermite with the exact derivative.
  template <class D>
  static double lookup(const std::vector<double>& table, double z, D&& deriv) {
    if (z <= -1.0) return 0.0;
    if (z >= 1.0) return table.back();
    const double pos = (z + 1.0) * kCells / 2.0;
    const int i = std::min(kCells - 1, static_cast<int>(pos));
    const double h = 2.0 / kCells, t = pos - i;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * table[i] + (t3 - 2 * t2 + t) * h * deriv(knot(i)) + (-2 * t3 + 3 * t2) * table[i + 1] +
           (t3 - t2) * h * deriv(knot(i + 1));
  }
};

namespace detail {

inline std::vector<double> extended_grid(const std::vector<double>& x, double eps, bool left, int extra = 32) {
  std::vector<double> g;
  if (left)
    for (int k = extra; k >= 1; --k) g.push_back(x.front() - eps * k / extra);
  g.insert(g.end(), x.begin(), x.end());
  for (int k = 1; k <= extra; ++k) g.push_back(x.back() + eps * k / extra);
  return g;
}

// rho_eps * u at one point of the line, exact on every linear piece of u.
inline double mollify_line_at(const SampledFunction& u, double c, double x, double eps) {
  const auto& b = Bump::line();
  const auto& g = u.grid();
  const auto& v = u.values();
  std::size_t lo = static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), x - eps) - g.begin());
  if (lo > 0) --lo;
  double acc = 0.0;
  for (std::size_t j = lo; j + 1 < g.size() && g[j] < x + eps; ++j) {
    // On z in [(x - g_{j+1}) / eps, (x - g_j) / eps]: u(x - eps z) = alpha + beta z.
    const double za = std::max(-1.0, (x - g[j + 1]) / eps), zb = std::min(1.0, (x - g[j]) / eps);
    if (!(zb > za)) continue;
    double alpha, beta;
    if (u.shape() == Shape::step) {
      alpha = v[j] - c;
      beta = 0.0;
    } else {
      const double s = (v[j + 1] - v[j]) / (g[j + 1] - g[j]);
      alpha = v[j] - c + s * (x - g[j]);
      beta = -s * eps;
    }
    acc += alpha * (b.moment0(zb) - b.moment0(za)) + beta * (b.moment1(zb) - b.moment1(za));
  }
  return c + acc / b.mass();
}

// rho_eps * u for a radial profile in R^n, n >= 2, by a (rho, theta) product rule.
inline std::vector<double> mollify_radial(const SampledFunction& u, const std::vector<double>& grid, double eps) {
  const int n = u.dimension();
  const double c = u.values().back();
  const quad::GaussRule<48> radial(0.0, 1.0), polar(0.0, std::numbers::pi);
  std::vector<double> out;
  for (double r : grid) {
    double acc = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < 48; ++i) {
      const double rho = radial.nodes[i];
      const double wr = radial.weights[i] * std::pow(rho, n - 1) * Bump::profile(rho * rho);
      for (std::size_t k = 0; k < 48; ++k) {
        const double th = polar.nodes[k];
        const double w = wr * polar.weights[k] * std::pow(std::sin(th), n - 2);
        const double d = std::sqrt(std::max(0.0, r * r + eps * eps * rho * rho - 2.0 * r * eps * rho * std::cos(th)));
        acc += w * (d > u.grid().back() ? 0.0 : u(d) - c);
        mass += w;
      }
    }
    out.push_back(c + acc / mass);
  }
  return out;
}

}  // namespace detail

/// rho_eps * u; the grid gains 32 nodes across each new eps-wide margin.
inline SampledFunction mollify(const SampledFunction& u, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("mollify: eps must be positive");
  if (u.domain() == Domain::halfline) throw std::invalid_argument("mollify: needs a line grid or a radial profile");
  if (u.domain() == Domain::radial && u.dimension() >= 2) {
    auto grid = detail::extended_grid(u.grid(), eps, false);
    auto values = detail::mollify_radial(u, grid, eps);
    return SampledFunction::radial(u.dimension(), std::move(grid), std::move(values));
  }
  const double c = u.shape() == Shape::step ? 0.0 : u.values().back();
  if (u.domain() == Domain::grid1d && u.shape() == Shape::linear &&
      std::abs(u.values().front() - c) > 1e-12 * std::max(1.0, u.sup_abs()))
    throw std::domain_error("mollify: end values differ");
  auto grid = detail::extended_grid(u.grid(), eps, u.domain() == Domain::grid1d);
  std::vector<double> values;
  values.reserve(grid.size());
  if (u.domain() == Domain::grid1d) {
    for (double x : grid) values.push_back(detail::mollify_line_at(u, c, x, eps));
    return SampledFunction::grid1d(std::move(grid), std::move(values));
  }
  // Radial in R^1 is an even function on the line.
  std::vector<double> lx, lv;
  for (std::size_t i = u.grid().size(); i-- > 0;) {
    if (u.grid()[i] == 0.0) continue;
    lx.push_back(-u.grid()[i]);
    lv.push_back(u.values()[i]);
  }
  lx.insert(lx.end(), u.grid().begin(), u.grid().end());
  lv.insert(lv.end(), u.values().begin(), u.values().end());
  const SampledFunction line = SampledFunction::grid1d(std::move(lx), std::move(lv), u.shape());
  for (double r : grid) values.push_back(detail::mollify_line_at(line, c, r, eps));
  return SampledFunction::radial(1, std::move(grid), std::move(values));
}

}  // namespace orlicz
