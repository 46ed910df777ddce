#pragma once

// Experiment runner: each experiment checks a set of assertions and returns a
// Report that serializes to JSON plus CSV tables. Output is deterministic for
// a fixed config and seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/gallery.hpp"
#include "orlicz/hardy.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/regime.hpp"
#include "orlicz/seminorm.hpp"
#include "orlicz/targets.hpp"
#include "orlicz/young_json.hpp"

namespace orlicz {

/// Where an expected value comes from: a stated result, an independent
/// derivation, or a definition.
enum class Provenance { theory, derived, trivial };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::theory: return "theory";
    case Provenance::derived: return "derived";
    case Provenance::trivial: return "trivial";
  }
  return "?";
}

/// Relation between measured and expected:
///   abs  |m - e| <= tol        rel  |m - e| <= tol |e|
///   le   m <= e + tol          ge   m >= e - tol
///   flag m == e (0 or 1), tol unused
enum class Relation { abs, rel, le, ge, flag };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::abs: return "abs";
    case Relation::rel: return "rel";
    case Relation::le: return "le";
    case Relation::ge: return "ge";
    case Relation::flag: return "flag";
  }
  return "?";
}

struct Assertion {
  std::string name;
  Provenance provenance = Provenance::derived;
  Relation relation = Relation::abs;
  double expected = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline bool holds(Relation r, double expected, double measured, double tol) {
  if (std::isnan(measured) || std::isnan(expected)) return false;
  switch (r) {
    case Relation::abs: return std::abs(measured - expected) <= tol;
    case Relation::rel: return std::abs(measured - expected) <= tol * std::abs(expected);
    case Relation::le: return measured <= expected + tol;
    case Relation::ge: return measured >= expected - tol;
    case Relation::flag: return measured == expected;
  }
  return false;
}

/// JSON has no infinities or NaN; they are written as strings.
inline Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::ostringstream out;
    const auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
  }
};

class Report {
 public:
  Report() = default;
  Report(std::string experiment, Json config) : experiment_(std::move(experiment)), config_(std::move(config)) {}

  const std::string& experiment() const { return experiment_; }
  const std::vector<Assertion>& assertions() const { return assertions_; }
  const std::map<std::string, Table>& tables() const { return tables_; }

  bool check(std::string name, Provenance prov, Relation rel, double expected, double measured, double tol = 0.0) {
    const bool ok = holds(rel, expected, measured, tol);
    assertions_.push_back({std::move(name), prov, rel, expected, measured, tol, ok});
    return ok;
  }
  bool check_flag(std::string name, Provenance prov, bool expected, bool measured) {
    return check(std::move(name), prov, Relation::flag, expected ? 1.0 : 0.0, measured ? 1.0 : 0.0);
  }

  void measure(const std::string& key, Json value) { measured_[key] = std::move(value); }
  void fit(const std::string& key, double value) { fitted_[key] = json_number(value); }
  void note(std::string text) { notes_.push_back(std::move(text)); }
  Table& table(const std::string& name) { return tables_[name]; }

  bool passed() const {
    return !assertions_.empty() &&
           std::all_of(assertions_.begin(), assertions_.end(), [](const Assertion& a) { return a.pass; });
  }
  std::size_t failures() const {
    return std::count_if(assertions_.begin(), assertions_.end(), [](const Assertion& a) { return !a.pass; });
  }

  Json to_json() const {
    Json list = Json::array();
    for (const auto& a : assertions_)
      list.push_back({{"name", a.name},
                      {"provenance", to_string(a.provenance)},
                      {"relation", to_string(a.relation)},
                      {"expected", json_number(a.expected)},
                      {"measured", json_number(a.measured)},
                      {"tolerance", json_number(a.tolerance)},
                      {"pass", a.pass}});
    Json out = {{"experiment", experiment_}, {"config", config_},   {"passed", passed()},
                {"assertions", list},        {"measured", measured_}, {"fitted", fitted_}};
    if (!notes_.empty()) out["notes"] = notes_;
    return out;
  }

  /// <out>/<experiment>.json and one <experiment>_<table>.csv per table.
  void write(const std::filesystem::path& out) const {
    std::filesystem::create_directories(out);
    std::ofstream(out / (experiment_ + ".json")) << to_json().dump(2) << '\n';
    for (const auto& [name, t] : tables_) std::ofstream(out / (experiment_ + "_" + name + ".csv")) << t.csv();
  }

 private:
  std::string experiment_;
  Json config_ = Json::object();
  std::vector<Assertion> assertions_;
  Json measured_ = Json::object();
  Json fitted_ = Json::object();
  std::vector<std::string> notes_;
  std::map<std::string, Table> tables_;
};

inline const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"example-targets", "boundedness", "counterexample", "embedding-norms",
                                            "mollifier"};
  return ids;
}

struct ExperimentConfig {
  std::string experiment;
  int n = 1;
  double s = 0.5;
  /// Young function as JSON; empty means the experiment's default.
  Json young;
  /// Gallery row names; empty means all rows.
  std::vector<std::string> gallery;
  std::map<std::string, double> tolerances;
  std::string out = "out";
  std::uint64_t seed = 0x5EED;
  unsigned jobs = 1;

  double tol(const std::string& key, double fallback) const {
    const auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
  SpaceParams space() const { return SpaceParams(n, s); }
  std::optional<YoungFunction> young_function() const {
    if (young.is_null()) return std::nullopt;
    return young_from_json(young);
  }

  void check() const {
    if (std::find(experiment_ids().begin(), experiment_ids().end(), experiment) == experiment_ids().end())
      throw std::invalid_argument("unknown experiment '" + experiment + "'");
    (void)space();
    for (const auto& [k, v] : tolerances)
      if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("tolerance '" + k + "' must be positive");
    if (jobs == 0) throw std::invalid_argument("jobs must be >= 1");
    if (!young.is_null()) (void)young_from_json(young);
  }

  /// Keys: experiment, n, s, young (object, or a path relative to `base`),
  /// gallery, tolerances, out, seed, jobs.
  static ExperimentConfig from_json(const Json& j, const std::filesystem::path& base = ".") {
    if (!j.is_object()) throw std::invalid_argument("experiment config: expected a JSON object");
    ExperimentConfig c;
    c.experiment = j.value("experiment", std::string());
    c.n = j.value("n", 1);
    c.s = j.value("s", c.experiment == "counterexample" ? 1.5 : 0.5);
    if (j.contains("young")) {
      const auto& y = j["young"];
      if (y.is_string()) {
        const auto path = base / y.get<std::string>();
        if (!std::filesystem::exists(path)) throw std::invalid_argument("Young function file not found: " + path.string());
        std::ifstream in(path);
        c.young = Json::parse(in);
      } else {
        c.young = y;
      }
    }
    if (j.contains("gallery")) c.gallery = j["gallery"].get<std::vector<std::string>>();
    if (j.contains("tolerances")) c.tolerances = j["tolerances"].get<std::map<std::string, double>>();
    c.out = j.value("out", c.out);
    c.seed = j.value("seed", c.seed);
    c.jobs = j.value("jobs", c.jobs);
    c.check();
    return c;
  }

  static ExperimentConfig load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path.string());
    return from_json(Json::parse(in), path.parent_path());
  }

  /// Echoed into reports; the output directory is left out so reports do not
  /// depend on where they are written.
  Json to_json() const {
    Json j = {{"experiment", experiment}, {"n", n}, {"s", s}, {"seed", seed}, {"jobs", jobs}};
    j["young"] = young;
    j["gallery"] = gallery;
    j["tolerances"] = Json(tolerances);
    return j;
  }
};

namespace detail {

inline std::vector<GalleryYoung> selected_gallery(const ExperimentConfig& cfg) {
  auto all = young_gallery();
  if (cfg.gallery.empty()) return all;
  std::vector<GalleryYoung> out;
  for (const auto& name : cfg.gallery) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const GalleryYoung& g) { return g.name == name; });
    if (it == all.end()) throw std::invalid_argument("unknown gallery row '" + name + "'");
    out.push_back(*it);
  }
  return out;
}

inline YoungFunction default_supercritical() {
  return YoungFunction::spliced(PowerLog{1.0, 1.5, 0.0}, PowerLog{1.0, 3.0, 0.0});
}

inline ModularConfig modular_config(const ExperimentConfig& cfg) {
  ModularConfig m;
  m.jobs = cfg.jobs;
  m.montecarlo.seed = cfg.seed;
  return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Example targets

namespace detail {

/// Exponent rules for a power-log Young function: admissible iff
/// 1 <= p0 < n/s, or p0 = n/s with a0 > n/s - 1; the tail converges iff
/// p > n/s, or p = n/s with a > n/s - 1.
inline RegimeTag exponent_rule(const PowerLog& low, const PowerLog& high, const SpaceParams& sp) {
  const double q = sp.critical();
  const bool admissible = (low.p >= 1.0 && low.p < q) || (low.p == q && low.alpha > q - 1.0);
  if (!admissible) return RegimeTag::inadmissible;
  const bool super = high.p > q || (high.p == q && high.alpha > q - 1.0);
  return super ? RegimeTag::supercritical : RegimeTag::subcritical;
}

/// 60 power-log pairs around n/s = 2, borderline exponents included.
inline std::vector<GalleryYoung> rule_grid(const SpaceParams& sp) {
  const double q = sp.critical();
  std::vector<GalleryYoung> out;
  for (double p0 : {0.6 * q, 0.8 * q, q, 1.5 * q})
    for (double a0 : {0.0, q - 1.0, q})
      for (auto [p, a] : std::vector<std::pair<double, double>>{
               {0.75 * q, 0.0}, {q, 0.5 * (q - 1.0)}, {q, q - 1.0}, {q, q}, {1.5 * q, 0.0}}) {
        std::ostringstream name;
        name << "p0=" << p0 << ",a0=" << a0 << ";p=" << p << ",a=" << a;
        out.push_back({name.str(), PowerLog{1.0, p0, a0}, PowerLog{1.0, p, a}});
      }
  return out;
}

/// Slope of log(-log A(t)) against log t over log-spaced t in [lo, hi].
inline double double_log_slope(const YoungFunction& a, double lo, double hi, std::size_t count = 40) {
  std::vector<double> x, y;
  for (double t : log_space(lo, hi, count)) {
    const double la = a.log_value(std::log(t));
    if (!(la < 0.0) || !std::isfinite(la)) continue;
    x.push_back(std::log(t));
    y.push_back(std::log(-la));
  }
  return linear_fit(x, y).slope;
}

/// Slope of log(B(e^u) / A(e^u)) against log(-u) over u in [u_lo, u_hi].
/// Near 0 when B and A are equivalent near zero, since a bounded ratio has no
/// trend.
inline double log_ratio_trend(const YoungFunction& b, const YoungFunction& a, double u_lo, double u_hi,
                              std::size_t count = 40) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < count; ++i) {
    const double u = -std::exp(std::log(-u_hi) + (std::log(-u_lo) - std::log(-u_hi)) * i / (count - 1));
    x.push_back(std::log(-u));
    y.push_back(b.log_value(u) - a.log_value(u));
  }
  return linear_fit(x, y).slope;
}

/// A_{n/s} for A(t) = t^p, p < n/s: with e = 1 + (1 - p) s / (n - s),
/// H(t) = (t^e / e)^{(n-s)/n} and A_{n/s}(y) = (e y^{n/(n-s)})^{p/e}.
inline double power_target_closed_form(double p, const SpaceParams& sp, double y) {
  const double n = sp.n(), s = sp.s();
  const double e = 1.0 + (1.0 - p) * s / (n - s);
  return std::pow(e * std::pow(y, n / (n - s)), p / e);
}

}  // namespace detail

/// Regime table, closed-form power target and near-zero exponents of A_{n/s}
/// and A-hat for each gallery row.
///
/// Tolerance keys: target_power (rel), target_log (abs, scaled by
/// max(1, |expected|)), closed_form (rel), exp_slope (rel), equiv_trend (abs),
/// index_margin.
inline Report run_example_targets(const ExperimentConfig& cfg) {
  Report rep("example-targets", cfg.to_json());
  const auto sp = cfg.space();
  const double n = sp.n(), s = sp.s(), q = sp.critical();
  const double tol_power = cfg.tol("target_power", 0.02), tol_log = cfg.tol("target_log", 0.05);
  const double tol_exp = cfg.tol("exp_slope", 0.05), tol_equiv = cfg.tol("equiv_trend", 0.1);
  const double margin = cfg.tol("index_margin", 0.05);
  const auto scaled = [&](double e) { return tol_log * std::max(1.0, std::abs(e)); };

  // Regime rules on the grid.
  auto& rules = rep.table("rules");
  rules.header = {"row", "expected", "classified"};
  std::size_t disagreements = 0, grid_size = 0;
  for (const auto& row : detail::rule_grid(sp)) {
    const auto expected = detail::exponent_rule(row.low, row.high, sp);
    const auto got = classify_growth(row.young(), sp).tag;
    disagreements += expected != got;
    ++grid_size;
    rules.rows.push_back({row.name, to_string(expected), to_string(got)});
  }
  rep.measure("rule_grid_size", grid_size);
  rep.check("regime rule disagreements", Provenance::theory, Relation::abs, 0.0, static_cast<double>(disagreements));

  // Closed form for a pure power below n/s.
  {
    const double p = 1.5 < q ? 1.5 : 0.5 * (1.0 + q);
    const auto a_ns = orlicz_target(YoungFunction::power(p), sp);
    double worst = 0.0;
    for (double y : log_space(1e-4, 1e-1, 31)) {
      const double exact = detail::power_target_closed_form(p, sp, y);
      worst = std::max(worst, std::abs(a_ns(y) / exact - 1.0));
    }
    rep.measure("power_closed_form_p", p);
    rep.check("power target closed form on [1e-4, 1e-1]", Provenance::derived, Relation::le, 0.0, worst,
              cfg.tol("closed_form", 0.01));
  }

  TargetGridConfig deep;
  deep.log_h_floor = -1e4;
  auto& fits = rep.table("fits");
  fits.header = {"row", "regime", "ans_power", "ans_log", "ans_double_log_slope", "hat_power", "hat_log",
                 "index_zero", "equiv_trend"};
  for (const auto& row : detail::selected_gallery(cfg)) {
    const auto a = row.young();
    const auto expected = detail::exponent_rule(row.low, row.high, sp);
    const auto regime = classify_growth(a, sp);
    rep.check_flag(row.name + ": regime " + to_string(expected), Provenance::theory, true, regime.tag == expected);
    std::vector<std::string> line{row.name, to_string(regime.tag)};
    const double p0 = row.low.p, a0 = row.low.alpha;

    if (expected == RegimeTag::inadmissible) {
      bool refused = false;
      try {
        (void)orlicz_target(a, sp);
      } catch (const std::invalid_argument&) {
        refused = true;
      }
      rep.check_flag(row.name + ": construction refused", Provenance::theory, true, refused);
      line.insert(line.end(), 7, "");
      fits.rows.push_back(line);
      continue;
    }

    const auto a_ns = orlicz_target(a, sp, deep);
    if (p0 < q) {
      const auto f = fit_power_log(a_ns, -5e3, -100.0);
      const double ep = n * p0 / (n - s * p0), el = n * a0 / (n - s * p0);
      rep.check(row.name + ": A_ns power", Provenance::theory, Relation::rel, ep, f.power, tol_power);
      rep.check(row.name + ": A_ns log exponent", Provenance::theory, Relation::abs, el, f.log_power, scaled(el));
      line.insert(line.end(), {csv_number(f.power), csv_number(f.log_power), ""});
    } else {
      const double slope = detail::double_log_slope(a_ns, 1e-6, 1e-2);
      const double es = -n / (s * (a0 + 1.0) - n);
      rep.check(row.name + ": A_ns double-log slope", Provenance::theory, Relation::rel, es, slope, tol_exp);
      line.insert(line.end(), {"", "", csv_number(slope)});
    }

    const auto hat = orlicz_lorentz_target(a, sp);
    const auto h = fit_power_log(hat, -1e5, -1e3);
    const double hp = p0 < q ? p0 : q, hl = p0 < q ? a0 : a0 - q;
    rep.check(row.name + ": A-hat power", Provenance::theory, Relation::rel, hp, h.power, tol_power);
    rep.check(row.name + ": A-hat log exponent", Provenance::theory, Relation::abs, hl, h.log_power, scaled(hl));

    const double index = matuszewska_index_zero(a);
    const double trend = detail::log_ratio_trend(hat, a, -1e5, -1e3);
    const bool index_below = index < q - margin;
    const bool equivalent = std::abs(trend) <= tol_equiv;
    rep.check_flag(row.name + ": A-hat ~ A near zero iff index below n/s", Provenance::theory, index_below, equivalent);
    line.insert(line.end(), {csv_number(h.power), csv_number(h.log_power), csv_number(index), csv_number(trend)});
    fits.rows.push_back(line);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Boundedness and the high-smoothness counterexample

namespace detail {

/// amp * u(x / N).
inline SampledFunction dilate(const SampledFunction& u, double N, double amp = 1.0) {
  auto x = u.grid();
  for (auto& t : x) t *= N;
  auto v = u.values();
  for (auto& y : v) y *= amp;
  return {u.domain(), u.dimension(), std::move(x), std::move(v), u.shape()};
}

struct NamedBump {
  std::string name;
  SampledFunction u;
};

inline std::vector<NamedBump> bump_gallery(int n) {
  if (n == 1) return {{"tent", bumps::tent()}, {"smooth_bump", bumps::smooth_bump()}, {"gaussian", bumps::gaussian()}};
  return {{"tent", bumps::radial_tent(n)}, {"smooth_bump", bumps::radial_smooth_bump(n)}};
}

/// mollify(u, eps) - u on the mollified grid, with u extended by its end
/// value outside its own grid.
inline SampledFunction mollified_error(const SampledFunction& u, double eps) {
  const auto m = mollify(u, eps);
  const double lo = u.grid().front(), hi = u.grid().back();
  std::vector<double> v;
  for (double x : m.grid()) v.push_back(m(x) - (x < lo ? u.values().front() : x > hi ? u.values().back() : u(x)));
  return {m.domain(), m.dimension(), m.grid(), std::move(v), m.shape()};
}

inline SampledFunction zero_like(const SampledFunction& u) {
  return {u.domain(), u.dimension(), u.grid(), std::vector<double>(u.values().size(), 0.0), u.shape()};
}

}  // namespace detail

/// R(u) = sup|u| / J(grad^{[s]} u)^{s/n} under u -> N^s u(. / N), which
/// leaves R unchanged for every A. Uses the configured Young function, or
/// every supercritical gallery row when none is given.
///
/// Tolerance keys: dilation (rel), amplitude (rel).
inline Report verify_boundedness(const ExperimentConfig& cfg) {
  Report rep("boundedness", cfg.to_json());
  const auto sp = cfg.space();
  std::vector<std::pair<std::string, YoungFunction>> youngs;
  if (const auto a = cfg.young_function()) {
    youngs.emplace_back("config", *a);
  } else {
    for (const auto& row : detail::selected_gallery(cfg))
      if (classify_growth(row.young(), sp).tag == RegimeTag::supercritical) youngs.emplace_back(row.name, row.young());
  }
  for (const auto& [name, a] : youngs) {
    const auto tag = classify_growth(a, sp).tag;
    if (tag != RegimeTag::supercritical)
      throw std::invalid_argument("boundedness: '" + name + "' is " + to_string(tag) +
                                  "; run the classify subcommand on it for details");
  }
  if (youngs.empty()) throw std::invalid_argument("boundedness: no supercritical Young function selected");

  const double tol_dil = cfg.tol("dilation", 0.05), tol_amp = cfg.tol("amplitude", 0.10);
  const auto mcfg = detail::modular_config(cfg);
  const std::vector<double> dilations{1.0, 2.0, 4.0, 8.0};
  const double e = sp.s() / sp.n();

  auto& table = rep.table("ratios");
  table.header = {"young", "bump", "N", "sup", "modular", "R"};
  const auto bumps = detail::bump_gallery(sp.n());

  // Modular samples do not depend on A; compute them once per dilate.
  std::vector<std::vector<ModularSamples>> samples(bumps.size());
  for (std::size_t b = 0; b < bumps.size(); ++b)
    for (double N : dilations)
      samples[b].push_back(seminorm_samples(detail::dilate(bumps[b].u, N, std::pow(N, sp.s())), sp, mcfg));

  {
    const auto zero = detail::zero_like(bumps.front().u);
    rep.check_flag("zero function skipped", Provenance::trivial, true, seminorm_samples(zero, sp, mcfg).vanishes());
  }

  double c = 0.0, worst = 0.0;
  for (const auto& [name, a] : youngs) {
    double c_one = 0.0, c_ten = 0.0;
    for (std::size_t b = 0; b < bumps.size(); ++b) {
      const auto& u = bumps[b].u;
      double r1 = 0.0;
      for (std::size_t k = 0; k < dilations.size(); ++k) {
        const double N = dilations[k];
        const double sup = std::pow(N, sp.s()) * u.sup_abs();
        const double modular = samples[b][k].modular(a, 1.0);
        const double r = sup / std::pow(modular, e);
        table.rows.push_back({name, bumps[b].name, csv_number(N), csv_number(sup), csv_number(modular), csv_number(r)});
        c = std::max(c, r);
        if (k == 0) {
          r1 = r;
          continue;
        }
        worst = std::max(worst, std::abs(r / r1 - 1.0));
        rep.check(name + ", " + bumps[b].name + ": R(N=" + csv_number(N) + ") / R(1)", Provenance::theory, Relation::rel,
                  1.0, r / r1, tol_dil);
      }
      // sup |u| / |u|_{s,A} is homogeneous of degree 0 in the amplitude.
      const double sem = seminorm_from_samples(samples[b][0], a);
      ModularSamples ten = samples[b][0];
      for (auto& cell : ten.cells) cell.value *= 10.0;
      c_one = std::max(c_one, u.sup_abs() / sem);
      c_ten = std::max(c_ten, 10.0 * u.sup_abs() / seminorm_from_samples(ten, a));
    }
    rep.check(name + ": seminorm constant, amplitude 10 vs 1", Provenance::derived, Relation::rel, c_one, c_ten, tol_amp);
  }
  rep.fit("c", c);
  rep.measure("max_dilation_deviation", worst);
  return rep;
}

/// u_j(x) = j^{s-n} xi(x / j) for a plateau xi: the order-{s} modular of u_j'
/// with A(t) = t does not depend on j while int_0^1 u_j* grows like j^{s-n}.
///
/// Tolerance keys: modular (rel).
inline Report counterexample_high_smoothness(const ExperimentConfig& cfg) {
  Report rep("counterexample", cfg.to_json());
  const auto sp = cfg.space();
  if (!(sp.s() > sp.n())) throw std::invalid_argument("counterexample: needs s > n");
  if (sp.n() != 1 || sp.int_part() != 1) throw std::invalid_argument("counterexample: needs n = 1 and 1 < s < 2");
  const auto a = cfg.young_function().value_or(YoungFunction::power(1.0));
  const auto mcfg = detail::modular_config(cfg);
  const double tol = cfg.tol("modular", 0.2);
  const auto xi = bumps::plateau();

  auto& table = rep.table("scaling");
  table.header = {"j", "modular", "l1_plus_linf", "l1_plus_linf_over_j_power"};
  double m1 = 0.0;
  for (int j = 1; j <= 32; j *= 2) {
    const double power = std::pow(j, sp.s() - sp.n());
    const auto u = detail::dilate(xi, j, power);
    const double m = seminorm_samples(u, sp, mcfg).modular(a, 1.0);
    const double norm = l1_plus_linf_norm(u);
    table.rows.push_back({std::to_string(j), csv_number(m), csv_number(norm), csv_number(norm / power)});
    if (j == 1) {
      m1 = m;
      rep.check("j=1: int_0^1 xi* > 0", Provenance::trivial, Relation::ge, 0.0, norm);
      rep.check("j=1: modular finite and positive", Provenance::trivial, Relation::flag, 1.0,
                std::isfinite(m) && m > 0.0 ? 1.0 : 0.0);
      continue;
    }
    const std::string tag = "j=" + std::to_string(j);
    rep.check(tag + ": modular / modular(j=1)", Provenance::theory, Relation::rel, 1.0, m / m1, tol);
    if (j >= 4) rep.check(tag + ": l1+linf norm >= j^{s-n}", Provenance::theory, Relation::ge, power, norm, 1e-9 * power);
  }
  rep.measure("modular_j1", m1);
  return rep;
}

// ---------------------------------------------------------------------------
// Embedding norms and mollification

/// Ratios of the target norms to the seminorm over a bump gallery of dilates
/// and amplitudes, and the comparison ||u||_{A_{n/s}} <= C ||u||_{L(A-hat, n/s)}
/// with C fitted on half of the gallery.
///
/// Tolerance keys: stability (rel), comparison (rel).
inline Report verify_embedding_norms(const ExperimentConfig& cfg) {
  Report rep("embedding-norms", cfg.to_json());
  const auto sp = cfg.space();
  if (sp.n() != 1) throw std::invalid_argument("embedding-norms: line bumps need n = 1");
  const auto a = cfg.young_function().value_or(detail::default_supercritical());
  const auto targets = build_targets(a, sp);
  const auto mcfg = detail::modular_config(cfg);
  const double tol_stab = cfg.tol("stability", 0.15), tol_cmp = cfg.tol("comparison", 1e-6);

  {
    const auto zero = detail::zero_like(bumps::tent());
    rep.check_flag("zero function skipped", Provenance::trivial, true, fractional_seminorm(zero, sp, a, mcfg) == 0.0);
  }

  struct Member {
    std::string name;
    bool small;
    double orlicz, intersection, lorentz, seminorm;
  };
  const std::vector<double> amps{1.0, 10.0};
  std::vector<Member> members;
  for (const auto& b : detail::bump_gallery(1))
    for (double N : {1.0, 2.0, 4.0, 8.0})
      for (double amp : amps) {
        const auto u = detail::dilate(b.u, N, amp);
        const auto star = decreasing_rearrangement(u);
        Member m{b.name + ",N=" + csv_number(N) + ",amp=" + csv_number(amp), N <= 2.0, luxemburg_norm(targets.a_ns, u),
                 intersection_norm(targets.a_hat, sp, u).sum_form, orlicz_lorentz_norm(targets.a_hat, sp.critical(), star),
                 fractional_seminorm(u, sp, a, mcfg)};
        members.push_back(std::move(m));
      }

  auto& table = rep.table("ratios");
  table.header = {"member", "seminorm", "orlicz_norm", "intersection_norm", "lorentz_norm", "orlicz_ratio",
                  "intersection_ratio"};
  double orl_small = 0, orl_big = 0, int_small = 0, int_big = 0, cmp = 0;
  for (const auto& m : members) {
    const double ro = m.orlicz / m.seminorm, ri = m.intersection / m.seminorm;
    table.rows.push_back({m.name, csv_number(m.seminorm), csv_number(m.orlicz), csv_number(m.intersection),
                          csv_number(m.lorentz), csv_number(ro), csv_number(ri)});
    orl_big = std::max(orl_big, ro);
    int_big = std::max(int_big, ri);
    if (m.small) {
      orl_small = std::max(orl_small, ro);
      int_small = std::max(int_small, ri);
      cmp = std::max(cmp, m.orlicz / m.lorentz);
    }
  }
  rep.fit("orlicz_constant", orl_big);
  rep.fit("intersection_constant", int_big);
  rep.fit("comparison_constant", cmp);
  rep.check("orlicz ratio bounded", Provenance::theory, Relation::flag, 1.0, std::isfinite(orl_big) ? 1.0 : 0.0);
  rep.check("intersection ratio bounded", Provenance::theory, Relation::flag, 1.0, std::isfinite(int_big) ? 1.0 : 0.0);
  rep.check("orlicz constant stable as the gallery doubles", Provenance::derived, Relation::rel, orl_small, orl_big,
            tol_stab);
  rep.check("intersection constant stable as the gallery doubles", Provenance::derived, Relation::rel, int_small,
            int_big, tol_stab);
  for (const auto& m : members)
    if (!m.small)
      rep.check(m.name + ": orlicz norm <= C lorentz norm", Provenance::theory, Relation::le, cmp * m.lorentz, m.orlicz,
                tol_cmp * cmp * m.lorentz + tol_stab * cmp * m.lorentz);
  return rep;
}

/// Modular of (mollify(u, eps) - u) / lambda along an eps ladder for the
/// refined tent. lambda starts at the seminorm of u and doubles until the
/// ladder decreases and ends below the threshold.
///
/// Tolerance keys: threshold.
inline Report run_mollifier_convergence(const ExperimentConfig& cfg) {
  Report rep("mollifier", cfg.to_json());
  const auto sp = cfg.space();
  if (sp.n() != 1) throw std::invalid_argument("mollifier: needs n = 1");
  const auto a = cfg.young_function().value_or(detail::default_supercritical());
  const auto mcfg = detail::modular_config(cfg);
  const double threshold = cfg.tol("threshold", 1e-2);
  const std::vector<double> ladder{0.3, 0.1, 0.03, 0.01, 0.003, 0.001};

  const auto u = bumps::refined_tent();
  const double sem = fractional_seminorm(u, sp, a, mcfg);
  std::vector<ModularSamples> samples;
  for (double eps : ladder) samples.push_back(seminorm_samples(detail::mollified_error(u, eps), sp, mcfg));

  const auto ladder_at = [&](double lambda) {
    std::vector<double> m;
    for (const auto& s : samples) m.push_back(s.modular(a, lambda));
    return m;
  };
  const auto decreasing = [](const std::vector<double>& m) {
    for (std::size_t i = 1; i < m.size(); ++i)
      if (!(m[i] < m[i - 1])) return false;
    return true;
  };
  double lambda = sem;
  std::vector<double> m = ladder_at(lambda);
  int doublings = 0;
  while (!(decreasing(m) && m.back() < threshold) && doublings < 20) {
    lambda *= 2.0;
    m = ladder_at(lambda);
    ++doublings;
  }
  const bool found = decreasing(m) && m.back() < threshold;
  rep.measure("seminorm", sem);
  rep.measure("doublings", doublings);
  rep.fit("lambda", lambda);
  if (!found) rep.note("no lambda within 20 doublings of the seminorm; last ladder recorded");

  auto& table = rep.table("ladder");
  table.header = {"eps", "modular"};
  for (std::size_t i = 0; i < ladder.size(); ++i) table.rows.push_back({csv_number(ladder[i]), csv_number(m[i])});
  rep.check_flag("lambda found within 20 doublings", Provenance::derived, true, found);
  rep.check_flag("ladder decreasing in eps", Provenance::theory, true, decreasing(m));
  rep.check("final modular below threshold", Provenance::derived, Relation::le, threshold, m.back());

  const auto one = SampledFunction::grid1d({-1.0, 0.0, 1.0}, {1.0, 1.0, 1.0});
  double worst = 0.0;
  for (double eps : ladder) {
    const auto s = seminorm_samples(detail::mollified_error(one, eps), sp, mcfg);
    worst = std::max(worst, s.vanishes() ? 0.0 : s.modular(a, 1.0));
  }
  rep.check("constant function: modular 0 at every eps", Provenance::trivial, Relation::abs, 0.0, worst);
  return rep;
}

inline Report run_experiment(const ExperimentConfig& cfg) {
  cfg.check();
  if (cfg.experiment == "example-targets") return run_example_targets(cfg);
  if (cfg.experiment == "boundedness") return verify_boundedness(cfg);
  if (cfg.experiment == "counterexample") return counterexample_high_smoothness(cfg);
  if (cfg.experiment == "embedding-norms") return verify_embedding_norms(cfg);
  return run_mollifier_convergence(cfg);
}

}  // namespace orlicz
