// Acceptance gate: one PASS/FAIL line per criterion, exit code 0 iff all pass.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/experiments.hpp"

using namespace orlicz;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Assertions of `r` whose name contains `key`; all must pass and at least one
/// must exist.
Outcome assertions_matching(const Report& r, const std::string& key) {
  std::size_t count = 0, failed = 0;
  std::string first;
  for (const auto& a : r.assertions()) {
    if (a.name.find(key) == std::string::npos) continue;
    ++count;
    if (!a.pass) {
      if (failed++ == 0) first = a.name + " (expected " + csv_number(a.expected) + ", measured " + csv_number(a.measured) + ")";
    }
  }
  Outcome o{count > 0 && failed == 0, std::to_string(count - failed) + "/" + std::to_string(count) + " assertions"};
  if (failed) o.detail += "; first failure: " + first;
  return o;
}

Outcome whole_report(const Report& r) {
  Outcome o{r.passed(), std::to_string(r.assertions().size() - r.failures()) + "/" +
                            std::to_string(r.assertions().size()) + " assertions"};
  for (const auto& a : r.assertions())
    if (!a.pass) {
      o.detail += "; first failure: " + a.name;
      break;
    }
  return o;
}

ExperimentConfig config(const std::string& id, double s = 0.5) {
  ExperimentConfig c;
  c.experiment = id;
  c.s = s;
  c.jobs = 4;
  return c;
}

Outcome conjugate_calculus() {
  std::size_t round_trip_bad = 0, violations = 0, checked = 0;
  double worst = 0.0;
  for (const auto& row : young_gallery()) {
    const auto a = row.young();
    const auto c = conjugate(a);
    const auto cc = conjugate(c);
    for (double t : log_space(1e-3, 1e3, 25)) {
      const double rel = std::abs(cc(t) / a(t) - 1.0);
      worst = std::max(worst, rel);
      round_trip_bad += !(rel <= 1e-6);
    }
  }
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> exponent(-3.0, 3.0);
  const auto gallery = young_gallery();
  for (int i = 0; i < 10000; ++i) {
    const auto& row = gallery[static_cast<std::size_t>(i) % gallery.size()];
    const auto a = row.young();
    const auto c = conjugate(a);
    const double tau = std::pow(10.0, exponent(rng)), t = std::pow(10.0, exponent(rng));
    ++checked;
    violations += tau * t > a(tau) + c(t) + 1e-9 * std::max(1.0, tau * t);
  }
  std::ostringstream d;
  d << "biconjugate worst rel " << worst << ", " << violations << " Young violations in " << checked << " pairs";
  return {round_trip_bad == 0 && violations == 0, d.str()};
}

Outcome hardy_closed_forms() {
  // Oracle: tanh-sinh quadrature of f(rho) rho^{-1+s/n} cell by cell.
  const SpaceParams sp(1, 0.5);
  const double kappa = -1.0 + sp.s() / sp.n();
  boost::math::quadrature::tanh_sinh<double> ts;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> width(0.05, 1.0), height(0.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x{0.0}, v;
    for (int i = 0; i < 8; ++i) {
      x.push_back(x.back() + width(rng));
      v.push_back(height(rng));
    }
    v.push_back(0.0);
    const auto f = SampledFunction::halfline(x, v, Shape::step);
    for (double r : {0.0, 0.37, 1.9, 4.2}) {
      double oracle = 0.0;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = std::max(x[i], r), b = x[i + 1];
        if (b > a) oracle += v[i] * ts.integrate([&](double rho) { return std::pow(rho, kappa); }, a, b);
      }
      worst = std::max(worst, std::abs(hardy_operator(f, sp, r) - oracle));
    }
  }
  std::size_t disagreements = 0;
  for (const auto& row : young_gallery()) {
    const auto a = row.young();
    disagreements += std::isfinite(kernel_conjugate_norm(a, sp)) != std::isfinite(full_line_integral(a, sp));
  }
  std::ostringstream d;
  d << "worst abs error " << worst << ", " << disagreements << " finiteness disagreements on " << young_gallery().size()
    << " gallery functions";
  return {worst <= 1e-10 && disagreements == 0, d.str()};
}

Outcome scaling_identity() {
  // J(u(. / N), lambda) = N J(u, lambda N^sigma) on the line.
  const double sigma = 0.5;
  ModularConfig cfg;
  cfg.jobs = 4;
  double worst = 0.0;
  for (const auto& a : {detail::default_supercritical(), YoungFunction::power(1.5)})
    for (const auto& u : {bumps::tent(), bumps::smooth_bump()})
      for (double N : {2.0, 4.0, 8.0}) {
        const double lhs = gagliardo_modular(detail::dilate(u, N), sigma, a, 1.0, cfg);
        const double rhs = N * gagliardo_modular(u, sigma, a, std::pow(N, sigma), cfg);
        worst = std::max(worst, std::abs(lhs / rhs - 1.0));
      }
  return {worst <= 0.03, "worst relative deviation " + csv_number(worst)};
}

Outcome counterexample_growth(const Report& r) {
  Outcome o = whole_report(r);
  double least = kInf;
  for (const auto& row : r.tables().at("scaling").rows)
    if (std::stoi(row[0]) >= 4) least = std::min(least, std::stod(row[3]));
  o.pass = o.pass && least >= 0.5;
  o.detail += ", min l1+linf / j^0.5 over j >= 4: " + csv_number(least);
  return o;
}

Outcome determinism() {
  const auto base = std::filesystem::temp_directory_path() / "orlicz_acceptance";
  std::filesystem::remove_all(base);
  auto bounded = config("boundedness");
  bounded.gallery = {young_gallery()[1].name, young_gallery()[4].name};
  const std::vector<ExperimentConfig> configs{config("counterexample", 1.5), config("mollifier"), bounded};
  for (const char* run : {"a", "b"})
    for (const auto& c : configs) run_experiment(c).write(base / run);
  std::size_t files = 0, different = 0;
  for (const auto& entry : std::filesystem::directory_iterator(base / "a")) {
    const auto other = base / "b" / entry.path().filename();
    std::ifstream x(entry.path(), std::ios::binary), y(other, std::ios::binary);
    std::stringstream bx, by;
    bx << x.rdbuf();
    by << y.rdbuf();
    ++files;
    different += bx.str() != by.str();
  }
  std::filesystem::remove_all(base);
  return {files > 0 && different == 0, std::to_string(files) + " files compared, " + std::to_string(different) +
                                           " differ"};
}

}  // namespace

int main() {
  std::cout.precision(6);
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;

  // Runs shared by several criteria.
  const Report targets = run_example_targets(config("example-targets"));

  criteria.emplace_back("regime table on the 60-point exponent grid and the gallery", [&] {
    Outcome grid = assertions_matching(targets, "regime rule disagreements");
    Outcome rows = assertions_matching(targets, ": regime ");
    return Outcome{grid.pass && rows.pass, "grid " + grid.detail + ", gallery " + rows.detail};
  });
  criteria.emplace_back("Orlicz target of t^1.5 matches t^6/8",
                        [&] { return assertions_matching(targets, "power target closed form"); });
  criteria.emplace_back("exponential branch double-log slope",
                        [&] { return assertions_matching(targets, "A_ns double-log slope"); });
  criteria.emplace_back("A-hat exponents and equivalence with A near zero",
                        [&] { return assertions_matching(targets, "A-hat"); });
  criteria.emplace_back("conjugate round trip and Young's inequality", conjugate_calculus);
  criteria.emplace_back("Hardy closed forms and kernel norm finiteness", hardy_closed_forms);
  criteria.emplace_back("modular dilation law", scaling_identity);
  criteria.emplace_back("counterexample growth",
                        [] { return counterexample_growth(counterexample_high_smoothness(config("counterexample", 1.5))); });
  criteria.emplace_back("boundedness ratio invariant under dilation",
                        [] { return whole_report(verify_boundedness(config("boundedness"))); });
  criteria.emplace_back("mollifier modular convergence",
                        [] { return whole_report(run_mollifier_convergence(config("mollifier"))); });
  criteria.emplace_back("byte-identical reports across runs", determinism);

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << "  " << criteria[i].first << "  [" << o.detail << "]"
              << std::endl;
  }
  return all ? 0 : 1;
}
