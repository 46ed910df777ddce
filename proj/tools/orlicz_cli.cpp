// orlicz_cli: command-line front end for the library and the experiments.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/experiments.hpp"

using namespace orlicz;
namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::string out;
  unsigned jobs = 1;
  std::uint64_t seed = 0x5EED;
};

struct Problem {
  std::string young;
  std::optional<int> n;
  std::optional<double> s;
};

Json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return Json::parse(in);
}

/// Young function and (n, s) from the flags, falling back to the config file
/// keys "young", "n" and "s".
struct Resolved {
  YoungFunction a;
  SpaceParams p;
};

Resolved resolve(const Common& common, const Problem& prob) {
  Json cfg = Json::object();
  fs::path base = ".";
  if (!common.config.empty()) {
    cfg = load_json(common.config);
    base = fs::path(common.config).parent_path();
  }
  Json young;
  if (!prob.young.empty())
    young = load_json(prob.young);
  else if (cfg.contains("young"))
    young = cfg["young"].is_string() ? load_json(base / cfg["young"].get<std::string>()) : cfg["young"];
  else
    throw std::runtime_error("no Young function given (--young or \"young\" in --config)");
  const int n = prob.n.value_or(cfg.value("n", 1));
  const double s = prob.s.value_or(cfg.value("s", 0.5));
  return {young_from_json(young), SpaceParams(n, s)};
}

/// Two columns x,value; a non-numeric first line is a header.
std::pair<std::vector<double>, std::vector<double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<double> x, v;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, b;
    if (!(row >> a >> b)) {
      if (first) {
        first = false;
        continue;
      }
      throw std::runtime_error("bad CSV row in " + path.string() + ": " + line);
    }
    first = false;
    x.push_back(a);
    v.push_back(b);
  }
  return {x, v};
}

Domain parse_domain(const std::string& d) {
  if (d == "grid1d") return Domain::grid1d;
  if (d == "halfline") return Domain::halfline;
  if (d == "radial") return Domain::radial;
  throw std::runtime_error("unknown domain '" + d + "'");
}

Shape parse_shape(const std::string& s) {
  if (s == "linear") return Shape::linear;
  if (s == "step") return Shape::step;
  throw std::runtime_error("unknown shape '" + s + "'");
}

void emit(const Common& common, const std::string& name, const Json& j) {
  std::cout << j.dump(2) << '\n';
  if (common.out.empty()) return;
  fs::create_directories(common.out);
  std::ofstream(fs::path(common.out) / (name + ".json")) << j.dump(2) << '\n';
}

Json convergence_json(const ConvergenceReport& r) {
  return {{"converges", r.converges},
          {"value", json_number(r.value)},
          {"local_exponent", json_number(r.local_exponent)},
          {"borderline", r.borderline},
          {"method", to_string(r.method)}};
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON config file");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "random seed");
}

void add_problem(CLI::App* app, Problem& p) {
  app->add_option("--young", p.young, "Young function JSON file");
  app->add_option("--n", p.n, "dimension");
  app->add_option("--s", p.s, "smoothness");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Orlicz-Sobolev toolkit"};
  app.require_subcommand(1);
  Common common;
  Problem prob;

  auto* classify = app.add_subcommand("classify", "regime of a Young function");
  auto* conj = app.add_subcommand("conjugate", "complementary Young function");
  auto* t_orlicz = app.add_subcommand("target-orlicz", "optimal Orlicz target A_{n/s}");
  auto* t_ri = app.add_subcommand("target-ri", "Young function of the optimal Orlicz-Lorentz target");
  auto* lux = app.add_subcommand("luxemburg", "Luxemburg norm of a sampled function");
  auto* sem = app.add_subcommand("seminorm", "fractional seminorm of a sampled function");
  auto* hardy = app.add_subcommand("hardy-check", "lower bound for the Hardy reduction constant");
  auto* verify = app.add_subcommand("verify", "run an experiment");
  for (auto* sub : {classify, conj, t_orlicz, t_ri, lux, sem, hardy, verify}) add_common(sub, common);
  for (auto* sub : {classify, conj, t_orlicz, t_ri, lux, sem, hardy}) add_problem(sub, prob);

  std::vector<double> at;
  conj->add_option("--at", at, "also evaluate the conjugate at these points")->delimiter(',');

  std::string function_csv, domain = "grid1d", shape = "linear";
  for (auto* sub : {lux, sem}) {
    sub->add_option("--function", function_csv, "CSV file of x,value")->required()->check(CLI::ExistingFile);
    sub->add_option("--domain", domain, "grid1d, halfline or radial");
    sub->add_option("--shape", shape, "linear or step");
  }

  std::string target = "linf", trials_dir;
  hardy->add_option("--target", target, "linf, orlicz:<json file> or intersection");
  hardy->add_option("--trials", trials_dir, "directory of CSV step trials r,value")
      ->required()
      ->check(CLI::ExistingDirectory);

  std::string experiment;
  verify->add_option("--experiment", experiment, "experiment id")
      ->check(CLI::IsMember(experiment_ids()));

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) {
      const auto [a, p] = resolve(common, prob);
      const auto r = classify_growth(a, p);
      emit(common, "classify",
           {{"regime", to_string(r.tag)},
            {"indisp_value", json_number(r.indisp_value)},
            {"tail_value", json_number(r.tail_value)},
            {"local_exponent_zero", json_number(r.local_exponent_zero)},
            {"local_exponent_inf", json_number(r.local_exponent_inf)},
            {"indisp", convergence_json(r.indisp)},
            {"tail", convergence_json(r.tail)},
            {"reason", r.reason}});
      return 0;
    }
    if (conj->parsed()) {
      const auto [a, p] = resolve(common, prob);
      const auto c = conjugate(a);
      Json out = {{"young", to_json(c)}};
      Json values = Json::array();
      for (double t : at) values.push_back({{"t", t}, {"value", json_number(c(t))}});
      if (!at.empty()) out["values"] = values;
      emit(common, "conjugate", out);
      return 0;
    }
    if (t_orlicz->parsed()) {
      const auto [a, p] = resolve(common, prob);
      emit(common, "target-orlicz", to_json(orlicz_target(a, p)));
      return 0;
    }
    if (t_ri->parsed()) {
      const auto [a, p] = resolve(common, prob);
      emit(common, "target-ri", to_json(orlicz_lorentz_target(a, p)));
      return 0;
    }
    if (lux->parsed() || sem->parsed()) {
      const auto [a, p] = resolve(common, prob);
      auto [x, v] = read_csv(function_csv);
      const Domain d = parse_domain(domain);
      const SampledFunction u(d, d == Domain::radial ? p.n() : 1, std::move(x), std::move(v), parse_shape(shape));
      if (lux->parsed()) {
        emit(common, "luxemburg", {{"norm", json_number(luxemburg_norm(a, u))}});
        return 0;
      }
      ModularConfig mc;
      mc.jobs = common.jobs;
      mc.montecarlo.seed = common.seed;
      const auto r = fractional_seminorm_report(u, p, a, mc);
      emit(common, "seminorm",
           {{"seminorm", json_number(r.seminorm)},
            {"modular_at_one", json_number(r.modular_at_one)},
            {"method", to_string(r.method)},
            {"error_estimate", json_number(r.error_estimate)}});
      return 0;
    }
    if (hardy->parsed()) {
      const auto [a, p] = resolve(common, prob);
      TargetNorm t = LinfTarget{};
      if (target.rfind("orlicz:", 0) == 0)
        t = OrliczTarget{young_from_json(load_json(target.substr(7)))};
      else if (target == "intersection")
        t = IntersectionTarget{orlicz_lorentz_target(a, p)};
      else if (target != "linf")
        throw std::runtime_error("unknown target '" + target + "'");
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(trials_dir))
        if (e.path().extension() == ".csv") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      std::vector<SampledFunction> trials;
      for (const auto& f : files) {
        auto [x, v] = read_csv(f);
        trials.push_back(SampledFunction::halfline(std::move(x), std::move(v), Shape::step));
      }
      const auto r = reduction_constant_estimate(a, p, t, trials, common.jobs);
      Json out = {{"target", to_string(t)},
                  {"estimate", json_number(r.estimate)},
                  {"trials_used", r.trials_used},
                  {"upper_bound", std::holds_alternative<LinfTarget>(t) ? json_number(linf_upper_bound(a, p)) : Json()}};
      if (r.trials_used > 0) out["best_trial"] = files[r.best_trial].filename().string();
      emit(common, "hardy-check", out);
      return 0;
    }
    // verify
    ExperimentConfig cfg;
    if (!common.config.empty()) {
      Json j = load_json(common.config);
      if (!experiment.empty()) j["experiment"] = experiment;
      cfg = ExperimentConfig::from_json(j, fs::path(common.config).parent_path());
    } else {
      if (experiment.empty()) throw std::runtime_error("verify needs --experiment or a --config naming one");
      cfg.experiment = experiment;
      if (experiment == "counterexample") cfg.s = 1.5;
    }
    if (verify->count("--jobs")) cfg.jobs = common.jobs;
    if (verify->count("--seed")) cfg.seed = common.seed;
    if (!common.out.empty()) cfg.out = common.out;
    const auto report = run_experiment(cfg);
    report.write(cfg.out);
    for (const auto& a : report.assertions())
      std::cout << (a.pass ? "ok    " : "FAIL  ") << a.name << "  expected " << csv_number(a.expected) << ", measured "
                << csv_number(a.measured) << '\n';
    std::cout << report.experiment() << ": " << (report.passed() ? "passed" : "FAILED") << " ("
              << report.assertions().size() - report.failures() << "/" << report.assertions().size() << ")\n";
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
