#pragma once

// JSON form of a Young function:
//   {"pieces":[{"from":0,"form":"powerlog","k":1,"p":1.5,"alpha":0,"log":"zero"},
//              {"from":1,"form":"tabulated","knots":[[1,1],[2,4]]},
//              {"from":0,"form":"zero"}],
//    "inf_threshold":null}
// Tables take either "knots" [[t, A(t)], ...] with optional "densities"
// [a(t), ...], or the log form written by to_json: "log_t", "log_values" and
// optional "log_densities". Densities switch to density interpolation.
// Conjugate pieces have no closed form and are written as sampled tables.

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "orlicz/young.hpp"

namespace orlicz {

using Json = nlohmann::json;

namespace detail {

/// Tables are written in log form since knots may lie far below 1e-308.
inline Json tabulated_to_json(const Tabulated& tab, double from) {
  Json j = {{"from", from}, {"form", "tabulated"}, {"log_t", tab.log_t}, {"log_values", tab.log_v}};
  if (tab.has_density()) j["log_densities"] = tab.log_d;
  return j;
}

inline Tabulated tabulated_from_json(const Json& p) {
  Tabulated tab;
  if (p.contains("knots")) {
    std::vector<std::pair<double, double>> knots;
    for (const auto& k : p["knots"]) knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
    tab = Tabulated::from_knots(knots);
    if (p.contains("densities"))
      for (const auto& d : p["densities"]) tab.log_d.push_back(std::log(d.get<double>()));
  } else {
    tab.log_t = p.at("log_t").get<std::vector<double>>();
    tab.log_v = p.at("log_values").get<std::vector<double>>();
    if (p.contains("log_densities")) tab.log_d = p["log_densities"].get<std::vector<double>>();
  }
  tab.check();
  return tab;
}

/// Samples a piece on a log grid inside [from, to) into zero/tabulated pieces.
inline void sample_piece(const YoungFunction& f, double from, double to, Json& out) {
  const double lo = std::max(from, 1e-12);
  const double hi = std::min(to, 1e12);
  auto grid = log_space(lo, hi, 121);
  std::vector<std::pair<double, double>> knots;
  double last_zero = -1.0;
  for (double t : grid) {
    if (t <= from) continue;
    const double v = f(t);
    if (!std::isfinite(v)) break;
    if (v <= 0.0) {
      last_zero = t;
      continue;
    }
    knots.emplace_back(t, v);
  }
  if (last_zero > 0.0) out.push_back({{"from", from}, {"form", "zero"}});
  if (knots.size() >= 2) {
    const double start = last_zero > 0.0 ? last_zero : from;
    out.push_back(tabulated_to_json(Tabulated::from_knots(knots), start));
  }
}

}  // namespace detail

inline Json to_json(const YoungFunction& a) {
  Json pieces = Json::array();
  const auto& ps = a.pieces();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double from = ps[i].from;
    const double to = i + 1 < ps.size() ? ps[i + 1].from : a.inf_threshold();
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ZeroForm>) {
            pieces.push_back({{"from", from}, {"form", "zero"}});
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            Json j = {{"from", from}, {"form", "powerlog"}, {"k", f.k},
                      {"p", f.p},     {"alpha", f.alpha},   {"log", f.side == LogSide::zero ? "zero" : "infinity"}};
            if (f.has_log()) j["shift"] = f.shift;
            pieces.push_back(j);
          } else if constexpr (std::is_same_v<T, Tabulated>) {
            pieces.push_back(detail::tabulated_to_json(f, from));
          } else {
            detail::sample_piece(a, from, to, pieces);
          }
        },
        ps[i].form);
  }
  Json out = {{"pieces", pieces}};
  out["inf_threshold"] = a.finite_valued() ? Json(nullptr) : Json(a.inf_threshold());
  return out;
}

inline YoungFunction young_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array())
    throw std::invalid_argument("Young function JSON: expected an object with a 'pieces' array");
  std::vector<Piece> pieces;
  for (const auto& p : j["pieces"]) {
    Piece piece;
    piece.from = p.value("from", 0.0);
    const std::string form = p.at("form").get<std::string>();
    if (form == "zero") {
      piece.form = ZeroForm{};
    } else if (form == "powerlog") {
      PowerLog pl;
      pl.k = p.value("k", 1.0);
      pl.p = p.at("p").get<double>();
      pl.alpha = p.value("alpha", 0.0);
      const std::string side = p.value("log", std::string("zero"));
      if (side == "zero")
        pl.side = LogSide::zero;
      else if (side == "infinity")
        pl.side = LogSide::infinity;
      else
        throw std::invalid_argument("Young function JSON: 'log' must be 'zero' or 'infinity'");
      pl.shift = p.value("shift", 0.0);
      piece.form = pl;
    } else if (form == "tabulated") {
      piece.form = detail::tabulated_from_json(p);
    } else {
      throw std::invalid_argument("Young function JSON: unknown form '" + form + "'");
    }
    pieces.push_back(std::move(piece));
  }
  double threshold = kInf;
  if (j.contains("inf_threshold") && !j["inf_threshold"].is_null()) threshold = j["inf_threshold"].get<double>();
  return YoungFunction(std::move(pieces), threshold);
}

inline YoungFunction load_young(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Young function file: " + path);
  return young_from_json(Json::parse(in));
}

}  // namespace orlicz
