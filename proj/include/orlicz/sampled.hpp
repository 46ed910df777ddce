#pragma once

// Sampled functions on R^n and their decreasing rearrangements.
//
// A SampledFunction holds nodes x_0 < ... < x_m and values there. Between
// nodes it is either linear or a step (the value at the left node); outside
// the nodes it is 0. Every cell [x_i, x_{i+1}) carries its Lebesgue measure:
// the length on a line or half-line, the shell volume for radial profiles.
// Norms see a cell through one value, the mean of the cell for linear
// shape (the midpoint value) and the step value otherwise.
//
// The sup norm is the max of the sampled |values|; features between nodes
// are invisible.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/numeric.hpp"

namespace orlicz {

enum class Domain { grid1d, halfline, radial };
enum class Shape { linear, step };

inline const char* to_string(Domain d) {
  switch (d) {
    case Domain::grid1d: return "grid1d";
    case Domain::halfline: return "halfline";
    case Domain::radial: return "radial";
  }
  return "?";
}
inline const char* to_string(Shape s) { return s == Shape::linear ? "linear" : "step"; }

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

struct Cell {
  double value;
  double weight;
};

class SampledFunction {
 public:
  SampledFunction(Domain domain, int dimension, std::vector<double> grid, std::vector<double> values,
                  Shape shape = Shape::linear)
      : domain_(domain), n_(dimension), shape_(shape), x_(std::move(grid)), v_(std::move(values)) {
    if (domain_ != Domain::radial && n_ != 1) throw std::invalid_argument("SampledFunction: line grids are 1-D");
    if (n_ < 1) throw std::invalid_argument("SampledFunction: dimension must be positive");
    if (x_.size() != v_.size() || x_.size() < 2) throw std::invalid_argument("SampledFunction: need >= 2 nodes");
    for (std::size_t i = 1; i < x_.size(); ++i)
      if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("SampledFunction: grid must increase strictly");
    if (domain_ != Domain::grid1d && x_.front() < 0.0)
      throw std::invalid_argument("SampledFunction: half-line and radial grids start at r >= 0");
    if (!std::isfinite(x_.front())) throw std::invalid_argument("SampledFunction: first node must be finite");
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (!std::isfinite(v_[i])) throw std::invalid_argument("SampledFunction: values must be finite");
    }
    // An infinite last node is a step cell reaching infinity.
    if (!std::isfinite(x_.back()) && shape_ != Shape::step)
      throw std::invalid_argument("SampledFunction: an unbounded last cell needs step shape");
  }

  static SampledFunction grid1d(std::vector<double> x, std::vector<double> v, Shape shape = Shape::linear) {
    return {Domain::grid1d, 1, std::move(x), std::move(v), shape};
  }
  static SampledFunction halfline(std::vector<double> r, std::vector<double> v, Shape shape = Shape::linear) {
    return {Domain::halfline, 1, std::move(r), std::move(v), shape};
  }
  static SampledFunction radial(int n, std::vector<double> r, std::vector<double> v, Shape shape = Shape::linear) {
    return {Domain::radial, n, std::move(r), std::move(v), shape};
  }

  /// Samples f at the given nodes.
  template <class F>
  static SampledFunction sample(Domain domain, int n, std::vector<double> grid, F&& f, Shape shape = Shape::linear) {
    std::vector<double> v;
    v.reserve(grid.size());
    for (double x : grid) v.push_back(f(x));
    return {domain, n, std::move(grid), std::move(v), shape};
  }

  Domain domain() const { return domain_; }
  int dimension() const { return n_; }
  Shape shape() const { return shape_; }
  const std::vector<double>& grid() const { return x_; }
  const std::vector<double>& values() const { return v_; }
  std::size_t cell_count() const { return x_.size() - 1; }

  double cell_weight(std::size_t i) const {
    if (domain_ != Domain::radial) return x_[i + 1] - x_[i];
    return unit_ball_volume(n_) * (std::pow(x_[i + 1], n_) - std::pow(x_[i], n_));
  }
  double cell_value(std::size_t i) const { return shape_ == Shape::step ? v_[i] : 0.5 * (v_[i] + v_[i + 1]); }

  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    out.reserve(cell_count());
    for (std::size_t i = 0; i < cell_count(); ++i) out.push_back({cell_value(i), cell_weight(i)});
    return out;
  }

  /// Value at a point of the line or at radius r; 0 outside the grid.
  double operator()(double x) const {
    if (domain_ == Domain::radial) x = std::abs(x);
    if (x < x_.front() || x > x_.back()) return 0.0;
    if (x == x_.back()) return shape_ == Shape::step ? 0.0 : v_.back();
    const std::size_t i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    if (shape_ == Shape::step) return v_[i];
    const double w = (x - x_[i]) / (x_[i + 1] - x_[i]);
    return (1.0 - w) * v_[i] + w * v_[i + 1];
  }

  double sup_abs() const {
    double m = 0.0;
    for (double v : v_) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_zero() const { return sup_abs() == 0.0; }

  SampledFunction scaled(double c) const {
    auto v = v_;
    for (double& x : v) x *= c;
    return {domain_, n_, x_, std::move(v), shape_};
  }

  /// x -> u(x / N).
  SampledFunction dilated(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("SampledFunction: dilation factor must be positive");
    auto x = x_;
    for (double& g : x) g *= factor;
    return {domain_, n_, std::move(x), v_, shape_};
  }

  /// x -> u(x - a); line grids only.
  SampledFunction translated(double a) const {
    if (domain_ != Domain::grid1d) throw std::invalid_argument("SampledFunction: only line grids translate");
    auto x = x_;
    for (double& g : x) g += a;
    return {domain_, n_, std::move(x), v_, shape_};
  }

  /// Same grid, values mapped pointwise.
  template <class F>
  SampledFunction mapped(F&& f) const {
    auto v = v_;
    for (double& x : v) x = f(x);
    return {domain_, n_, x_, std::move(v), shape_};
  }

 private:
  Domain domain_;
  int n_;
  Shape shape_;
  std::vector<double> x_;
  std::vector<double> v_;
};

/// Pointwise difference of two functions on the union of their grids.
inline SampledFunction difference(const SampledFunction& a, const SampledFunction& b) {
  if (a.domain() != b.domain() || a.dimension() != b.dimension() || a.shape() != b.shape())
    throw std::invalid_argument("difference: functions live on different domains");
  std::vector<double> grid;
  std::set_union(a.grid().begin(), a.grid().end(), b.grid().begin(), b.grid().end(), std::back_inserter(grid));
  std::vector<double> v;
  for (double x : grid) v.push_back(a(x) - b(x));
  return {a.domain(), a.dimension(), std::move(grid), std::move(v), a.shape()};
}

/// u* as a step function: value v_k on [R_{k-1}, R_k), R_0 = 0, and 0 beyond
/// the last R_k.
class RearrangedFunction {
 public:
  RearrangedFunction() = default;
  RearrangedFunction(std::vector<double> ends, std::vector<double> values)
      : r_(std::move(ends)), v_(std::move(values)) {}

  const std::vector<double>& ends() const { return r_; }
  const std::vector<double>& values() const { return v_; }
  std::size_t size() const { return r_.size(); }
  double support() const { return r_.empty() ? 0.0 : r_.back(); }
  double left(std::size_t k) const { return k == 0 ? 0.0 : r_[k - 1]; }

  double operator()(double r) const {
    const auto it = std::upper_bound(r_.begin(), r_.end(), r);
    return it == r_.end() ? 0.0 : v_[static_cast<std::size_t>(it - r_.begin())];
  }

  /// |{u* > t}|.
  double distribution(double t) const {
    const auto it = std::find_if(v_.begin(), v_.end(), [t](double v) { return !(v > t); });
    const auto k = static_cast<std::size_t>(it - v_.begin());
    return k == 0 ? 0.0 : r_[k - 1];
  }

  /// int_0^b u*.
  double integral(double b) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < r_.size() && left(k) < b; ++k) acc += v_[k] * (std::min(r_[k], b) - left(k));
    return acc;
  }

  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    for (std::size_t k = 0; k < r_.size(); ++k) out.push_back({v_[k], r_[k] - left(k)});
    return out;
  }

 private:
  std::vector<double> r_;
  std::vector<double> v_;
};

/// |{|u| > t}| from the cells of u.
inline double distribution_function(const SampledFunction& u, double t) {
  double m = 0.0;
  for (const auto& c : u.cells())
    if (std::abs(c.value) > t) m += c.weight;
  return m;
}

inline RearrangedFunction decreasing_rearrangement(const SampledFunction& u) {
  auto cells = u.cells();
  for (auto& c : cells) {
    c.value = std::abs(c.value);
    if (c.value > 0.0 && !std::isfinite(c.weight))
      throw std::domain_error("decreasing_rearrangement: level set of infinite measure");
  }
  std::erase_if(cells, [](const Cell& c) { return !(c.value > 0.0); });
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.value > b.value; });
  std::vector<double> ends, values;
  double acc = 0.0;
  for (const auto& c : cells) {
    acc += c.weight;
    if (!values.empty() && values.back() == c.value) {
      ends.back() = acc;
    } else {
      ends.push_back(acc);
      values.push_back(c.value);
    }
  }
  return {std::move(ends), std::move(values)};
}

/// CSV: a header line "kind=<domain>,n=<dim>,shape=<shape>", then "x,value" rows.
inline void write_csv(std::ostream& out, const SampledFunction& u) {
  out << "kind=" << to_string(u.domain()) << ",n=" << u.dimension() << ",shape=" << to_string(u.shape()) << "\n";
  out.precision(17);
  for (std::size_t i = 0; i < u.grid().size(); ++i) out << u.grid()[i] << "," << u.values()[i] << "\n";
}

inline SampledFunction read_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("sampled CSV: empty input");
  Domain domain = Domain::grid1d;
  Shape shape = Shape::linear;
  int n = 1;
  std::stringstream hs(header);
  std::string field;
  while (std::getline(hs, field, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::runtime_error("sampled CSV: malformed header field '" + field + "'");
    const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
    if (key == "kind") {
      if (val == "grid1d") domain = Domain::grid1d;
      else if (val == "halfline") domain = Domain::halfline;
      else if (val == "radial") domain = Domain::radial;
      else throw std::runtime_error("sampled CSV: unknown kind '" + val + "'");
    } else if (key == "n") {
      n = std::stoi(val);
    } else if (key == "shape") {
      if (val == "linear") shape = Shape::linear;
      else if (val == "step") shape = Shape::step;
      else throw std::runtime_error("sampled CSV: unknown shape '" + val + "'");
    } else {
      throw std::runtime_error("sampled CSV: unknown header key '" + key + "'");
    }
  }
  std::vector<double> x, v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("sampled CSV: expected 'x,value' rows");
    x.push_back(std::stod(line.substr(0, comma)));
    v.push_back(std::stod(line.substr(comma + 1)));
  }
  return {domain, n, std::move(x), std::move(v), shape};
}

inline SampledFunction load_sampled(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sampled function file: " + path);
  return read_csv(in);
}

inline void save_sampled(const std::string& path, const SampledFunction& u) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write sampled function file: " + path);
  write_csv(out, u);
}

}  // namespace orlicz
