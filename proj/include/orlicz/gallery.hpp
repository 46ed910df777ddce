#pragma once

// Fixed test galleries: power-log Young functions spliced at t = 1 and the
// bump functions used by the experiments.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/sampled.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct GalleryYoung {
  std::string name;
  PowerLog low;
  PowerLog high;

  YoungFunction young() const { return YoungFunction::spliced(low, high); }
};

/// t^p0 log(1/t)^a0 near zero and t^p log(t)^a near infinity. Chosen around
/// n/s = 2 so that every regime and the borderline exponents are hit.
inline std::vector<GalleryYoung> young_gallery() {
  const auto row = [](double p0, double a0, double p, double a) {
    std::ostringstream name;
    name << "p0=" << p0 << ",a0=" << a0 << ";p=" << p << ",a=" << a;
    return GalleryYoung{name.str(), PowerLog{1.0, p0, a0}, PowerLog{1.0, p, a}};
  };
  return {
      row(1.5, 0.0, 1.5, 0.0),   // subcritical
      row(1.5, 0.0, 3.0, 0.0),   // supercritical
      row(1.5, 1.0, 3.0, 0.0),   // supercritical
      row(1.2, -0.5, 2.5, 0.0),  // supercritical
      row(2.0, 2.0, 3.0, 0.0),   // supercritical, p0 = n/s
      row(2.0, 1.0, 3.0, 0.0),   // inadmissible, a0 = n/s - 1
      row(3.0, 0.0, 3.0, 0.0),   // inadmissible
      row(1.5, 0.0, 2.0, 2.0),   // supercritical, p = n/s
      row(1.5, 0.0, 2.0, 0.5),   // subcritical, p = n/s
      row(1.0, 0.0, 3.0, 0.0),   // supercritical, linear near zero
      row(1.8, 0.0, 4.0, -1.0),  // supercritical
      row(1.2, 0.0, 1.8, 0.0),   // subcritical
  };
}

namespace bumps {

inline std::vector<double> uniform(double a, double b, int points) {
  std::vector<double> x;
  x.reserve(points);
  for (int i = 0; i < points; ++i) x.push_back(a + (b - a) * i / (points - 1));
  return x;
}

inline double smooth_profile(double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }

/// max(0, 1 - |x|) on [-1, 1].
inline SampledFunction tent(int points = 401) {
  return SampledFunction::sample(Domain::grid1d, 1, uniform(-1.0, 1.0, points),
                                 [](double x) { return std::max(0.0, 1.0 - std::abs(x)); });
}

/// exp(-1 / (1 - x^2)) on [-1, 1].
inline SampledFunction smooth_bump(int points = 401) {
  return SampledFunction::sample(Domain::grid1d, 1, uniform(-1.0, 1.0, points), smooth_profile);
}

/// exp(-x^2 / 2) on [-6, 6], with the end values set to 0.
inline SampledFunction gaussian(int points = 1201) {
  auto u = SampledFunction::sample(Domain::grid1d, 1, uniform(-6.0, 6.0, points),
                                   [](double x) { return std::exp(-0.5 * x * x); });
  auto v = u.values();
  v.front() = v.back() = 0.0;
  return SampledFunction::grid1d(u.grid(), std::move(v));
}

/// 1 on (a, b).
inline SampledFunction indicator(double a, double b) {
  return SampledFunction::grid1d({a, b}, {1.0, 0.0}, Shape::step);
}

/// Smooth plateau: 1 on [-1, 1], 0 outside (-2, 2).
inline double plateau_profile(double x) {
  const auto psi = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double r = std::abs(x);
  const double in = psi(2.0 - r), out = psi(r - 1.0);
  return in / (in + out);
}

inline SampledFunction plateau(int points = 801) {
  return SampledFunction::sample(Domain::grid1d, 1, uniform(-2.0, 2.0, points), plateau_profile);
}

/// Tent refined geometrically towards its three kinks, for mollification.
inline SampledFunction refined_tent(double min_step = 1e-5, double ratio = 1.1) {
  // [0, 1/2) graded away from 0, mirrored onto [1/2, 1], then onto [-1, 0].
  std::vector<double> graded{0.0};
  for (double h = min_step; graded.back() + h < 0.5; h *= ratio) graded.push_back(graded.back() + h);
  std::vector<double> unit(graded);
  unit.push_back(0.5);
  for (std::size_t i = graded.size(); i-- > 0;) unit.push_back(1.0 - graded[i]);
  std::vector<double> x;
  for (std::size_t i = unit.size(); i-- > 1;) x.push_back(-unit[i]);
  x.insert(x.end(), unit.begin(), unit.end());
  return SampledFunction::sample(Domain::grid1d, 1, std::move(x),
                                 [](double t) { return std::max(0.0, 1.0 - std::abs(t)); });
}

/// Radial profiles in R^n on [0, 1].
inline SampledFunction radial_tent(int n, int points = 201) {
  return SampledFunction::sample(Domain::radial, n, uniform(0.0, 1.0, points), [](double r) { return 1.0 - r; });
}

inline SampledFunction radial_smooth_bump(int n, int points = 201) {
  return SampledFunction::sample(Domain::radial, n, uniform(0.0, 1.0, points), smooth_profile);
}

}  // namespace bumps
}  // namespace orlicz
