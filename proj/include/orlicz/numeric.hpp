#pragma once

// Small numeric vocabulary shared by every module: extended reals, log-space
// accumulation and least-squares fits.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace orlicz {

/// Values in [0, +inf]. Plain double; +inf is the absorbing element.
using ExtReal = double;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline bool is_inf(double x) { return x == kInf; }

/// log(exp(a) + exp(b)) without overflow.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a == kInf || b == kInf) return kInf;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

/// log(exp(a) - exp(b)) for a >= b.
inline double log_sub(double a, double b) {
  if (b == kNegInf) return a;
  if (b >= a) return kNegInf;
  return a + std::log1p(-std::exp(b - a));
}

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

inline std::vector<double> log_space(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = std::exp(a + f * (b - a));
  }
  return out;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

inline LineFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

/// Ordinary least squares y ~ sum_j beta_j * columns[j]; normal equations with
/// partial pivoting. Columns are expected to be few (<= 4).
inline std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                         std::span<const double> y) {
  const std::size_t k = columns.size();
  if (k == 0) throw std::invalid_argument("least_squares: no columns");
  for (const auto& c : columns)
    if (c.size() != y.size()) throw std::invalid_argument("least_squares: size mismatch");
  std::vector<std::vector<double>> m(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t r = 0; r < y.size(); ++r) m[i][j] += columns[i][r] * columns[j][r];
    for (std::size_t r = 0; r < y.size(); ++r) m[i][k] += columns[i][r] * y[r];
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    if (m[c][c] == 0.0) throw std::invalid_argument("least_squares: singular system");
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t j = c; j <= k; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<double> beta(k);
  for (std::size_t i = 0; i < k; ++i) beta[i] = m[i][k] / m[i][i];
  return beta;
}

inline double relative_error(double measured, double expected) {
  if (expected == measured) return 0.0;
  return std::abs(measured - expected) / std::max(std::abs(expected), std::numeric_limits<double>::min());
}

}  // namespace orlicz
