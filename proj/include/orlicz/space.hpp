#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace orlicz {

/// Ambient dimension and (non-integer) smoothness.
class SpaceParams {
 public:
  SpaceParams(int n, double s) : n_(n), s_(s) {
    if (n < 1) throw std::invalid_argument("SpaceParams: dimension must be positive");
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("SpaceParams: smoothness must be positive");
    if (std::floor(s) == s) throw std::invalid_argument("SpaceParams: smoothness must not be an integer");
  }

  int n() const { return n_; }
  double s() const { return s_; }
  int int_part() const { return static_cast<int>(std::floor(s_)); }
  double frac_part() const { return s_ - std::floor(s_); }

  /// s in (0, n) and not an integer.
  bool admissible_order() const { return s_ < static_cast<double>(n_); }

  /// n / s, the critical exponent.
  double critical() const { return static_cast<double>(n_) / s_; }
  /// s / (n - s), the power applied to t / A(t) in the regime integrals.
  double regime_power() const { return s_ / (static_cast<double>(n_) - s_); }

 private:
  int n_;
  double s_;
};

}  // namespace orlicz
