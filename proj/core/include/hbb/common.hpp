#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace hbb {

/// A point of R^n stored by value.
using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Raised when a Gamma-function argument lands on a pole.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a series or integral is evaluated where it does not converge.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double squared_norm(PointView x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

inline double dot(PointView x, PointView y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

inline bool is_nonnegative_integer(double x) {
  return x >= 0.0 && std::floor(x) == x;
}

/// An exponent p in [1, inf] where inf is a distinguished value rather than
/// a floating-point infinity, so 1/p and (n + a)/p stay well defined.
class ExtExponent {
 public:
  /// Throws std::invalid_argument unless p >= 1. p = +inf gives infinity().
  explicit ExtExponent(double p);

  static ExtExponent infinity() { return ExtExponent(); }

  /// Parses "inf" (also "infinity", "oo") or a decimal number >= 1.
  static ExtExponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  bool is_one() const { return !infinite_ && value_ == 1.0; }

  /// Finite value; +inf for the distinguished value.
  double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  /// 1/p, with 1/inf = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

  /// x / p with x / inf = 0.
  double divide(double x) const { return infinite_ ? 0.0 : x / value_; }

  /// "inf" or the value with 17 significant digits.
  std::string to_string() const;

  friend bool operator==(const ExtExponent& a, const ExtExponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  ExtExponent() : infinite_(true) {}

  bool infinite_ = false;
  double value_ = 1.0;
};

/// Hoelder conjugate: 1/p + 1/p' = 1, with 1' = inf and inf' = 1.
ExtExponent conjugate(const ExtExponent& p);

/// %.17g formatting shared by every textual output.
std::string format_double(double x);

}  // namespace hbb
