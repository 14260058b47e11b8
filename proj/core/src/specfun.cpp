#include "hbb/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <limits>
#include <string>

namespace hbb {

namespace {

// Products longer than this switch to the log-gamma route unless a is a pole.
constexpr double kMaxFiniteProduct = 256.0;

void check_gegenbauer_args(double lambda, double t) {
  if (!(lambda > -0.5)) {
    throw std::invalid_argument("gegenbauer: lambda must exceed -1/2");
  }
  if (!(t >= -1.0 && t <= 1.0)) {
    throw std::invalid_argument("gegenbauer: t must lie in [-1, 1]");
  }
}

}  // namespace

SignedLog log_gamma(double x) {
  if (is_nonpositive_integer(x)) {
    throw PoleError("log_gamma: pole at x = " + std::to_string(x));
  }
  int sign = 1;
  const double value = boost::math::lgamma(x, &sign);
  return {value, sign};
}

SignedLog log_pochhammer(double a, double b) {
  if (b == 0.0) return {0.0, 1};
  if (is_nonnegative_integer(b) && is_nonpositive_integer(a)) {
    // Finite product through a zero factor, or a ratio of two poles.
    if (a + b - 1.0 >= 0.0) return {-std::numeric_limits<double>::infinity(), 1};
    const double p = pochhammer(a, b);
    return {std::log(std::abs(p)), p < 0.0 ? -1 : 1};
  }
  const SignedLog num = log_gamma(a + b);
  const SignedLog den = log_gamma(a);
  return {num.log_abs - den.log_abs, num.sign * den.sign};
}

double pochhammer(double a, double b) {
  if (b == 0.0) return 1.0;
  if (is_nonnegative_integer(b) &&
      (b <= kMaxFiniteProduct || is_nonpositive_integer(a))) {
    const auto count = static_cast<long>(b);
    double p = 1.0;
    for (long j = 0; j < count; ++j) {
      p *= a + static_cast<double>(j);
      if (p == 0.0) break;
    }
    return p;
  }
  return log_pochhammer(a, b).value();
}

double gegenbauer(unsigned k, double lambda, double t) {
  check_gegenbauer_args(lambda, t);
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * lambda * t;
  for (unsigned j = 2; j <= k; ++j) {
    const double jd = j;
    const double next =
        (2.0 * t * (jd + lambda - 1.0) * cur - (jd + 2.0 * lambda - 2.0) * prev) / jd;
    prev = cur;
    cur = next;
  }
  return cur;
}

void gegenbauer_sequence(double lambda, double t, std::span<double> out) {
  check_gegenbauer_args(lambda, t);
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 2.0 * lambda * t;
  for (std::size_t j = 2; j < out.size(); ++j) {
    const double jd = static_cast<double>(j);
    out[j] = (2.0 * t * (jd + lambda - 1.0) * out[j - 1] -
              (jd + 2.0 * lambda - 2.0) * out[j - 2]) /
             jd;
  }
}

}  // namespace hbb
