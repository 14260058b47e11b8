#include "hbb/kernel.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "hbb/specfun.hpp"

namespace hbb {

namespace {

constexpr unsigned kProductLimit = 512;
constexpr unsigned kMaxTruncation = 50'000'000;

void check_dim(int dim) {
  if (dim < 2) throw std::invalid_argument("dimension must be at least 2");
}

bool lower_branch(double alpha, int dim) { return alpha <= -(1.0 + 0.5 * dim); }

// h_{j+1} / h_j.
double harmonic_dim_ratio(unsigned j, int dim) {
  if (dim == 2) return j == 0 ? 2.0 : 1.0;
  const double n = dim;
  const double jd = j;
  return (n + 2.0 * jd) / (n + 2.0 * jd - 2.0) * (n - 2.0 + jd) / (jd + 1.0);
}

}  // namespace

double gamma_step_ratio(unsigned k, double alpha, int dim) {
  check_dim(dim);
  const double kd = k;
  const double half = 0.5 * dim;
  if (!lower_branch(alpha, dim)) {
    return (1.0 + half + alpha + kd) / (half + kd);
  }
  const double a = 1.0 - (half + alpha);
  return (kd + 1.0) / (a + kd) * (kd + 1.0) / (half + kd);
}

double log_gamma_coef(unsigned k, double alpha, int dim) {
  check_dim(dim);
  if (k == 0) return 0.0;
  const double half = 0.5 * dim;
  const double kd = k;
  if (!lower_branch(alpha, dim)) {
    return log_pochhammer(1.0 + half + alpha, kd).log_abs -
           log_pochhammer(half, kd).log_abs;
  }
  return 2.0 * log_gamma(kd + 1.0).log_abs -
         log_pochhammer(1.0 - (half + alpha), kd).log_abs -
         log_pochhammer(half, kd).log_abs;
}

double gamma_coef(unsigned k, double alpha, int dim) {
  check_dim(dim);
  if (k <= kProductLimit) {
    double g = 1.0;
    for (unsigned j = 0; j < k; ++j) g *= gamma_step_ratio(j, alpha, dim);
    return g;
  }
  return std::exp(log_gamma_coef(k, alpha, dim));
}

double gamma_ratio(unsigned k, double s, double t, int dim) {
  check_dim(dim);
  if (t == 0.0 || k == 0) return 1.0;
  if (k <= kProductLimit) {
    double r = 1.0;
    for (unsigned j = 0; j < k; ++j) {
      r *= gamma_step_ratio(j, s + t, dim) / gamma_step_ratio(j, s, dim);
    }
    return r;
  }
  return std::exp(log_gamma_coef(k, s + t, dim) - log_gamma_coef(k, s, dim));
}

std::vector<double> gamma_table(double alpha, int dim, unsigned count) {
  std::vector<double> g(count);
  double cur = 1.0;
  for (unsigned k = 0; k < count; ++k) {
    g[k] = cur;
    cur *= gamma_step_ratio(k, alpha, dim);
  }
  return g;
}

double harmonic_dimension(unsigned k, int dim) {
  check_dim(dim);
  if (k == 0) return 1.0;
  if (dim == 2) return 2.0;
  const double n = dim;
  const double kd = k;
  // (n+2k-2)/(n-2) * (n-2)_k / k!
  const double log_h = std::log(n + 2.0 * kd - 2.0) - std::log(n - 2.0) +
                       log_pochhammer(n - 2.0, kd).log_abs -
                       log_gamma(kd + 1.0).log_abs;
  return std::exp(log_h);
}

double unit_zonal(unsigned k, int dim, double t) {
  check_dim(dim);
  t = std::clamp(t, -1.0, 1.0);
  if (k == 0) return 1.0;
  if (dim == 2) return 2.0 * std::cos(k * std::acos(t));
  const double n = dim;
  return (n + 2.0 * k - 2.0) / (n - 2.0) * gegenbauer(k, 0.5 * (n - 2.0), t);
}

void unit_zonal_sequence(int dim, double t, std::span<double> out) {
  check_dim(dim);
  if (out.empty()) return;
  t = std::clamp(t, -1.0, 1.0);
  out[0] = 1.0;
  if (out.size() == 1) return;
  if (dim == 2) {
    double prev = 1.0;
    double cur = t;
    for (std::size_t k = 1; k < out.size(); ++k) {
      out[k] = 2.0 * cur;
      const double next = 2.0 * t * cur - prev;
      prev = cur;
      cur = next;
    }
    return;
  }
  const double n = dim;
  gegenbauer_sequence(0.5 * (n - 2.0), t, out);
  for (std::size_t k = 1; k < out.size(); ++k) out[k] *= (n + 2.0 * k - 2.0) / (n - 2.0);
}

double cos_angle(PointView x, PointView y) {
  const double nx = std::sqrt(squared_norm(x));
  const double ny = std::sqrt(squared_norm(y));
  if (nx == 0.0 || ny == 0.0) return 1.0;
  return std::clamp(dot(x, y) / (nx * ny), -1.0, 1.0);
}

double zonal_harmonic(unsigned k, PointView x, PointView y) {
  if (x.size() != y.size()) throw std::invalid_argument("zonal_harmonic: dimension mismatch");
  const int dim = static_cast<int>(x.size());
  check_dim(dim);
  if (k == 0) return 1.0;
  // Homogeneous form of the three-term recurrence in s = x.y and r2 = |x|^2 |y|^2.
  const double s = dot(x, y);
  const double r2 = squared_norm(x) * squared_norm(y);
  double prev = 1.0;
  if (dim == 2) {
    double cur = s;
    for (unsigned j = 2; j <= k; ++j) {
      const double next = 2.0 * s * cur - r2 * prev;
      prev = cur;
      cur = next;
    }
    return 2.0 * cur;
  }
  const double n = dim;
  const double lambda = 0.5 * (n - 2.0);
  double cur = 2.0 * lambda * s;
  for (unsigned j = 2; j <= k; ++j) {
    const double jd = j;
    const double next = (2.0 * (jd + lambda - 1.0) * s * cur - (jd + 2.0 * lambda - 2.0) * r2 * prev) / jd;
    prev = cur;
    cur = next;
  }
  return (n + 2.0 * k - 2.0) / (n - 2.0) * cur;
}

unsigned truncation_degree(const KernelSpec& spec, double rx, double ry) {
  check_dim(spec.dim);
  if (!(spec.tol > 0.0)) throw std::invalid_argument("truncation_degree: tol must be positive");
  if (rx < 0.0 || ry < 0.0) throw std::invalid_argument("truncation_degree: negative radius");
  const double rho = rx * ry;
  if (rho >= 1.0) {
    throw DivergenceError("kernel series diverges for |x||y| >= 1");
  }
  if (rho == 0.0) return 0;
  const double log_rho = std::log(rho);
  const double log_tol = std::log(spec.tol);
  double log_gamma = 0.0;
  double log_h = 0.0;
  for (unsigned K = 0; K < kMaxTruncation; ++K) {
    // Term K+1 of the majorant and a ratio bound valid for every later term:
    // the gamma step ratio either decreases to 1 or stays below 1, and the
    // harmonic-dimension ratio decreases to 1 from above.
    log_gamma += std::log(gamma_step_ratio(K, spec.alpha, spec.dim));
    log_h += std::log(harmonic_dim_ratio(K, spec.dim));
    const double log_term = log_gamma + log_h + (K + 1.0) * log_rho;
    const double q = rho * std::max(1.0, gamma_step_ratio(K + 1, spec.alpha, spec.dim)) *
                     harmonic_dim_ratio(K + 1, spec.dim);
    if (q < 1.0 && log_term - std::log1p(-q) < log_tol) return K;
  }
  throw DivergenceError("truncation_degree: no admissible degree below the iteration cap");
}

double zonal_series(std::span<const double> coef, int dim, double rho, double t) {
  check_dim(dim);
  if (coef.empty()) return 0.0;
  t = std::clamp(t, -1.0, 1.0);
  double sum = coef[0];
  if (coef.size() == 1 || rho == 0.0) return sum;
  double power = 1.0;
  if (dim == 2) {
    // 2 T_k(t) by the Chebyshev recurrence.
    double prev = 1.0;
    double cur = t;
    for (std::size_t k = 1; k < coef.size(); ++k) {
      power *= rho;
      sum += coef[k] * power * 2.0 * cur;
      const double next = 2.0 * t * cur - prev;
      prev = cur;
      cur = next;
    }
    return sum;
  }
  const double n = dim;
  const double lambda = 0.5 * (n - 2.0);
  double prev = 1.0;
  double cur = 2.0 * lambda * t;
  for (std::size_t k = 1; k < coef.size(); ++k) {
    const double kd = static_cast<double>(k);
    power *= rho;
    sum += coef[k] * power * (n + 2.0 * kd - 2.0) / (n - 2.0) * cur;
    const double next =
        (2.0 * t * (kd + lambda) * cur - (kd + 2.0 * lambda - 1.0) * prev) / (kd + 1.0);
    prev = cur;
    cur = next;
  }
  return sum;
}

double kernel_eval(const KernelSpec& spec, PointView x, PointView y) {
  if (x.size() != y.size()) throw std::invalid_argument("kernel_eval: dimension mismatch");
  if (static_cast<int>(x.size()) != spec.dim) {
    throw std::invalid_argument("kernel_eval: point dimension differs from spec.dim");
  }
  const double rx = std::sqrt(squared_norm(x));
  const double ry = std::sqrt(squared_norm(y));
  if (rx > 1.0 || ry > 1.0) throw std::invalid_argument("kernel_eval: point outside the closed ball");
  if (rx >= 1.0 && ry >= 1.0) {
    throw DivergenceError("kernel_eval: both arguments on the boundary sphere");
  }
  const unsigned K = truncation_degree(spec, rx, ry);
  const auto g = gamma_table(spec.alpha, spec.dim, K + 1);
  return zonal_series(g, spec.dim, rx * ry, cos_angle(x, y));
}

}  // namespace hbb
