#pragma once

#include <span>
#include <vector>

#include "hbb/common.hpp"

namespace hbb {

/// Parameters of a truncated evaluation of the kernel R_alpha on the ball of R^dim.
struct KernelSpec {
  double alpha = 0.0;
  int dim = 2;
  /// Absolute bound on the discarded tail of the zonal series.
  double tol = 1e-10;
};

/// gamma_k(alpha): the degree-k coefficient of R_alpha. Positive for every k.
double gamma_coef(unsigned k, double alpha, int dim);

/// log gamma_k(alpha), usable for k in the thousands.
double log_gamma_coef(unsigned k, double alpha, int dim);

/// gamma_{k+1}(alpha) / gamma_k(alpha).
double gamma_step_ratio(unsigned k, double alpha, int dim);

/// gamma_k(s+t) / gamma_k(s), the degree-k multiplier of D_s^t.
double gamma_ratio(unsigned k, double s, double t, int dim);

/// Dimension of the space of degree-k spherical harmonics on S^{dim-1},
/// which equals Z_k(zeta, zeta) for unit zeta.
double harmonic_dimension(unsigned k, int dim);

/// Z_k(zeta, eta) for unit vectors with zeta . eta = t.
double unit_zonal(unsigned k, int dim, double t);

/// Fills out[k] = unit_zonal(k, dim, t) for k < out.size() with one recurrence.
void unit_zonal_sequence(int dim, double t, std::span<double> out);

/// Z_k(x, y) extended homogeneously of degree k in each argument.
double zonal_harmonic(unsigned k, PointView x, PointView y);

/// Smallest K whose certified tail sum_{k>K} gamma_k h_k (rx ry)^k is below spec.tol.
/// Throws DivergenceError when rx * ry >= 1.
unsigned truncation_degree(const KernelSpec& spec, double rx, double ry);

/// R_alpha(x, y) summed to truncation_degree; absolute error at most spec.tol.
double kernel_eval(const KernelSpec& spec, PointView x, PointView y);

/// sum_k coef[k] rho^k Z_k(zeta, eta) with zeta . eta = t, for k < coef.size().
double zonal_series(std::span<const double> coef, int dim, double rho, double t);

/// gamma_0(alpha), ..., gamma_{count-1}(alpha) by the step-ratio recurrence.
std::vector<double> gamma_table(double alpha, int dim, unsigned count);

/// Cosine of the angle between x and y, or 1 if either is the origin.
double cos_angle(PointView x, PointView y);

}  // namespace hbb
