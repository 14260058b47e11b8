#pragma once

#include <variant>

#include "hbb/common.hpp"
#include "hbb/expansion.hpp"
#include "hbb/kernel.hpp"
#include "hbb/quadrature.hpp"

namespace hbb {

/// f_uv(x) = (1-|x|^2)^u (1 + log(1/(1-|x|^2)))^{-v}. Radial and positive.
struct TestFunction {
  double u = 0.0;
  double v = 0.0;
};

/// Requires |x| < 1.
double test_function_eval(const TestFunction& tf, PointView x);

/// Inputs accepted by the operators. Radial test functions are integrated in
/// one dimension, everything else by the ball rule.
using BallFunction = std::variant<TestFunction, HarmonicExpansion, BallIntegrand>;

double evaluate(const BallFunction& f, PointView x);

struct OperatorValue {
  double value = 0.0;
  bool divergent = false;
};

/// Ball rule whose radial weight folds (1-|y|^2)^b when b > -1.
BallQuadrature operator_rule(int dim, const QuadratureConfig& config, double b);

/// T_bc f(x) = int_B R_c(x,y) f(y) (1-|y|^2)^b dnu(y), |x| < 1.
///
/// spec.tol bounds the kernel truncation; spec.alpha is ignored (c is the kernel
/// parameter) and spec.dim must match x. For a TestFunction T_bc f is the
/// constant int_B f (1-|y|^2)^b dnu, evaluated by the log-radial ladder. For
/// b <= -1 and other inputs the ball rule cannot absorb the weight, and the
/// result is flagged divergent when it keeps changing under radial refinement.
OperatorValue apply_T(double b, double c, const BallFunction& f, PointView x,
                      const KernelSpec& spec, const BallQuadrature& rule);

/// Q_alpha f(x) = apply_T(alpha, alpha, f, x) / V_alpha, alpha > -1.
OperatorValue projection_Q(double alpha, const BallFunction& f, PointView x,
                           const KernelSpec& spec, const BallQuadrature& rule);

/// D_c^t (T_bc f)(x), evaluated as T_{b,c+t} f(x).
OperatorValue apply_T_derivative(double b, double c, double t, const BallFunction& f,
                                 PointView x, const KernelSpec& spec, const BallQuadrature& rule);

/// T_bc on an expansion, exactly: Z_k(., y) maps to V_b gamma_k(c)/gamma_k(b) Z_k(., y).
/// Requires b > -1; throws DivergenceError otherwise unless f is empty.
HarmonicExpansion apply_T_spectral(double b, double c, const HarmonicExpansion& f);

/// A Besov or Bloch norm of g = T_bc f together with the (s, t) it was computed with.
struct SpaceNorm {
  double value = 0.0;
  double s = 0.0;
  int t = 0;
  bool divergent = false;
  double std_error = 0.0;
};

/// Smallest integer t >= 0 with beta + q t > -1.
int besov_order(double q, double beta);
/// Smallest integer t >= 0 with beta + t > 0.
int bloch_order(double beta);

/// ||(1-|x|^2)^t T_{b,c+t} f||_{L^q_beta} with s = c and t = besov_order(q, beta).
/// V_beta is replaced by 1 for beta <= -1, as for the measures themselves.
/// The outer integral uses `rule`, whose jacobi exponent should be beta + q t.
SpaceNorm besov_norm(double b, double c, const BallFunction& f, double q, double beta,
                     const KernelSpec& spec, const BallQuadrature& rule);

/// Grid supremum of (1-|x|^2)^{beta+t} |T_{b,c+t} f(x)| with t = bloch_order(beta).
SpaceNorm bloch_norm(double b, double c, const BallFunction& f, double beta,
                     const KernelSpec& spec, const BallQuadrature& rule);

/// ||f_uv||_{L^p_alpha} (||.||_{L^inf_alpha}-type supremum for p = inf) from the
/// one-dimensional radial ladder. alpha <= -1 uses V = 1.
NormEstimate test_function_norm(const TestFunction& tf, const ExtExponent& p, double alpha,
                                int dim);

/// Analytic membership of f_uv in L^p_alpha (p = inf: the weighted sup space).
bool test_function_in_lp(const TestFunction& tf, const ExtExponent& p, double alpha);

/// Analytic finiteness of T_bc f_uv(0): b+u > -1, or b+u = -1 and v > 1.
bool test_function_T_finite(double b, const TestFunction& tf);

}  // namespace hbb
