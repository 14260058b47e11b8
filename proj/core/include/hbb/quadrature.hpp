#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hbb/common.hpp"

namespace hbb {

/// Nodes and weights of a one-dimensional rule.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^a (1+x)^b, a, b > -1,
/// built by Golub-Welsch. Exact for polynomials of degree <= 2n-1.
GaussRule gauss_jacobi(int n, double a, double b);

/// Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

/// User-facing resolution knobs, shared by the CLI flags of the same names.
struct QuadratureConfig {
  int radial_nodes = 128;
  /// Circle nodes for dim 2; azimuthal nodes for dim 3 (with half as many polar nodes).
  int sphere_nodes = 256;
  /// Sample count of the Monte Carlo sphere rule used for dim >= 4.
  int mc_samples = 4096;
  std::uint64_t seed = 20240601;
};

enum class SphereRuleKind { Trapezoid, ProductGauss, MonteCarlo };

/// Rule on the unit sphere for the normalized surface measure (weights sum to 1).
struct SphereRule {
  int dim = 2;
  SphereRuleKind kind = SphereRuleKind::Trapezoid;
  /// Unit vectors stored contiguously, dim entries each.
  std::vector<double> points;
  std::vector<double> weights;
  /// Spherical polynomials up to this degree are integrated exactly; -1 for Monte Carlo.
  int exact_degree = -1;

  std::size_t size() const { return weights.size(); }
  PointView point(std::size_t i) const {
    return PointView(points.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
  }
};

SphereRule make_sphere_rule(int dim, const QuadratureConfig& config);

/// Product rule for integrals over the ball against (1-|x|^2)^jacobi_exponent dnu.
///
/// The radial part is Gauss-Jacobi in u = r^2 for the weight
/// u^{dim/2-1} (1-u)^jacobi_exponent, so integrable boundary singularities
/// are absorbed into the weights rather than sampled.
class BallQuadrature {
 public:
  BallQuadrature(int dim, const QuadratureConfig& config, double jacobi_exponent = 0.0);

  int dim() const { return dim_; }
  double jacobi_exponent() const { return jacobi_exponent_; }
  const QuadratureConfig& config() const { return config_; }
  const std::vector<double>& radii() const { return radii_; }
  /// sum_i radial_weights[i] F(radii[i]) ~ int_B F(|x|) (1-|x|^2)^jacobi_exponent dnu.
  const std::vector<double>& radial_weights() const { return radial_weights_; }
  const SphereRule& sphere() const { return sphere_; }
  /// Polynomials in u = r^2 up to this degree are integrated exactly by the radial part.
  int radial_exact_degree() const { return 2 * static_cast<int>(radii_.size()) - 1; }
  std::size_t size() const { return radii_.size() * sphere_.size(); }

 private:
  int dim_;
  double jacobi_exponent_;
  QuadratureConfig config_;
  std::vector<double> radii_;
  std::vector<double> radial_weights_;
  SphereRule sphere_;
};

using BallIntegrand = std::function<double(PointView)>;

struct IntegralEstimate {
  double value = 0.0;
  /// Monte Carlo standard error of the sphere part; 0 for deterministic rules.
  double std_error = 0.0;
  bool finite = true;
};

/// int_B f(x) (1-|x|^2)^weight_exponent dnu(x) by the product rule. When the
/// rule was built for a different exponent the ratio of weights is sampled.
IntegralEstimate integrate_ball(const BallIntegrand& f, double weight_exponent,
                                const BallQuadrature& rule);

/// V_alpha = Gamma(n/2+1) Gamma(alpha+1) / Gamma(n/2+alpha+1) for alpha > -1.
/// Throws std::domain_error for alpha <= -1.
double normalization_V(double alpha, int dim);

/// V_alpha with the convention V_alpha = 1 for alpha <= -1.
double normalization_V_or_one(double alpha, int dim);

/// Weighted norm of a sampled function.
struct NormEstimate {
  double value = 0.0;
  bool divergent = false;
  double std_error = 0.0;
};

/// ||f||_{L^p_alpha} for finite p (requires alpha > -1), or the grid supremum of
/// (1-|x|^2)^alpha |f(x)| over the origin and the rule nodes for p = inf
/// (a lower estimate of the essential supremum).
NormEstimate lp_norm(const BallIntegrand& f, const ExtExponent& p, double alpha,
                     const BallQuadrature& rule);

/// Partial integrals of int_0^1 (1-s)^kappa s^a (1 + log(1/s))^{-v} ds over the
/// cut-offs s >= exp(-W_j), W_j = 2^j. Cutting at a smaller s is a finer radial
/// resolution of the ball, so the partials form a refinement ladder.
struct LogRadialLadder {
  std::vector<double> cutoffs;
  std::vector<double> partials;
  /// Numerical verdict from the ladder: non-finite partials, or dyadic
  /// increments that stop shrinking.
  bool divergent = false;
  /// Limit of the ladder (with the closed-form tail when a = -1); +inf if divergent.
  double value = 0.0;
};

/// Requires kappa > -1.
LogRadialLadder log_moment_ladder(double kappa, double a, double v);

/// Analytic convergence test for the ladder integral: a > -1, or a = -1 and v > 1.
bool log_moment_converges(double a, double v);

/// int_0^1 (1-t^2)^u (1 + log(1/(1-t^2)))^{-v} dt. The finite/divergent decision
/// is analytic; the value is numerical. nullopt means divergent.
std::optional<double> radial_log_integral(double u, double v);

/// Tensor rule for functions on the ball that depend only on |x| and on the
/// angle to a fixed axis, graded toward the boundary and toward the axis.
struct AxisymmetricRule {
  int dim = 2;
  std::vector<double> radii;
  /// Includes (1-r^2)^weight_exponent and the radial part of dnu.
  std::vector<double> radial_weights;
  /// Cosines of the angle to the axis.
  std::vector<double> cosines;
  /// Normalized angular measure on the sphere; sums to 1.
  std::vector<double> angular_weights;
};

/// boundary_gap and axis_angle set the finest panel scale near r = 1 and
/// near the axis; panels double in size away from them.
AxisymmetricRule axisymmetric_rule(int dim, double weight_exponent, int nodes_per_panel,
                                   double boundary_gap, double axis_angle);

/// Pairwise summation, so the result depends only on the order of values.
double pairwise_sum(std::span<const double> values);

}  // namespace hbb
