#include "hbb/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numbers>
#include <random>

#include "hbb/specfun.hpp"

namespace hbb {

namespace {

constexpr int kPanelNodes = 32;
constexpr int kLadderRungs = 40;

void check_dim(int dim) {
  if (dim < 2) throw std::invalid_argument("dimension must be at least 2");
}

// Affine map of a [-1, 1] rule onto [lo, hi].
void append_mapped(const GaussRule& rule, double lo, double hi, std::vector<double>& nodes,
                   std::vector<double>& weights) {
  const double half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    nodes.push_back(lo + half * (rule.nodes[i] + 1.0));
    weights.push_back(half * rule.weights[i]);
  }
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

GaussRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      diag(k) = (b - a) / (a + b + 2.0);
    } else {
      const double s = 2.0 * k + a + b;
      diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < n; ++k) {
    const double kd = k;
    const double s = 2.0 * kd + a + b;
    double beta = 0.0;
    if (k == 1) {
      // The general formula has a removable 0/0 when a + b = -1.
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      beta = 4.0 * kd * (kd + a) * (kd + b) * (kd + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(beta);
  }
  const double log_mu0 = (a + b + 1.0) * std::numbers::ln2 + log_gamma(a + 1.0).log_abs +
                         log_gamma(b + 1.0).log_abs - log_gamma(a + b + 2.0).log_abs;
  const double mu0 = std::exp(log_mu0);

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigen solver failed");
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

GaussRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

SphereRule make_sphere_rule(int dim, const QuadratureConfig& config) {
  check_dim(dim);
  SphereRule rule;
  rule.dim = dim;
  if (dim == 2) {
    const int m = std::max(config.sphere_nodes, 1);
    rule.kind = SphereRuleKind::Trapezoid;
    rule.exact_degree = m - 1;
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / m;
      rule.points.push_back(std::cos(phi));
      rule.points.push_back(std::sin(phi));
      rule.weights.push_back(1.0 / m);
    }
    return rule;
  }
  if (dim == 3) {
    const int m = std::max(config.sphere_nodes, 2);
    const int polar = std::max(m / 2, 1);
    rule.kind = SphereRuleKind::ProductGauss;
    rule.exact_degree = std::min(m - 1, 2 * polar - 1);
    const GaussRule gl = gauss_legendre(polar);
    for (int i = 0; i < polar; ++i) {
      const double t = gl.nodes[i];
      const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
      for (int j = 0; j < m; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / m;
        rule.points.push_back(st * std::cos(phi));
        rule.points.push_back(st * std::sin(phi));
        rule.points.push_back(t);
        rule.weights.push_back(0.5 * gl.weights[i] / m);
      }
    }
    return rule;
  }
  const int samples = std::max(config.mc_samples, 2);
  rule.kind = SphereRuleKind::MonteCarlo;
  rule.exact_degree = -1;
  std::mt19937_64 gen(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim);
  for (int s = 0; s < samples; ++s) {
    double r2 = 0.0;
    do {
      r2 = 0.0;
      for (auto& c : v) {
        c = normal(gen);
        r2 += c * c;
      }
    } while (r2 == 0.0);
    const double inv = 1.0 / std::sqrt(r2);
    for (double c : v) rule.points.push_back(c * inv);
    rule.weights.push_back(1.0 / samples);
  }
  return rule;
}

BallQuadrature::BallQuadrature(int dim, const QuadratureConfig& config, double jacobi_exponent)
    : dim_(dim), jacobi_exponent_(jacobi_exponent), config_(config) {
  check_dim(dim);
  if (config.radial_nodes < 1) throw std::invalid_argument("radial_nodes must be positive");
  if (!(jacobi_exponent > -1.0)) {
    throw std::invalid_argument("BallQuadrature: jacobi_exponent must exceed -1");
  }
  const double half_n = 0.5 * dim;
  // x = 2u - 1: (1-x)^gamma (1+x)^{n/2-1} carries the u-weight up to 2^{gamma+n/2}.
  const GaussRule gj = gauss_jacobi(config.radial_nodes, jacobi_exponent, half_n - 1.0);
  const double scale = half_n * std::exp(-(jacobi_exponent + half_n) * std::numbers::ln2);
  radii_.reserve(gj.nodes.size());
  for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
    const double u = std::clamp(0.5 * (1.0 + gj.nodes[i]), 0.0, 1.0);
    radii_.push_back(std::sqrt(u));
    radial_weights_.push_back(scale * gj.weights[i]);
  }
  sphere_ = make_sphere_rule(dim, config);
}

IntegralEstimate integrate_ball(const BallIntegrand& f, double weight_exponent,
                                const BallQuadrature& rule) {
  const int dim = rule.dim();
  const auto& radii = rule.radii();
  const auto& rw = rule.radial_weights();
  const double shift = weight_exponent - rule.jacobi_exponent();
  std::vector<double> radial_factor(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    radial_factor[i] = rw[i] * (shift == 0.0 ? 1.0 : std::pow(1.0 - radii[i] * radii[i], shift));
  }
  const SphereRule& sphere = rule.sphere();
  std::vector<double> per_direction(sphere.size());
  std::vector<double> terms(radii.size());
  Point x(dim);
  bool finite = true;
  for (std::size_t j = 0; j < sphere.size(); ++j) {
    const PointView zeta = sphere.point(j);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      for (int d = 0; d < dim; ++d) x[d] = radii[i] * zeta[d];
      terms[i] = radial_factor[i] * f(x);
    }
    per_direction[j] = pairwise_sum(terms);
    if (!std::isfinite(per_direction[j])) finite = false;
  }
  IntegralEstimate est;
  std::vector<double> weighted(sphere.size());
  for (std::size_t j = 0; j < sphere.size(); ++j) weighted[j] = sphere.weights[j] * per_direction[j];
  est.value = pairwise_sum(weighted);
  est.finite = finite && std::isfinite(est.value);
  if (sphere.kind == SphereRuleKind::MonteCarlo && sphere.size() > 1) {
    const double mean = est.value;
    double ss = 0.0;
    for (double g : per_direction) ss += (g - mean) * (g - mean);
    const double n = static_cast<double>(sphere.size());
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return est;
}

double normalization_V(double alpha, int dim) {
  check_dim(dim);
  if (!(alpha > -1.0)) throw std::domain_error("normalization_V: requires alpha > -1");
  const double h = 0.5 * dim;
  return std::exp(log_gamma(h + 1.0).log_abs + log_gamma(alpha + 1.0).log_abs -
                  log_gamma(h + alpha + 1.0).log_abs);
}

double normalization_V_or_one(double alpha, int dim) {
  return alpha > -1.0 ? normalization_V(alpha, dim) : 1.0;
}

NormEstimate lp_norm(const BallIntegrand& f, const ExtExponent& p, double alpha,
                     const BallQuadrature& rule) {
  NormEstimate out;
  if (p.is_infinite()) {
    const int dim = rule.dim();
    Point x(dim, 0.0);
    double sup = std::abs(f(x));
    const SphereRule& sphere = rule.sphere();
    for (std::size_t j = 0; j < sphere.size(); ++j) {
      const PointView zeta = sphere.point(j);
      for (double r : rule.radii()) {
        for (int d = 0; d < dim; ++d) x[d] = r * zeta[d];
        const double w = alpha == 0.0 ? 1.0 : std::pow(1.0 - r * r, alpha);
        sup = std::max(sup, w * std::abs(f(x)));
      }
    }
    out.value = sup;
    out.divergent = !std::isfinite(sup);
    return out;
  }
  if (!(alpha > -1.0)) {
    throw std::domain_error("lp_norm: finite p requires alpha > -1 (use integrate_ball directly)");
  }
  const double pv = p.value();
  const auto est = integrate_ball([&](PointView x) { return std::pow(std::abs(f(x)), pv); },
                                  alpha, rule);
  const double V = normalization_V(alpha, rule.dim());
  out.value = std::pow(est.value / V, 1.0 / pv);
  out.divergent = !est.finite || !std::isfinite(out.value);
  out.std_error = est.std_error > 0.0 && est.value > 0.0
                      ? out.value * est.std_error / (pv * est.value)
                      : 0.0;
  return out;
}

bool log_moment_converges(double a, double v) { return a > -1.0 || (a == -1.0 && v > 1.0); }

LogRadialLadder log_moment_ladder(double kappa, double a, double v) {
  if (!(kappa > -1.0)) throw std::invalid_argument("log_moment_ladder: kappa must exceed -1");
  const double rate = a + 1.0;
  // log of the integrand after s = exp(-w), without the w^kappa factor near 0.
  auto log_phi = [&](double w) {
    const double one_minus = -std::expm1(-w);
    return kappa * std::log(one_minus / w) - rate * w - v * std::log1p(w);
  };
  auto log_g = [&](double w) {
    return kappa * std::log(-std::expm1(-w)) - rate * w - v * std::log1p(w);
  };
  const double max_piece = rate != 0.0 ? 4.0 / std::abs(rate) : 1e300;
  static const GaussRule gl = gauss_legendre(kPanelNodes);

  auto smooth_panel = [&](double lo, double hi) {
    const int pieces = static_cast<int>(std::min(1e7, std::ceil((hi - lo) / max_piece)));
    const double len = (hi - lo) / std::max(pieces, 1);
    double total = 0.0;
    for (int p = 0; p < std::max(pieces, 1); ++p) {
      const double plo = lo + p * len;
      double piece = 0.0;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double w = plo + 0.5 * len * (gl.nodes[i] + 1.0);
        piece += 0.5 * len * gl.weights[i] * std::exp(log_g(w));
      }
      total += piece;
      if (!std::isfinite(total)) break;
    }
    return total;
  };

  // [0, 1]: w^kappa absorbed by Gauss-Jacobi on [0, h], the rest smooth.
  const double h = std::min(1.0, max_piece);
  const GaussRule gj = gauss_jacobi(kPanelNodes, 0.0, kappa);
  double first = 0.0;
  const double scale = std::pow(0.5 * h, kappa + 1.0);
  for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
    const double w = 0.5 * h * (gj.nodes[i] + 1.0);
    first += scale * gj.weights[i] * std::exp(log_phi(w));
  }
  if (h < 1.0) first += smooth_panel(h, 1.0);

  LogRadialLadder ladder;
  double partial = first;
  ladder.cutoffs.push_back(1.0);
  ladder.partials.push_back(partial);
  bool saturated = false;
  for (int j = 0; j < kLadderRungs; ++j) {
    const double lo = std::ldexp(1.0, j);
    const double hi = 2.0 * lo;
    double piece = 0.0;
    if (!saturated) {
      piece = smooth_panel(lo, hi);
      // Past the peak of w^{-v} e^{-rate w} the remaining tail is below the last piece.
      if (rate > 0.0 && lo > 2.0 * std::max(0.0, -v) / rate + 1.0 &&
          piece <= 1e-18 * std::abs(partial)) {
        saturated = true;
      }
    }
    partial += piece;
    ladder.cutoffs.push_back(hi);
    ladder.partials.push_back(std::isfinite(partial) ? partial
                                                     : std::numeric_limits<double>::infinity());
  }

  const std::size_t n = ladder.partials.size();
  const double last = ladder.partials[n - 1];
  const double inc_last = ladder.partials[n - 1] - ladder.partials[n - 2];
  const double inc_prev = ladder.partials[n - 2] - ladder.partials[n - 3];
  ladder.divergent = !std::isfinite(last) || (inc_last > 0.0 && inc_last >= inc_prev);
  if (ladder.divergent) {
    ladder.value = std::numeric_limits<double>::infinity();
  } else {
    double tail = 0.0;
    if (rate == 0.0 && v > 1.0) {
      tail = std::pow(1.0 + ladder.cutoffs.back(), 1.0 - v) / (v - 1.0);
    }
    ladder.value = last + tail;
  }
  return ladder;
}

std::optional<double> radial_log_integral(double u, double v) {
  if (!log_moment_converges(u, v)) return std::nullopt;
  return 0.5 * log_moment_ladder(-0.5, u, v).value;
}

AxisymmetricRule axisymmetric_rule(int dim, double weight_exponent, int nodes_per_panel,
                                   double boundary_gap, double axis_angle) {
  check_dim(dim);
  if (!(weight_exponent > -1.0)) {
    throw std::invalid_argument("axisymmetric_rule: weight exponent must exceed -1");
  }
  if (nodes_per_panel < 1) throw std::invalid_argument("axisymmetric_rule: need nodes per panel");
  AxisymmetricRule rule;
  rule.dim = dim;
  const double n = dim;
  const GaussRule gl = gauss_legendre(nodes_per_panel);

  // Radial part in sigma = 1 - r: n (1-sigma)^{n-1} sigma^g (2-sigma)^g dsigma.
  const double g = weight_exponent;
  const double h0 = std::min(std::max(boundary_gap, 1e-12), 1.0) / 8.0;
  {
    const GaussRule gj = gauss_jacobi(nodes_per_panel, 0.0, g);
    const double scale = std::pow(0.5 * h0, g + 1.0);
    for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
      const double sigma = 0.5 * h0 * (gj.nodes[i] + 1.0);
      rule.radii.push_back(1.0 - sigma);
      rule.radial_weights.push_back(scale * gj.weights[i] * n * std::pow(1.0 - sigma, n - 1.0) *
                                    std::pow(2.0 - sigma, g));
    }
  }
  for (double lo = h0; lo < 1.0; lo *= 2.0) {
    const double hi = std::min(2.0 * lo, 1.0);
    std::vector<double> nodes, weights;
    append_mapped(gl, lo, hi, nodes, weights);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double sigma = nodes[i];
      rule.radii.push_back(1.0 - sigma);
      rule.radial_weights.push_back(weights[i] * n * std::pow(1.0 - sigma, n - 1.0) *
                                    std::pow(sigma * (2.0 - sigma), g));
    }
  }

  // Angular part: sin^{n-2}(theta) dtheta on [0, pi], normalized.
  const double norm = std::exp(log_gamma(0.5 * n).log_abs - 0.5 * std::log(std::numbers::pi) -
                               log_gamma(0.5 * (n - 1.0)).log_abs);
  const double a0 = std::min(std::max(axis_angle, 1e-12), std::numbers::pi) / 8.0;
  std::vector<double> edges{0.0};
  for (double e = a0; e < std::numbers::pi; e *= 2.0) edges.push_back(e);
  edges.push_back(std::numbers::pi);
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    std::vector<double> nodes, weights;
    append_mapped(gl, edges[p], edges[p + 1], nodes, weights);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      rule.cosines.push_back(std::cos(nodes[i]));
      rule.angular_weights.push_back(norm * weights[i] * std::pow(std::sin(nodes[i]), n - 2.0));
    }
  }
  return rule;
}

}  // namespace hbb
