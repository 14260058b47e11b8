#include "hbb/probe.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numbers>

#include "hbb/kernel.hpp"
#include "hbb/specfun.hpp"

namespace hbb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Norm in the target space of the constant function 1 (inf if the constant is not in it).
double constant_target_norm(const OperatorParams& prm) {
  switch (prm.target) {
    case TargetKind::BergmanBesov: {
      const double q = prm.q.value();
      const int t = besov_order(q, prm.beta);
      const double w = prm.beta + q * t;
      return std::pow(normalization_V(w, prm.dim) / normalization_V_or_one(prm.beta, prm.dim), 1.0 / q);
    }
    case TargetKind::Lebesgue: return prm.beta > -1.0 ? 1.0 : kInf;
    case TargetKind::Bloch:
    case TargetKind::BoundedHarmonic: return 1.0;
    case TargetKind::WeightedLinf: return prm.beta >= 0.0 ? 1.0 : kInf;
  }
  return kInf;
}

bool first_condition_strict(const OperatorParams& prm) {
  if (prm.p.is_one()) return prm.alpha < prm.b;
  return first_condition(prm);
}

// Lower end of L^p_alpha membership for f_u0.
double membership_u(const OperatorParams& prm) {
  return prm.p.is_infinite() ? -prm.alpha : -(1.0 + prm.alpha) / prm.p.value();
}

// Weighted norm of x -> R_gamma(x, rho e1) on a rule graded toward r = 1 and the axis:
// (int |R|^p (1-|x|^2)^weight dnu / V)^{1/p}, or sup (1-|x|^2)^weight |R| for p = inf.
double kernel_peak_norm(int dim, double gamma, double rho, const ExtExponent& p, double weight,
                        double V, int nodes_per_panel, double tol) {
  const double gap = 1.0 - rho;
  const AxisymmetricRule rule =
      axisymmetric_rule(dim, p.is_infinite() ? 0.0 : weight, nodes_per_panel, gap, gap);
  KernelSpec ks{gamma, dim, tol};
  std::vector<unsigned> degree(rule.radii.size());
  unsigned kmax = 0;
  for (std::size_t i = 0; i < rule.radii.size(); ++i) {
    degree[i] = truncation_degree(ks, rule.radii[i], rho);
    kmax = std::max(kmax, degree[i]);
  }
  const auto g = gamma_table(gamma, dim, kmax + 1);
  if (p.is_infinite()) {
    double sup = 1.0;  // R(0, a) = 1
    for (std::size_t i = 0; i < rule.radii.size(); ++i) {
      const double r = rule.radii[i];
      const double w = weight == 0.0 ? 1.0 : std::pow(1.0 - r * r, weight);
      const std::span<const double> coef(g.data(), degree[i] + 1);
      for (double t : rule.cosines) {
        sup = std::max(sup, w * std::abs(zonal_series(coef, dim, r * rho, t)));
      }
    }
    return sup;
  }
  const double pv = p.value();
  std::vector<double> radial(rule.radii.size());
  std::vector<double> angular(rule.cosines.size());
  for (std::size_t i = 0; i < rule.radii.size(); ++i) {
    const std::span<const double> coef(g.data(), degree[i] + 1);
    for (std::size_t j = 0; j < rule.cosines.size(); ++j) {
      const double val = zonal_series(coef, dim, rule.radii[i] * rho, rule.cosines[j]);
      angular[j] = rule.angular_weights[j] * std::pow(std::abs(val), pv);
    }
    radial[i] = rule.radial_weights[i] * pairwise_sum(angular);
  }
  return std::pow(pairwise_sum(radial) / V, 1.0 / pv);
}

// Exponent shift making (1-|y|^2)^s R_{b+s}(., a) and its T_bc image well inside every space.
double peak_shift(const OperatorParams& prm) {
  const double member = prm.p.is_infinite() ? -prm.alpha : (-1.0 - prm.alpha) / prm.p.value();
  return std::max(-1.0 - prm.b, member) + 1.0;
}

RatioFamily peak_family(const OperatorParams& prm, const ProbeConfig& cfg) {
  RatioFamily fam;
  fam.name = "kernel-peak";
  const int dim = prm.dim;
  const int npp = std::max(4, cfg.quadrature.radial_nodes / 4);
  const double s = peak_shift(prm);
  const double B = prm.b + s;
  const double VB = normalization_V(B, dim);
  const double Va = normalization_V_or_one(prm.alpha, dim);
  const double Vb = normalization_V_or_one(prm.beta, dim);
  const double src_weight = prm.p.is_infinite() ? prm.alpha + s : prm.alpha + prm.p.value() * s;
  for (int j = 1; j <= 6; ++j) {
    const double rho = 1.0 - std::ldexp(1.0, -j);
    const double src = kernel_peak_norm(dim, B, rho, prm.p, src_weight, Va, npp, cfg.kernel_tol);
    double tgt = kInf;
    switch (prm.target) {
      case TargetKind::BergmanBesov: {
        const double q = prm.q.value();
        const int t = besov_order(q, prm.beta);
        tgt = kernel_peak_norm(dim, prm.c + t, rho, prm.q, prm.beta + q * t, Vb, npp, cfg.kernel_tol);
        break;
      }
      case TargetKind::Lebesgue:
        if (prm.beta > -1.0) tgt = kernel_peak_norm(dim, prm.c, rho, prm.q, prm.beta, Vb, npp, cfg.kernel_tol);
        break;
      case TargetKind::Bloch: {
        const int t = bloch_order(prm.beta);
        tgt = kernel_peak_norm(dim, prm.c + t, rho, ExtExponent::infinity(), prm.beta + t, 1.0, npp,
                               cfg.kernel_tol);
        break;
      }
      case TargetKind::BoundedHarmonic:
        tgt = kernel_peak_norm(dim, prm.c, rho, ExtExponent::infinity(), 0.0, 1.0, npp, cfg.kernel_tol);
        break;
      case TargetKind::WeightedLinf:
        if (prm.beta >= 0.0) {
          tgt = kernel_peak_norm(dim, prm.c, rho, ExtExponent::infinity(), prm.beta, 1.0, npp,
                                 cfg.kernel_tol);
        }
        break;
    }
    fam.parameter.push_back(j);
    fam.ratios.push_back(VB * tgt / src);
  }
  return fam;
}

// log of int_S |Z_k(zeta, e1)|^p dsigma in dim 2 (k >= 1).
double log_circle_moment(double p) {
  return p * std::numbers::ln2 + log_gamma(0.5 * (p + 1.0)).log_abs - 0.5 * std::log(std::numbers::pi) -
         log_gamma(0.5 * p + 1.0).log_abs;
}

// log of (int |(1-r^2)^e r^k|^p dnu / V)^{1/p}, dim 2 radial part, with sphere moment.
double log_spread_lp(double k, double e, double p, double weight, double V) {
  const double half = 1.0;  // n/2 for n = 2
  const double a = half + 0.5 * k * p;
  const double bexp = weight + p * e + 1.0;
  const double log_beta = log_gamma(a).log_abs + log_gamma(bexp).log_abs - log_gamma(a + bexp).log_abs;
  return (log_circle_moment(p) + std::log(half) + log_beta - std::log(V)) / p;
}

// log sup_r (1-r^2)^lambda r^k times sup |Z_k| = 2.
double log_spread_sup(double k, double lambda) {
  if (lambda < 0.0) return kInf;
  if (lambda == 0.0) return std::numbers::ln2;
  const double denom = k + 2.0 * lambda;
  return std::numbers::ln2 + lambda * std::log(2.0 * lambda / denom) + 0.5 * k * std::log(k / denom);
}

RatioFamily spread_family(const OperatorParams& prm) {
  RatioFamily fam;
  fam.name = "zonal-spread";
  const int dim = prm.dim;
  const double s = peak_shift(prm);
  const double B = prm.b + s;
  const double logVB = std::log(normalization_V(B, dim));
  const double Va = normalization_V_or_one(prm.alpha, dim);
  const double Vb = normalization_V_or_one(prm.beta, dim);
  for (double k : {4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0}) {
    const unsigned ku = static_cast<unsigned>(k);
    const double log_src = prm.p.is_infinite()
                               ? log_spread_sup(k, prm.alpha + s)
                               : log_spread_lp(k, s, prm.p.value(), prm.alpha, Va);
    // T_bc f = V_B gamma_k(c)/gamma_k(B) Z_k(., e1); D_c^t multiplies by gamma_k(c+t)/gamma_k(c).
    auto log_coef = [&](double cc) { return logVB + log_gamma_coef(ku, cc, dim) - log_gamma_coef(ku, B, dim); };
    double log_tgt = kInf;
    switch (prm.target) {
      case TargetKind::BergmanBesov: {
        const double q = prm.q.value();
        const int t = besov_order(q, prm.beta);
        log_tgt = log_coef(prm.c + t) + log_spread_lp(k, t, q, prm.beta, Vb);
        break;
      }
      case TargetKind::Lebesgue:
        if (prm.beta > -1.0) log_tgt = log_coef(prm.c) + log_spread_lp(k, 0.0, prm.q.value(), prm.beta, Vb);
        break;
      case TargetKind::Bloch: {
        const int t = bloch_order(prm.beta);
        log_tgt = log_coef(prm.c + t) + log_spread_sup(k, prm.beta + t);
        break;
      }
      case TargetKind::BoundedHarmonic:
        log_tgt = log_coef(prm.c) + std::numbers::ln2;
        break;
      case TargetKind::WeightedLinf:
        if (prm.beta >= 0.0) log_tgt = log_coef(prm.c) + log_spread_sup(k, prm.beta);
        break;
    }
    fam.parameter.push_back(k);
    fam.ratios.push_back(std::exp(log_tgt - log_src));
  }
  return fam;
}

std::string aggregate_trend(const std::vector<RatioFamily>& fams) {
  bool all_plateau = true;
  for (const auto& f : fams) {
    if (f.trend == "growth") return "growth";
    if (f.trend != "plateau") all_plateau = false;
  }
  return all_plateau ? "plateau" : "indeterminate";
}

Evidence ratio_evidence(const OperatorParams& prm, const std::vector<RatioFamily>& fams) {
  Evidence ev;
  ev.probe = "ratio";
  if (fams.empty()) {
    ev.trend = "empty";
    ev.agree = true;
    ev.detail = "empty family";
    return ev;
  }
  ev.trend = aggregate_trend(fams);
  const bool bounded = classify(prm).bounded;
  ev.agree = bounded ? ev.trend == "plateau" : ev.trend == "growth";
  for (const auto& f : fams) {
    if (!ev.detail.empty()) ev.detail += "; ";
    double mx = 0.0;
    for (double r : f.ratios) mx = std::max(mx, r);
    ev.detail += f.name + ": " + f.trend + " (max ratio " + format_double(mx) + ")";
  }
  return ev;
}

}  // namespace

std::string ratio_trend(const std::vector<double>& r, const ProbeConfig& cfg) {
  if (r.empty()) return "empty";
  for (double x : r) {
    if (!std::isfinite(x)) return "growth";
  }
  if (r.size() < 2) return "plateau";
  bool monotone = true;
  for (std::size_t j = 0; j + 1 < r.size(); ++j) {
    if (r[j + 1] < 0.9 * r[j]) monotone = false;
  }
  if (monotone && r.back() >= cfg.growth_factor * r.front()) return "growth";
  const double all = *std::max_element(r.begin(), r.end());
  const double head = *std::max_element(r.begin(), r.end() - 1);
  if (all <= (1.0 + cfg.plateau_band) * head) return "plateau";
  return "indeterminate";
}

RatioFamily radial_ratio_family(const OperatorParams& prm, const std::vector<TestFunction>& family,
                                const ProbeConfig& cfg) {
  validate(prm);
  RatioFamily fam;
  fam.name = "radial";
  const double target_unit = constant_target_norm(prm);
  for (const auto& tf : family) {
    if (!test_function_in_lp(tf, prm.p, prm.alpha)) {
      throw std::invalid_argument("ratio_probe: family member f_uv with u=" + format_double(tf.u) +
                                  ", v=" + format_double(tf.v) + " is not in L^p_alpha");
    }
    const auto src = test_function_norm(tf, prm.p, prm.alpha, prm.dim);
    const auto img = log_moment_ladder(0.5 * prm.dim - 1.0, prm.b + tf.u, tf.v);
    const double T0 = img.divergent ? kInf : 0.5 * prm.dim * img.value;
    fam.parameter.push_back(tf.u);
    fam.ratios.push_back(T0 * target_unit / src.value);
  }
  fam.trend = ratio_trend(fam.ratios, cfg);
  return fam;
}

std::vector<RatioFamily> default_ratio_families(const OperatorParams& prm, const ProbeConfig& cfg) {
  validate(prm);
  std::vector<RatioFamily> out;
  const double u_star = std::max(-1.0 - prm.b, membership_u(prm));
  std::vector<TestFunction> radial;
  for (int j = 1; j <= 8; ++j) radial.push_back({u_star + std::ldexp(1.0, -j), 0.0});
  out.push_back(radial_ratio_family(prm, radial, cfg));
  out.push_back(peak_family(prm, cfg));
  out.back().trend = ratio_trend(out.back().ratios, cfg);
  if (prm.dim == 2) {
    out.push_back(spread_family(prm));
    out.back().trend = ratio_trend(out.back().ratios, cfg);
  }
  return out;
}

Evidence ratio_probe(const OperatorParams& prm, const ProbeConfig& cfg, std::vector<RatioFamily>* families) {
  auto fams = default_ratio_families(prm, cfg);
  Evidence ev = ratio_evidence(prm, fams);
  if (families) *families = std::move(fams);
  return ev;
}

Evidence ratio_probe(const OperatorParams& prm, const std::vector<TestFunction>& family,
                     const ProbeConfig& cfg) {
  if (family.empty()) return ratio_evidence(prm, {});
  return ratio_evidence(prm, {radial_ratio_family(prm, family, cfg)});
}

Evidence finiteness_probe(const OperatorParams& prm, std::vector<LadderPoint>* ladder) {
  validate(prm);
  const double half = 0.5 * prm.dim;
  Evidence ev;
  ev.probe = "finiteness";
  bool numeric = false;
  bool analytic = false;
  if (prm.p.is_one()) {
    // u approaches -(1+alpha) from above; T f(0) stays finite along the family iff b > alpha.
    std::vector<double> values;
    for (int j = 1; j <= 12; ++j) {
      const double u = -(1.0 + prm.alpha) + std::ldexp(1.0, -j);
      const auto lad = log_moment_ladder(half - 1.0, prm.b + u, 0.0);
      const double val = lad.divergent ? kInf : half * lad.value;
      values.push_back(val);
      if (ladder) ladder->push_back({static_cast<double>(j), val});
    }
    const std::size_t n = values.size();
    numeric = !std::isfinite(values.back()) ||
              (values[n - 1] > 1.5 * values[n - 2] && values[n - 2] > 1.5 * values[n - 3]);
    analytic = !(prm.b > prm.alpha);
    ev.detail = "f_uv with u -> -(1+alpha), v = 0";
  } else {
    TestFunction tf;
    if (prm.p.is_infinite()) {
      tf = {-prm.alpha, 0.0};
    } else {
      tf = {-(1.0 + prm.alpha) / prm.p.value(), 1.0};
    }
    const auto lad = log_moment_ladder(half - 1.0, prm.b + tf.u, tf.v);
    if (ladder) {
      for (std::size_t i = 0; i < lad.cutoffs.size(); ++i) {
        ladder->push_back({lad.cutoffs[i], half * lad.partials[i]});
      }
    }
    numeric = lad.divergent;
    analytic = !test_function_T_finite(prm.b, tf);
    ev.detail = "f_uv with u = " + format_double(tf.u) + ", v = " + format_double(tf.v);
  }
  ev.trend = numeric ? "divergent" : "finite";
  ev.agree = numeric == analytic && (!numeric || !first_condition_strict(prm));
  return ev;
}

ProbeReport probe(const OperatorParams& prm, const ProbeConfig& cfg) {
  ProbeReport rep;
  rep.params = prm;
  rep.verdict = classify(prm);
  rep.evidence.push_back(finiteness_probe(prm, &rep.refinement_ladder));
  rep.evidence.push_back(ratio_probe(prm, cfg, &rep.families));
  return rep;
}

double kernel_floor_probe(double alpha, int dim, double tol) {
  const KernelSpec spec{alpha, dim, tol};
  constexpr int kAngles = 33;
  for (int j = 1; j <= 30; ++j) {
    const double eps = std::ldexp(1.0, -j);
    bool ok = true;
    for (double rx : {eps, 0.5 * eps}) {
      for (double ry : {0.0, 0.5, 0.9, 0.99, 0.999}) {
        for (int a = 0; a < kAngles && ok; ++a) {
          const double theta = std::numbers::pi * a / (kAngles - 1);
          Point x(dim, 0.0);
          Point y(dim, 0.0);
          x[0] = rx * std::cos(theta);
          x[1] = rx * std::sin(theta);
          y[0] = ry;
          if (kernel_eval(spec, x, y) < 0.5) ok = false;
        }
      }
    }
    if (ok) return eps;
  }
  return 0.0;
}

std::vector<SuiteEntry> curated_suite() {
  struct Base {
    const char* name;
    TargetKind target;
    double p;  // 0 encodes inf
    double q;  // 0 encodes inf
    int dim;
    double b, alpha, beta;
  };
  const Base bases[] = {
      {"besov(i)", TargetKind::BergmanBesov, 2.0, 3.0, 3, 0.0, 0.0, 0.5},
      {"besov(ii)", TargetKind::BergmanBesov, 1.0, 2.0, 2, 0.5, 0.0, 0.0},
      {"besov(iii)", TargetKind::BergmanBesov, 3.0, 2.0, 2, 0.0, 0.5, 0.0},
      {"besov(iv)", TargetKind::BergmanBesov, 0.0, 2.0, 2, 0.5, 0.0, 1.0},
      {"bloch(i)", TargetKind::Bloch, 2.0, 0.0, 3, 0.0, 0.0, 1.0},
      {"bloch(ii)", TargetKind::Bloch, 1.0, 0.0, 2, 1.0, 0.0, 0.5},
      {"bloch(iii)", TargetKind::Bloch, 0.0, 0.0, 2, 0.0, 0.0, 1.0},
      {"hinf(i)", TargetKind::BoundedHarmonic, 2.0, 0.0, 2, 1.0, 0.0, 0.0},
      {"hinf(ii)", TargetKind::BoundedHarmonic, 1.0, 0.0, 3, 1.0, 0.5, 0.0},
      {"hinf(iii)", TargetKind::BoundedHarmonic, 0.0, 0.0, 2, 0.5, 0.0, 0.0},
  };
  auto ext = [](double v) { return v == 0.0 ? ExtExponent::infinity() : ExtExponent(v); };
  // c-threshold as printed for the part, whether or not the first condition holds.
  auto threshold = [](OperatorParams prm) {
    prm.c = 0.0;
    const Verdict v = classify(prm);
    return v.inequalities[1].rhs;
  };
  std::vector<SuiteEntry> out;
  for (const Base& base : bases) {
    OperatorParams prm;
    prm.target = base.target;
    prm.p = ext(base.p);
    prm.q = ext(base.q);
    prm.dim = base.dim;
    prm.b = base.b;
    prm.alpha = base.alpha;
    prm.beta = base.beta;
    const double bound = threshold(prm);
    for (double off : {-0.5, -0.1, 1.0, 1.5}) {
      OperatorParams t = prm;
      t.c = bound + off;
      char label[64];
      std::snprintf(label, sizeof label, "%s c=bound%+g", base.name, off);
      out.push_back({label, t});
    }
    // b at which the first condition becomes an equality.
    double b_crit = 0.0;
    if (prm.p.is_infinite()) {
      b_crit = prm.alpha - 1.0;
    } else if (prm.p.is_one()) {
      b_crit = prm.alpha;
    } else {
      b_crit = (prm.alpha + 1.0) / prm.p.value() - 1.0;
    }
    for (double miss : {0.25, 1.0}) {
      OperatorParams t = prm;
      t.b = b_crit - miss;
      t.c = threshold(t) - 0.5;
      char label[64];
      std::snprintf(label, sizeof label, "%s b=first-%g", base.name, miss);
      out.push_back({label, t});
    }
  }
  return out;
}

}  // namespace hbb
