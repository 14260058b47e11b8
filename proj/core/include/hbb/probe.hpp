#pragma once

#include <string>
#include <vector>

#include "hbb/classifier.hpp"
#include "hbb/operators.hpp"
#include "hbb/quadrature.hpp"

namespace hbb {

struct ProbeConfig {
  /// radial_nodes / 4 nodes per panel in the graded rules of the peak family.
  QuadratureConfig quadrature;
  double kernel_tol = 1e-10;
  /// Growth: last/first ratio at least this large, and roughly monotone.
  double growth_factor = 10.0;
  /// Plateau: extending the family raises the maximum ratio by at most this fraction.
  double plateau_band = 0.10;
};

struct Evidence {
  std::string probe;
  /// "finite", "divergent", "plateau", "growth", "indeterminate", "empty".
  std::string trend;
  bool agree = true;
  std::string detail;
};

struct LadderPoint {
  double resolution = 0.0;
  double value = 0.0;
};

/// Norm ratios target-norm(T_bc f) / ||f||_{L^p_alpha} along one family.
struct RatioFamily {
  std::string name;
  /// Family index values (u, j or k).
  std::vector<double> parameter;
  std::vector<double> ratios;
  /// "plateau", "growth" or "indeterminate".
  std::string trend;
};

struct ProbeReport {
  OperatorParams params;
  Verdict verdict;
  std::vector<Evidence> evidence;
  /// Ladder of the finiteness probe.
  std::vector<LadderPoint> refinement_ladder;
  std::vector<RatioFamily> families;
};

/// T_bc f_uv(0) for the regime's test function on a refinement ladder:
/// u = -(1+alpha)/p, v = 1 for 1 < p < inf; u = -alpha, v = 0 for p = inf;
/// for p = 1 the family u = -(1+alpha) + 2^-j, v = 0. Agreement: the numerical
/// verdict equals the analytic finiteness predicate, and divergence only occurs
/// when the first condition fails or sits on its boundary.
Evidence finiteness_probe(const OperatorParams& params, std::vector<LadderPoint>* ladder = nullptr);

/// Classifies a ratio sequence with the growth and plateau rules of `config`.
std::string ratio_trend(const std::vector<double>& ratios, const ProbeConfig& config);

/// Ratios for an explicit list of radial test functions (constant images).
/// Throws std::invalid_argument if a member is not in L^p_alpha.
RatioFamily radial_ratio_family(const OperatorParams& params,
                                const std::vector<TestFunction>& family, const ProbeConfig& config);

/// The default families: radial f_uv toward the membership or divergence
/// boundary; kernel peaks (1-|y|^2)^s R_{b+s}(y, a) with |a| -> 1; and for
/// dim 2 the spread family (1-|y|^2)^s Z_k(y, e1) with k growing.
std::vector<RatioFamily> default_ratio_families(const OperatorParams& params,
                                                const ProbeConfig& config);

/// Bounded verdict: every family plateaus. Unbounded: some family grows.
Evidence ratio_probe(const OperatorParams& params, const ProbeConfig& config,
                     std::vector<RatioFamily>* families = nullptr);

/// ratio_probe restricted to one explicit radial family; empty family gives empty evidence.
Evidence ratio_probe(const OperatorParams& params, const std::vector<TestFunction>& family,
                     const ProbeConfig& config);

/// Both probes together with the verdict.
ProbeReport probe(const OperatorParams& params, const ProbeConfig& config);

/// Largest eps = 2^-j (j = 1..30) such that R_alpha(x, y) >= 1/2 for sampled
/// |x| <= eps and |y| in {0, 0.5, 0.9, 0.99, 0.999} over a grid of angles. 0 if none.
double kernel_floor_probe(double alpha, int dim, double tol = 1e-10);

/// Ten classifier parts times six tuples: c at 0.5 and 0.1 inside the c-bound,
/// at 1.0 and 1.5 outside, and b moved 0.25 and 1.0 past the first condition.
struct SuiteEntry {
  std::string label;
  OperatorParams params;
};
std::vector<SuiteEntry> curated_suite();

}  // namespace hbb
