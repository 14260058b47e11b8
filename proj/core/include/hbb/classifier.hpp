#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hbb/common.hpp"

namespace hbb {

/// Codomain of T_bc. BergmanBesov and Lebesgue take a finite q; the others q = inf.
enum class TargetKind { BergmanBesov, Bloch, BoundedHarmonic, Lebesgue, WeightedLinf };

/// "besov", "bloch", "hinf", "lebesgue", "linf".
std::string to_string(TargetKind kind);
/// Inverse of to_string; also accepts a few long spellings. Throws std::invalid_argument.
TargetKind parse_target(std::string_view text);
bool target_has_finite_q(TargetKind kind);

/// T_bc : L^p_alpha -> target(q, beta) on the ball of R^dim.
struct OperatorParams {
  double b = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  ExtExponent p{2.0};
  ExtExponent q{2.0};
  TargetKind target = TargetKind::BergmanBesov;
  int dim = 2;
};

/// Throws std::invalid_argument when q is inconsistent with the target or dim < 2.
void validate(const OperatorParams& params);

/// One evaluated inequality "lhs rel rhs". Names prefixed "A:" / "B:" belong to
/// the two alternatives of an "either ... or ..." condition.
struct Inequality {
  std::string name;
  double lhs = 0.0;
  std::string rel;
  double rhs = 0.0;
  bool ok = false;

  /// rhs - lhs: positive inside, zero on the boundary.
  double slack() const { return rhs - lhs; }
};

struct Verdict {
  bool bounded = false;
  /// "(i)".."(iv)", or "beta<=-1" / "beta<0" for the excluded weight ranges.
  std::string theorem_part;
  std::vector<Inequality> inequalities;
  std::string notes;

  /// Slack of the inequality that decided the verdict: the smallest slack of the
  /// deciding alternative (the satisfied one when bounded, else the closer one).
  double binding_slack() const;
};

/// Exact decision, no tolerances.
Verdict classify(const OperatorParams& params);

/// The c-threshold of the matched part: bounded needs c <= value (or c < value
/// when strict), given the first condition. nullopt when the first condition
/// fails, or for the excluded weight ranges, where no c works.
struct CBound {
  double value = 0.0;
  bool strict = false;
};
std::optional<CBound> c_bound(const OperatorParams& params);

/// The condition on (b, alpha, p) that precedes the c-inequality in every part.
bool first_condition(const OperatorParams& params);

/// (b - alpha/p, c - beta/q, 0, 0) with x/inf read as x. BoundedHarmonic has no
/// weight, so its beta counts as 0 here.
OperatorParams reduce_to_unweighted(const OperatorParams& params);

}  // namespace hbb
