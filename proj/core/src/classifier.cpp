#include "hbb/classifier.hpp"

#include <algorithm>
#include <limits>

namespace hbb {

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::BergmanBesov: return "besov";
    case TargetKind::Bloch: return "bloch";
    case TargetKind::BoundedHarmonic: return "hinf";
    case TargetKind::Lebesgue: return "lebesgue";
    case TargetKind::WeightedLinf: return "linf";
  }
  return "?";
}

TargetKind parse_target(std::string_view text) {
  if (text == "besov" || text == "bergman-besov") return TargetKind::BergmanBesov;
  if (text == "bloch") return TargetKind::Bloch;
  if (text == "hinf" || text == "h-inf" || text == "bounded-harmonic") return TargetKind::BoundedHarmonic;
  if (text == "lebesgue" || text == "lq") return TargetKind::Lebesgue;
  if (text == "linf" || text == "weighted-linf") return TargetKind::WeightedLinf;
  throw std::invalid_argument("unknown target '" + std::string(text) + "'");
}

bool target_has_finite_q(TargetKind kind) {
  return kind == TargetKind::BergmanBesov || kind == TargetKind::Lebesgue;
}

void validate(const OperatorParams& params) {
  if (params.dim < 2) throw std::invalid_argument("dim must be at least 2");
  for (double v : {params.b, params.c, params.alpha, params.beta}) {
    if (!std::isfinite(v)) throw std::invalid_argument("b, c, alpha, beta must be finite");
  }
  if (target_has_finite_q(params.target) == params.q.is_infinite()) {
    throw std::invalid_argument("target '" + to_string(params.target) + "' requires " +
                                (target_has_finite_q(params.target) ? "finite q" : "q = inf"));
  }
}

namespace {

Inequality make(std::string name, double lhs, bool strict, double rhs) {
  Inequality ineq;
  ineq.name = std::move(name);
  ineq.lhs = lhs;
  ineq.rel = strict ? "<" : "<=";
  ineq.rhs = rhs;
  ineq.ok = strict ? lhs < rhs : lhs <= rhs;
  return ineq;
}

enum class Regime { Interior, One, Infinite };

Regime regime_of(const ExtExponent& p) {
  if (p.is_infinite()) return Regime::Infinite;
  return p.is_one() ? Regime::One : Regime::Interior;
}

// The c-threshold of the matched part, as printed, with its name and strictness
// when the first condition holds in its strict form (alternative A for p = 1).
struct Part {
  std::string id;
  std::string c_name;
  double rhs = 0.0;
  bool strict = false;
};

Part select_part(const OperatorParams& prm) {
  const double n = prm.dim;
  const double b = prm.b;
  const double alpha = prm.alpha;
  const double beta = prm.beta;
  const Regime reg = regime_of(prm.p);
  const double p = prm.p.value();
  Part part;
  switch (prm.target) {
    case TargetKind::BergmanBesov:
    case TargetKind::Lebesgue: {
      const double q = prm.q.value();
      if (reg == Regime::Interior && p <= q) {
        part = {"(i)", "c<=b+(n+beta)/q-(n+alpha)/p", b + (n + beta) / q - (n + alpha) / p, false};
      } else if (reg == Regime::One) {
        part = {"(ii)", "c<=b+(n+beta)/q-(n+alpha)", b + (n + beta) / q - (n + alpha), false};
      } else if (reg == Regime::Interior) {
        part = {"(iii)", "c<b+(1+beta)/q-(1+alpha)/p", b + (1.0 + beta) / q - (1.0 + alpha) / p, true};
      } else {
        part = {"(iv)", "c<b+(beta+1)/q-alpha", b + (beta + 1.0) / q - alpha, true};
      }
      break;
    }
    case TargetKind::Bloch:
      if (reg == Regime::Interior) {
        part = {"(i)", "c<=b+beta-(n+alpha)/p", b + beta - (n + alpha) / p, false};
      } else if (reg == Regime::One) {
        part = {"(ii)", "c<=b+beta-(n+alpha)", b + beta - (n + alpha), false};
      } else {
        part = {"(iii)", "c<=b+beta-alpha", b + beta - alpha, false};
      }
      break;
    case TargetKind::BoundedHarmonic:
      if (reg == Regime::Interior) {
        part = {"(i)", "c<b-(n+alpha)/p", b - (n + alpha) / p, true};
      } else if (reg == Regime::One) {
        part = {"(ii)", "c<=b-(n+alpha)", b - (n + alpha), false};
      } else {
        part = {"(iii)", "c<b-alpha", b - alpha, true};
      }
      break;
    case TargetKind::WeightedLinf:
      if (reg == Regime::Interior) {
        part = {"(i)", beta == 0.0 ? "c<b+beta-(n+alpha)/p" : "c<=b+beta-(n+alpha)/p",
                b + beta - (n + alpha) / p, beta == 0.0};
      } else if (reg == Regime::One) {
        part = {"(ii)", "c<=b+beta-(n+alpha)", b + beta - (n + alpha), false};
      } else {
        part = {"(iii)", beta == 0.0 ? "c<b+beta-alpha" : "c<=b+beta-alpha", b + beta - alpha,
                beta == 0.0};
      }
      break;
  }
  return part;
}

bool excluded_weight(const OperatorParams& prm) {
  return (prm.target == TargetKind::Lebesgue && prm.beta <= -1.0) ||
         (prm.target == TargetKind::WeightedLinf && prm.beta < 0.0);
}

std::string strict_form(std::string name) {
  const auto pos = name.find("<=");
  if (pos != std::string::npos) name.erase(pos + 1, 1);
  return name;
}

}  // namespace

bool first_condition(const OperatorParams& prm) {
  switch (regime_of(prm.p)) {
    case Regime::Interior: return prm.alpha + 1.0 < prm.p.value() * (prm.b + 1.0);
    case Regime::One: return prm.alpha <= prm.b;
    case Regime::Infinite: return prm.alpha - 1.0 < prm.b;
  }
  return false;
}

std::optional<CBound> c_bound(const OperatorParams& prm) {
  validate(prm);
  if (excluded_weight(prm) || !first_condition(prm)) return std::nullopt;
  const Part part = select_part(prm);
  CBound bound{part.rhs, part.strict};
  // p = 1 with alpha = b only has the strict alternative.
  if (regime_of(prm.p) == Regime::One && !(prm.alpha < prm.b)) bound.strict = true;
  return bound;
}

Verdict classify(const OperatorParams& prm) {
  validate(prm);
  Verdict v;
  if (prm.target == TargetKind::Lebesgue && prm.beta <= -1.0) {
    v.theorem_part = "beta<=-1";
    v.inequalities.push_back(make("beta>-1", -1.0, true, prm.beta));
    v.bounded = false;
    v.notes = "q < inf and beta <= -1: T_bc is not bounded into L^q_beta for any b, c";
    return v;
  }
  if (prm.target == TargetKind::WeightedLinf && prm.beta < 0.0) {
    v.theorem_part = "beta<0";
    v.inequalities.push_back(make("beta>=0", 0.0, false, prm.beta));
    v.bounded = false;
    v.notes = "beta < 0: T_bc is not bounded into the weighted L^inf_beta class for any b, c";
    return v;
  }
  const Part part = select_part(prm);
  v.theorem_part = part.id;
  const double b = prm.b;
  const double alpha = prm.alpha;
  switch (regime_of(prm.p)) {
    case Regime::Interior: {
      const double p = prm.p.value();
      v.inequalities.push_back(make("alpha+1<p(b+1)", alpha + 1.0, true, p * (b + 1.0)));
      v.inequalities.push_back(make(part.c_name, prm.c, part.strict, part.rhs));
      v.bounded = v.inequalities[0].ok && v.inequalities[1].ok;
      break;
    }
    case Regime::Infinite: {
      v.inequalities.push_back(make("alpha-1<b", alpha - 1.0, true, b));
      v.inequalities.push_back(make(part.c_name, prm.c, part.strict, part.rhs));
      v.bounded = v.inequalities[0].ok && v.inequalities[1].ok;
      break;
    }
    case Regime::One: {
      v.inequalities.push_back(make("A: alpha<b", alpha, true, b));
      v.inequalities.push_back(make("A: " + part.c_name, prm.c, part.strict, part.rhs));
      v.inequalities.push_back(make("B: alpha<=b", alpha, false, b));
      v.inequalities.push_back(make("B: " + strict_form(part.c_name), prm.c, true, part.rhs));
      const bool a_ok = v.inequalities[0].ok && v.inequalities[1].ok;
      const bool b_ok = v.inequalities[2].ok && v.inequalities[3].ok;
      v.bounded = a_ok || b_ok;
      v.notes = "p = 1: bounded when either alternative A or alternative B holds";
      break;
    }
  }
  if (prm.target == TargetKind::WeightedLinf && prm.beta == 0.0 && regime_of(prm.p) != Regime::One) {
    v.notes = "beta = 0: the c-inequality is strict";
  }
  if (prm.target == TargetKind::BoundedHarmonic && prm.beta != 0.0) {
    v.notes = "beta is ignored for the bounded harmonic target";
  }
  return v;
}

double Verdict::binding_slack() const {
  auto min_slack = [](auto first, auto last) {
    double m = std::numeric_limits<double>::infinity();
    for (auto it = first; it != last; ++it) m = std::min(m, it->slack());
    return m;
  };
  const bool grouped = !inequalities.empty() && inequalities.front().name.rfind("A: ", 0) == 0;
  if (!grouped) return min_slack(inequalities.begin(), inequalities.end());
  const auto mid = inequalities.begin() + 2;
  const double a = min_slack(inequalities.begin(), mid);
  const double b = min_slack(mid, inequalities.end());
  const bool a_ok = inequalities[0].ok && inequalities[1].ok;
  const bool b_ok = inequalities[2].ok && inequalities[3].ok;
  if (a_ok && !b_ok) return a;
  if (b_ok && !a_ok) return b;
  return std::max(a, b);
}

OperatorParams reduce_to_unweighted(const OperatorParams& prm) {
  OperatorParams out = prm;
  const double alpha_shift = prm.p.is_infinite() ? prm.alpha : prm.alpha / prm.p.value();
  const double beta = prm.target == TargetKind::BoundedHarmonic ? 0.0 : prm.beta;
  const double beta_shift = prm.q.is_infinite() ? beta : beta / prm.q.value();
  out.b = prm.b - alpha_shift;
  out.c = prm.c - beta_shift;
  out.alpha = 0.0;
  out.beta = 0.0;
  return out;
}

}  // namespace hbb
