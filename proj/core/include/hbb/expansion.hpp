#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "hbb/common.hpp"

namespace hbb {

/// coefficient * Z_degree(., anchor).
struct ExpansionTerm {
  unsigned degree = 0;
  Point anchor;
  double coefficient = 0.0;
};

/// A finite harmonic function on the ball of R^dim written as a sum of
/// zonal harmonics with arbitrary anchors (|anchor| <= 1). Duplicate
/// (degree, anchor) pairs are allowed and simply add up.
class HarmonicExpansion {
 public:
  explicit HarmonicExpansion(int dim);
  HarmonicExpansion(int dim, std::vector<ExpansionTerm> terms);

  int dim() const { return dim_; }
  const std::vector<ExpansionTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(unsigned degree, Point anchor, double coefficient);

  /// f(x) = sum_j c_j Z_{k_j}(x, y_j); requires |x| <= 1.
  double evaluate(PointView x) const;

 private:
  int dim_;
  std::vector<ExpansionTerm> terms_;
};

/// D_s^t f: each degree-k coefficient scaled by gamma_k(s+t)/gamma_k(s).
HarmonicExpansion apply_D(double s, double t, const HarmonicExpansion& f);

/// I_s^t f(x) = (1-|x|^2)^t (D_s^t f)(x); requires |x| < 1.
double apply_I(double s, double t, const HarmonicExpansion& f, PointView x);

/// Truncated R_alpha(., anchor) as an expansion: terms (k, anchor, gamma_k(alpha)), k <= max_degree.
HarmonicExpansion kernel_expansion(double alpha, PointView anchor, unsigned max_degree);

/// JSON array of {"k", "y", "c"} records.
nlohmann::json to_json(const HarmonicExpansion& f);
/// Inverse of to_json. With dim == 0 the dimension is taken from the anchors,
/// so an empty array then needs an explicit dim. Throws std::invalid_argument
/// on malformed input.
HarmonicExpansion expansion_from_json(const nlohmann::json& j, int dim = 0);

}  // namespace hbb
