#include "hbb/expansion.hpp"

#include "hbb/kernel.hpp"

namespace hbb {

namespace {

void check_term(int dim, const ExpansionTerm& term) {
  if (static_cast<int>(term.anchor.size()) != dim) {
    throw std::invalid_argument("expansion term anchor has the wrong dimension");
  }
  if (squared_norm(term.anchor) > 1.0 + 1e-12) {
    throw std::invalid_argument("expansion term anchor lies outside the closed ball");
  }
}

}  // namespace

HarmonicExpansion::HarmonicExpansion(int dim) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("expansion dimension must be at least 2");
}

HarmonicExpansion::HarmonicExpansion(int dim, std::vector<ExpansionTerm> terms)
    : HarmonicExpansion(dim) {
  for (const auto& t : terms) check_term(dim_, t);
  terms_ = std::move(terms);
}

void HarmonicExpansion::add_term(unsigned degree, Point anchor, double coefficient) {
  ExpansionTerm term{degree, std::move(anchor), coefficient};
  check_term(dim_, term);
  terms_.push_back(std::move(term));
}

double HarmonicExpansion::evaluate(PointView x) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw std::invalid_argument("evaluate: point has the wrong dimension");
  }
  if (squared_norm(x) > 1.0 + 1e-12) throw std::invalid_argument("evaluate: |x| > 1");
  double sum = 0.0;
  for (const auto& term : terms_) {
    sum += term.coefficient * zonal_harmonic(term.degree, x, term.anchor);
  }
  return sum;
}

HarmonicExpansion apply_D(double s, double t, const HarmonicExpansion& f) {
  std::vector<ExpansionTerm> out = f.terms();
  if (t != 0.0) {
    for (auto& term : out) term.coefficient *= gamma_ratio(term.degree, s, t, f.dim());
  }
  return HarmonicExpansion(f.dim(), std::move(out));
}

double apply_I(double s, double t, const HarmonicExpansion& f, PointView x) {
  const double r2 = squared_norm(x);
  if (r2 >= 1.0) throw std::invalid_argument("apply_I: requires |x| < 1");
  const double weight = t == 0.0 ? 1.0 : std::pow(1.0 - r2, t);
  return weight * apply_D(s, t, f).evaluate(x);
}

HarmonicExpansion kernel_expansion(double alpha, PointView anchor, unsigned max_degree) {
  const int dim = static_cast<int>(anchor.size());
  HarmonicExpansion f(dim);
  const auto g = gamma_table(alpha, dim, max_degree + 1);
  for (unsigned k = 0; k <= max_degree; ++k) {
    f.add_term(k, Point(anchor.begin(), anchor.end()), g[k]);
  }
  return f;
}

nlohmann::json to_json(const HarmonicExpansion& f) {
  auto arr = nlohmann::json::array();
  for (const auto& term : f.terms()) {
    arr.push_back({{"k", term.degree}, {"y", term.anchor}, {"c", term.coefficient}});
  }
  return arr;
}

HarmonicExpansion expansion_from_json(const nlohmann::json& j, int dim) {
  if (!j.is_array()) throw std::invalid_argument("expansion JSON must be an array");
  if (j.empty() && dim == 0) {
    throw std::invalid_argument("empty expansion JSON carries no dimension");
  }
  std::vector<ExpansionTerm> terms;
  for (const auto& rec : j) {
    if (!rec.is_object() || !rec.contains("k") || !rec.contains("y") || !rec.contains("c")) {
      throw std::invalid_argument("expansion record needs k, y and c fields");
    }
    const auto& k = rec.at("k");
    if (!k.is_number_integer() || k.get<long long>() < 0) {
      throw std::invalid_argument("expansion degree k must be a non-negative integer");
    }
    if (!rec.at("y").is_array() || !rec.at("c").is_number()) {
      throw std::invalid_argument("expansion record has malformed y or c");
    }
    ExpansionTerm term{k.get<unsigned>(), rec.at("y").get<Point>(), rec.at("c").get<double>()};
    if (dim == 0) dim = static_cast<int>(term.anchor.size());
    terms.push_back(std::move(term));
  }
  return HarmonicExpansion(dim, std::move(terms));
}

}  // namespace hbb
