#include "hbb/json_io.hpp"

#include <cmath>

namespace hbb {

namespace {

void write(const nlohmann::json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += nlohmann::json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(v, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : nlohmann::json(format_double(x)).dump();
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a number");
}

nlohmann::json to_json(const ExtExponent& p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

ExtExponent exponent_from_json(const nlohmann::json& j) {
  if (j.is_string()) return ExtExponent::parse(j.get<std::string>());
  if (j.is_number()) return ExtExponent(j.get<double>());
  throw std::invalid_argument("exponent must be a number >= 1 or \"inf\"");
}

nlohmann::json to_json(const OperatorParams& prm) {
  return {{"b", prm.b},           {"c", prm.c},         {"alpha", prm.alpha},
          {"beta", prm.beta},     {"p", to_json(prm.p)}, {"q", to_json(prm.q)},
          {"target", to_string(prm.target)}, {"dim", prm.dim}};
}

OperatorParams params_from_json(const nlohmann::json& j) {
  OperatorParams prm;
  prm.b = j.at("b").get<double>();
  prm.c = j.at("c").get<double>();
  prm.alpha = j.at("alpha").get<double>();
  prm.beta = j.at("beta").get<double>();
  prm.p = exponent_from_json(j.at("p"));
  prm.q = exponent_from_json(j.at("q"));
  prm.target = parse_target(j.at("target").get<std::string>());
  prm.dim = j.at("dim").get<int>();
  validate(prm);
  return prm;
}

nlohmann::json to_json(const Inequality& ineq) {
  return {{"name", ineq.name},
          {"lhs", json_number(ineq.lhs)},
          {"rel", ineq.rel},
          {"rhs", json_number(ineq.rhs)},
          {"ok", ineq.ok}};
}

nlohmann::json to_json(const Verdict& v) {
  auto ineqs = nlohmann::json::array();
  for (const auto& i : v.inequalities) ineqs.push_back(to_json(i));
  return {{"bounded", v.bounded},
          {"theorem_part", v.theorem_part},
          {"inequalities", ineqs},
          {"binding_slack", json_number(v.binding_slack())},
          {"notes", v.notes}};
}

nlohmann::json to_json(const Evidence& e) {
  return {{"probe", e.probe}, {"trend", e.trend}, {"agree", e.agree}, {"detail", e.detail}};
}

nlohmann::json to_json(const RatioFamily& f) {
  auto ratios = nlohmann::json::array();
  for (double r : f.ratios) ratios.push_back(json_number(r));
  return {{"name", f.name}, {"parameter", f.parameter}, {"ratios", ratios}, {"trend", f.trend}};
}

nlohmann::json to_json(const ProbeReport& r) {
  auto evidence = nlohmann::json::array();
  for (const auto& e : r.evidence) evidence.push_back(to_json(e));
  auto ladder = nlohmann::json::array();
  for (const auto& pt : r.refinement_ladder) {
    ladder.push_back({{"resolution", json_number(pt.resolution)}, {"value", json_number(pt.value)}});
  }
  auto families = nlohmann::json::array();
  for (const auto& f : r.families) families.push_back(to_json(f));
  return {{"params", to_json(r.params)},
          {"families", families},
          {"verdict", to_json(r.verdict)},
          {"evidence", evidence},
          {"refinement_ladder", ladder}};
}

}  // namespace hbb
