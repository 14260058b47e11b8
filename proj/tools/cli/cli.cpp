#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hbb/classifier.hpp"
#include "hbb/json_io.hpp"
#include "hbb/kernel.hpp"
#include "hbb/operators.hpp"
#include "hbb/probe.hpp"

namespace hbb::cli {

namespace {

using nlohmann::json;

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

Point parse_point(const std::string& text) {
  Point x;
  for (const auto& part : split(text, ',')) x.push_back(parse_number(part));
  return x;
}

struct Quad {
  QuadratureConfig config;
  double tol = 1e-10;

  void add(CLI::App* app) {
    app->add_option("--radial-nodes", config.radial_nodes, "Radial Gauss-Jacobi nodes")
        ->check(CLI::PositiveNumber);
    app->add_option("--sphere-nodes", config.sphere_nodes,
                    "Circle nodes (dim 2) or azimuthal nodes (dim 3)")
        ->check(CLI::PositiveNumber);
    app->add_option("--mc-samples", config.mc_samples, "Monte Carlo sphere samples (dim >= 4)")
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", config.seed, "Monte Carlo seed");
    app->add_option("--tol", tol, "Kernel truncation tolerance")->check(CLI::PositiveNumber);
  }

  json echo() const {
    return {{"radial_nodes", config.radial_nodes},
            {"sphere_nodes", config.sphere_nodes},
            {"mc_samples", config.mc_samples},
            {"seed", config.seed},
            {"tol", tol}};
  }
};

struct ParamFlags {
  double b = 0.0, c = 0.0, alpha = 0.0, beta = 0.0;
  std::string p = "2";
  std::string q;
  std::string target = "besov";
  int dim = 2;

  void add(CLI::App* app) {
    app->add_option("--b", b, "Weight exponent b of T_bc");
    app->add_option("--c", c, "Kernel parameter c of T_bc");
    app->add_option("--alpha", alpha, "Source weight alpha");
    app->add_option("--beta", beta, "Target weight beta");
    app->add_option("--p", p, "Source exponent, >= 1 or inf");
    app->add_option("--q", q, "Target exponent, >= 1 or inf (default 2, or inf for q = inf targets)");
    app->add_option("--target", target, "besov | bloch | hinf | lebesgue | linf");
    app->add_option("--dim", dim, "Dimension n >= 2");
  }

  OperatorParams build() const {
    OperatorParams prm;
    prm.b = b;
    prm.c = c;
    prm.alpha = alpha;
    prm.beta = beta;
    prm.p = ExtExponent::parse(p);
    prm.target = parse_target(target);
    if (q.empty()) {
      prm.q = target_has_finite_q(prm.target) ? ExtExponent(2.0) : ExtExponent::infinity();
    } else {
      prm.q = ExtExponent::parse(q);
    }
    prm.dim = dim;
    validate(prm);
    return prm;
  }
};

// const1, fuv:u,v, or @file / inline JSON array of {k, y, c} records.
BallFunction parse_function(const std::string& text, int dim) {
  if (text == "const1") return TestFunction{0.0, 0.0};
  if (text.rfind("fuv:", 0) == 0) {
    const auto parts = split(text.substr(4), ',');
    if (parts.size() != 2) throw std::invalid_argument("fuv expects 'fuv:u,v'");
    return TestFunction{parse_number(parts[0]), parse_number(parts[1])};
  }
  json j;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::runtime_error("cannot open " + text.substr(1));
    j = json::parse(in, nullptr, false);
  } else {
    j = json::parse(text, nullptr, false);
  }
  if (j.is_discarded()) throw std::invalid_argument("function is not const1, fuv:u,v or a JSON expansion");
  return expansion_from_json(j, dim);
}

void emit(std::ostream& out, const json& j) { out << dump_json(j) << '\n'; }

std::string csv_number(double x) { return format_double(x); }

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("range must be lo:hi:n");
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const double nd = parse_number(parts[2]);
    if (nd < 1 || std::floor(nd) != nd) throw std::invalid_argument("range count must be a positive integer");
    const int n = static_cast<int>(nd);
    if (n == 1) return {lo};
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
    return out;
  }
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_number(part));
  if (out.empty()) throw std::invalid_argument("empty range");
  return out;
}

std::vector<std::string> parse_exponent_range(const std::string& text) {
  std::vector<std::string> out;
  if (text.find(':') != std::string::npos) {
    for (double v : parse_range(text)) out.push_back(ExtExponent(v).to_string());
    return out;
  }
  for (const auto& part : split(text, ',')) out.push_back(ExtExponent::parse(part).to_string());
  if (out.empty()) throw std::invalid_argument("empty range");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic Bergman-Besov kernels, weighted integral operators and their boundedness"};
  app.name("hbb");
  app.require_subcommand(1);

  ParamFlags cls_flags;
  auto* cls = app.add_subcommand("classify", "Decide boundedness of T_bc : L^p_alpha -> target");
  cls_flags.add(cls);

  double k_alpha = 0.0;
  int k_dim = 2;
  std::string k_x, k_y;
  double k_tol = 1e-10;
  auto* ker = app.add_subcommand("kernel", "Evaluate R_alpha(x, y)");
  ker->add_option("--alpha", k_alpha, "Kernel parameter");
  ker->add_option("--dim", k_dim, "Dimension");
  ker->add_option("--x", k_x, "Point, comma separated")->required();
  ker->add_option("--y", k_y, "Point, comma separated")->required();
  ker->add_option("--tol", k_tol, "Truncation tolerance")->check(CLI::PositiveNumber);

  double a_b = 0.0, a_c = 0.0, a_t = 0.0;
  int a_dim = 2;
  std::string a_f = "const1", a_x;
  Quad a_quad;
  auto* apl = app.add_subcommand("apply", "Evaluate T_bc f(x), or D_c^t T_bc f(x) with --t");
  apl->add_option("--b", a_b);
  apl->add_option("--c", a_c);
  apl->add_option("--t", a_t, "Order of D_c^t applied to T_bc f");
  apl->add_option("--f", a_f, "const1 | fuv:u,v | JSON expansion | @file.json");
  apl->add_option("--x", a_x, "Point, comma separated")->required();
  apl->add_option("--dim", a_dim);
  a_quad.add(apl);

  std::string n_f = "const1", n_space = "lp", n_p = "2";
  double n_alpha = 0.0, n_b = 0.0, n_c = 0.0, n_q = 2.0, n_beta = 0.0;
  int n_dim = 2;
  Quad n_quad;
  auto* nrm = app.add_subcommand("norm", "Weighted norms: ||f||_{L^p_alpha}, or Besov/Bloch norms of T_bc f");
  nrm->add_option("--f", n_f, "const1 | fuv:u,v | JSON expansion | @file.json");
  nrm->add_option("--space", n_space, "lp | besov | bloch");
  nrm->add_option("--p", n_p, "Exponent for --space lp, >= 1 or inf");
  nrm->add_option("--alpha", n_alpha, "Weight for --space lp");
  nrm->add_option("--b", n_b, "b of T_bc for besov/bloch");
  nrm->add_option("--c", n_c, "c of T_bc for besov/bloch");
  nrm->add_option("--q", n_q, "Exponent for --space besov");
  nrm->add_option("--beta", n_beta, "Weight for besov/bloch");
  nrm->add_option("--dim", n_dim);
  n_quad.add(nrm);

  ParamFlags pr_flags;
  Quad pr_quad;
  bool pr_floor = false, pr_suite = false;
  double pr_growth = 10.0, pr_band = 0.10;
  auto* prb = app.add_subcommand("probe", "Numerical evidence for a verdict");
  pr_flags.add(prb);
  pr_quad.add(prb);
  prb->add_option("--growth-factor", pr_growth, "Growth threshold of the ratio probe");
  prb->add_option("--plateau-band", pr_band, "Plateau band of the ratio probe");
  prb->add_flag("--kernel-floor", pr_floor, "Report the kernel-floor radius for --alpha, --dim");
  prb->add_flag("--suite", pr_suite, "Run the curated boundary suite");

  std::string s_b = "0", s_c = "0", s_alpha = "0", s_beta = "0", s_p = "2", s_q, s_target = "besov",
              s_out = "-";
  int s_dim = 2;
  auto* swp = app.add_subcommand("sweep", "Classify a parameter grid and write CSV");
  swp->add_option("--b", s_b, "Range lo:hi:n or list");
  swp->add_option("--c", s_c, "Range lo:hi:n or list");
  swp->add_option("--alpha", s_alpha, "Range lo:hi:n or list");
  swp->add_option("--beta", s_beta, "Range lo:hi:n or list");
  swp->add_option("--p", s_p, "Range or list (entries may be inf)");
  swp->add_option("--q", s_q, "Range or list (entries may be inf)");
  swp->add_option("--target", s_target);
  swp->add_option("--dim", s_dim);
  swp->add_option("--out", s_out, "Output CSV path, - for standard output");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (cls->parsed()) {
      const OperatorParams prm = cls_flags.build();
      json j = to_json(classify(prm));
      j["inputs"] = to_json(prm);
      emit(out, j);
      return kExitOk;
    }
    if (ker->parsed()) {
      const Point x = parse_point(k_x);
      const Point y = parse_point(k_y);
      const KernelSpec spec{k_alpha, k_dim, k_tol};
      const double value = kernel_eval(spec, x, y);
      const unsigned K = truncation_degree(spec, std::sqrt(squared_norm(x)), std::sqrt(squared_norm(y)));
      emit(out, {{"inputs", {{"alpha", k_alpha}, {"dim", k_dim}, {"x", x}, {"y", y}, {"tol", k_tol}}},
                 {"value", value},
                 {"truncation_degree", K}});
      return kExitOk;
    }
    if (apl->parsed()) {
      const Point x = parse_point(a_x);
      if (static_cast<int>(x.size()) != a_dim) throw std::invalid_argument("--x must have --dim entries");
      const BallFunction f = parse_function(a_f, a_dim);
      const KernelSpec spec{a_c, a_dim, a_quad.tol};
      const BallQuadrature rule = operator_rule(a_dim, a_quad.config, a_b);
      const OperatorValue v = apply_T_derivative(a_b, a_c, a_t, f, x, spec, rule);
      json inputs = {{"b", a_b}, {"c", a_c}, {"t", a_t}, {"f", a_f}, {"x", x}, {"dim", a_dim}};
      inputs.update(a_quad.echo());
      emit(out, {{"inputs", inputs}, {"value", json_number(v.value)}, {"divergent", v.divergent}});
      return kExitOk;
    }
    if (nrm->parsed()) {
      const BallFunction f = parse_function(n_f, n_dim);
      json inputs = {{"f", n_f}, {"space", n_space}, {"dim", n_dim}};
      inputs.update(n_quad.echo());
      json result;
      if (n_space == "lp") {
        const ExtExponent p = ExtExponent::parse(n_p);
        inputs["p"] = to_json(p);
        inputs["alpha"] = n_alpha;
        NormEstimate est;
        if (const auto* tf = std::get_if<TestFunction>(&f)) {
          est = test_function_norm(*tf, p, n_alpha, n_dim);
        } else {
          const BallQuadrature rule(n_dim, n_quad.config, n_alpha > -1.0 ? n_alpha : 0.0);
          est = lp_norm([&](PointView x) { return evaluate(f, x); }, p, n_alpha, rule);
        }
        result = {{"value", json_number(est.value)}, {"divergent", est.divergent},
                  {"std_error", est.std_error}};
      } else if (n_space == "besov" || n_space == "bloch") {
        inputs["b"] = n_b;
        inputs["c"] = n_c;
        inputs["beta"] = n_beta;
        const KernelSpec spec{n_c, n_dim, n_quad.tol};
        SpaceNorm sn;
        if (n_space == "besov") {
          inputs["q"] = n_q;
          if (!(n_q >= 1.0) || !std::isfinite(n_q)) throw std::invalid_argument("--q must be finite and >= 1");
          const BallQuadrature rule(n_dim, n_quad.config, n_beta + n_q * besov_order(n_q, n_beta));
          sn = besov_norm(n_b, n_c, f, n_q, n_beta, spec, rule);
        } else {
          const BallQuadrature rule(n_dim, n_quad.config, 0.0);
          sn = bloch_norm(n_b, n_c, f, n_beta, spec, rule);
        }
        result = {{"value", json_number(sn.value)}, {"divergent", sn.divergent}, {"s", sn.s},
                  {"t", sn.t}, {"std_error", sn.std_error}};
      } else {
        throw std::invalid_argument("--space must be lp, besov or bloch");
      }
      result["inputs"] = inputs;
      emit(out, result);
      return kExitOk;
    }
    if (prb->parsed()) {
      ProbeConfig cfg;
      cfg.quadrature = pr_quad.config;
      cfg.kernel_tol = pr_quad.tol;
      cfg.growth_factor = pr_growth;
      cfg.plateau_band = pr_band;
      json inputs = pr_quad.echo();
      inputs["growth_factor"] = pr_growth;
      inputs["plateau_band"] = pr_band;
      if (pr_floor) {
        inputs["alpha"] = pr_flags.alpha;
        inputs["dim"] = pr_flags.dim;
        const double eps = kernel_floor_probe(pr_flags.alpha, pr_flags.dim, pr_quad.tol);
        emit(out, {{"inputs", inputs}, {"epsilon", eps}});
        return kExitOk;
      }
      if (pr_suite) {
        json rows = json::array();
        int fin_ok = 0, ratio_ok = 0, total = 0;
        for (const auto& entry : curated_suite()) {
          const auto fin = finiteness_probe(entry.params);
          const auto rat = ratio_probe(entry.params, cfg);
          fin_ok += fin.agree;
          ratio_ok += rat.agree;
          ++total;
          rows.push_back({{"label", entry.label},
                          {"params", to_json(entry.params)},
                          {"bounded", classify(entry.params).bounded},
                          {"finiteness", to_json(fin)},
                          {"ratio", to_json(rat)}});
        }
        emit(out, {{"inputs", inputs},
                   {"entries", rows},
                   {"finiteness_agreement", static_cast<double>(fin_ok) / total},
                   {"ratio_agreement", static_cast<double>(ratio_ok) / total}});
        return kExitOk;
      }
      const OperatorParams prm = pr_flags.build();
      json j = to_json(probe(prm, cfg));
      inputs.update(to_json(prm));
      j["inputs"] = inputs;
      emit(out, j);
      return kExitOk;
    }
    if (swp->parsed()) {
      const auto bs = parse_range(s_b);
      const auto cs = parse_range(s_c);
      const auto as = parse_range(s_alpha);
      const auto betas = parse_range(s_beta);
      const auto ps = parse_exponent_range(s_p);
      const TargetKind target = parse_target(s_target);
      const auto qs = s_q.empty() ? std::vector<std::string>{target_has_finite_q(target) ? "2" : "inf"}
                                  : parse_exponent_range(s_q);
      std::ostringstream csv;
      csv << "b,c,alpha,beta,p,q,target,dim,bounded,part,binding_slack\n";
      for (double b : bs)
        for (double c : cs)
          for (double a : as)
            for (double be : betas)
              for (const auto& p : ps)
                for (const auto& q : qs) {
                  OperatorParams prm;
                  prm.b = b;
                  prm.c = c;
                  prm.alpha = a;
                  prm.beta = be;
                  prm.p = ExtExponent::parse(p);
                  prm.q = ExtExponent::parse(q);
                  prm.target = target;
                  prm.dim = s_dim;
                  const Verdict v = classify(prm);
                  csv << csv_number(b) << ',' << csv_number(c) << ',' << csv_number(a) << ','
                      << csv_number(be) << ',' << prm.p.to_string() << ',' << prm.q.to_string() << ','
                      << to_string(target) << ',' << s_dim << ',' << (v.bounded ? "true" : "false")
                      << ',' << v.theorem_part << ',' << csv_number(v.binding_slack()) << '\n';
                }
      if (s_out == "-") {
        out << csv.str();
      } else {
        std::ofstream file(s_out, std::ios::binary);
        if (!file) {
          err << "error: cannot open " << s_out << " for writing\n";
          return kExitFailure;
        }
        file << csv.str();
        if (!file.good()) {
          err << "error: failed writing " << s_out << '\n';
          return kExitFailure;
        }
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hbb::cli
