#include <cmath>
#include <random>

#include <doctest.h>

#include "hbb/operators.hpp"
#include "test_support.hpp"

using namespace hbb;
using hbb::test::near;
using hbb::test::near_rel;
using hbb::test::oracles;

namespace {

const BallIntegrand kOne = [](PointView) { return 1.0; };
// f_00 = 1, integrated radially.
const TestFunction kConstant{0.0, 0.0};

Point e1(int n) {
  Point e(n, 0.0);
  e[0] = 1.0;
  return e;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("test_function_eval") {
  const Point x{0.3, -0.5};
  CHECK(test_function_eval({0.0, 0.0}, x) == 1.0);
  CHECK(test_function_eval({-2.5, 3.0}, Point{0.0, 0.0}) == 1.0);
  const double r = std::sqrt(1.0 - std::exp(-1.0));
  CHECK(near(test_function_eval({1.0, 1.0}, Point{r, 0.0, 0.0}), std::exp(-1.0) / 2.0, 1e-15));
  CHECK_THROWS(test_function_eval({0.0, 0.0}, Point{1.0, 0.0}));
}

TEST_CASE("apply_T of the constant") {
  for (int n : {2, 3}) {
    const KernelSpec spec{0.0, n, 1e-10};
    const BallQuadrature rule = operator_rule(n, QuadratureConfig{}, 0.0);
    for (double c : {-3.0, 0.0, 2.5}) {
      CHECK(near(apply_T(0.0, c, kOne, Point(n, 0.0), spec, rule).value, 1.0, 1e-12));
    }
    Point x(n, 0.0);
    x[0] = 0.6;
    CHECK(near(apply_T(0.0, 1.5, kOne, x, spec, rule).value, 1.0, 1e-9));
  }
}

TEST_CASE("apply_T of radial test functions at the origin") {
  for (int n : {2, 3}) {
    const KernelSpec spec{0.0, n, 1e-10};
    const BallQuadrature rule = operator_rule(n, QuadratureConfig{}, 0.0);
    const Point o(n, 0.0);
    for (auto [b, u] : {std::pair{0.0, -0.5}, {1.0, -1.5}, {-0.5, 0.25}}) {
      const OperatorValue tv = apply_T(b, 0.0, TestFunction{u, 0.0}, o, spec, rule);
      CHECK_FALSE(tv.divergent);
      CHECK(near_rel(tv.value, normalization_V(b + u, n), 1e-10));
      // The same integral through the ball rule.
      const BallIntegrand f = [u](PointView y) { return std::pow(1.0 - squared_norm(y), u); };
      const OperatorValue bv = apply_T(b, 0.0, f, o, spec, operator_rule(n, QuadratureConfig{}, b));
      if (b + u >= 0.0) CHECK(near_rel(bv.value, tv.value, 1e-10));
    }
  }
  for (const auto& row : oracles()["T_fuv_at_0"]) {
    const int n = row["n"];
    const OperatorValue tv = apply_T(row["b"], 0.0, TestFunction{row["u"], row["v"]}, Point(n, 0.0),
                                     KernelSpec{0.0, n, 1e-10}, operator_rule(n, QuadratureConfig{}, 0.0));
    CHECK_FALSE(tv.divergent);
    CHECK(near_rel(tv.value, row["value"], 1e-9));
  }
}

TEST_CASE("apply_T divergence on the critical line") {
  const BallQuadrature rule = operator_rule(2, QuadratureConfig{}, 0.0);
  const KernelSpec spec{0.0, 2, 1e-10};
  const Point o{0.0, 0.0};
  for (double v : {-1.0, 0.0, 0.5, 1.0}) CHECK(apply_T(0.0, 0.0, TestFunction{-1.0, v}, o, spec, rule).divergent);
  CHECK_FALSE(apply_T(0.0, 0.0, TestFunction{-1.0, 1.5}, o, spec, rule).divergent);
  CHECK(apply_T(-1.0, 0.0, TestFunction{-0.2, 0.0}, o, spec, rule).divergent);
}

TEST_CASE("apply_T with b <= -1 through the ball rule") {
  const BallQuadrature rule = operator_rule(2, QuadratureConfig{}, -1.5);
  const KernelSpec spec{0.0, 2, 1e-10};
  const Point x{0.2, 0.1};
  const auto power = [](double g) {
    return BallIntegrand([g](PointView y) { return std::pow(1.0 - squared_norm(y), g); });
  };
  CHECK(apply_T(-1.5, 0.0, power(0.5), x, spec, rule).divergent);
  CHECK(apply_T(-1.5, 0.0, power(0.2), x, spec, rule).divergent);
  const OperatorValue ok = apply_T(-1.5, 0.0, power(2.5), x, spec, rule);
  CHECK_FALSE(ok.divergent);
  CHECK(near_rel(ok.value, normalization_V(1.0, 2), 1e-8));
  CHECK_FALSE(apply_T(-1.5, 0.0, power(0.8), x, spec, rule).divergent);
}

TEST_CASE("projection_Q reproduces constants and degree-1 harmonics") {
  std::mt19937_64 rng(29);
  for (int n : {2, 3}) {
    for (double alpha : {0.0, 1.0, 2.5}) {
      const KernelSpec spec{alpha, n, 1e-12};
      const BallQuadrature rule = operator_rule(n, QuadratureConfig{}, alpha);
      const Point e = e1(n);
      const BallIntegrand z1 = [e](PointView y) { return zonal_harmonic(1, y, e); };
      for (int i = 0; i < 5; ++i) {
        const Point x = test::random_point(rng, n, 0.9);
        CHECK(near(projection_Q(alpha, kOne, x, spec, rule).value, 1.0, 1e-9));
        CHECK(near(projection_Q(alpha, z1, x, spec, rule).value, zonal_harmonic(1, x, e), 1e-6));
      }
    }
  }
}

TEST_CASE("projection_Q of a non-harmonic function is harmonic") {
  // Q_alpha y1^2 = x1^2 - |x|^2/n + 1/(n+2alpha+2).
  for (int n : {2, 3}) {
    for (double alpha : {0.0, 1.0}) {
      const KernelSpec spec{alpha, n, 1e-13};
      const BallQuadrature rule = operator_rule(n, QuadratureConfig{}, alpha);
      const BallIntegrand f = [](PointView y) { return y[0] * y[0]; };
      const Point x = n == 2 ? Point{0.3, -0.2} : Point{0.1, 0.35, -0.25};
      const double exact = x[0] * x[0] - squared_norm(x) / n + 1.0 / (n + 2.0 * alpha + 2.0);
      const double q0 = projection_Q(alpha, f, x, spec, rule).value;
      CHECK(near(q0, exact, 1e-9));
      const double h = 1e-2;
      double lap = 0.0;
      for (int i = 0; i < n; ++i) {
        Point xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        lap += projection_Q(alpha, f, xp, spec, rule).value - 2.0 * q0 + projection_Q(alpha, f, xm, spec, rule).value;
      }
      CHECK(std::abs(lap / (h * h)) < 1e-4);
      // The input itself is not harmonic: its Laplacian is 2.
    }
  }
}

TEST_CASE("apply_T_spectral matches quadrature") {
  HarmonicExpansion f(3);
  f.add_term(2, Point{0.3, 0.4, -0.2}, 1.5);
  f.add_term(1, Point{0.0, -0.8, 0.1}, -0.7);
  f.add_term(0, Point{0.0, 0.0, 0.0}, 0.25);
  const BallIntegrand sampled = [&f](PointView y) { return f.evaluate(y); };
  const KernelSpec spec{0.0, 3, 1e-12};
  const double b = 0.5, c = -1.25;
  const HarmonicExpansion g = apply_T_spectral(b, c, f);
  const BallQuadrature rule = operator_rule(3, QuadratureConfig{}, b);
  for (const Point& x : {Point{0.1, 0.2, 0.3}, Point{-0.5, 0.4, 0.6}}) {
    CHECK(near(apply_T(b, c, sampled, x, spec, rule).value, g.evaluate(x), 1e-9));
  }
  CHECK_THROWS_AS(apply_T_spectral(-1.0, 0.0, f), DivergenceError);
  CHECK(apply_T_spectral(-1.0, 0.0, HarmonicExpansion(3)).empty());
}

TEST_CASE("apply_T_derivative") {
  const KernelSpec spec{0.0, 2, 1e-12};
  const BallQuadrature rule = operator_rule(2, QuadratureConfig{}, 0.0);
  const Point x{0.25, -0.4};
  const BallIntegrand f = [](PointView y) { return std::exp(y[0]) * (1.0 + y[1] * y[1]); };
  CHECK(apply_T_derivative(0.0, 0.7, 0.0, f, x, spec, rule).value == apply_T(0.0, 0.7, f, x, spec, rule).value);
  CHECK(near(apply_T_derivative(0.0, -2.0, 3.5, kOne, Point{0.0, 0.0}, spec, rule).value, 1.0, 1e-12));
}

TEST_CASE("apply_T_derivative against the expansion route") {
  // T_bc f is an expansion when f is one; D_c^t then acts coefficientwise.
  HarmonicExpansion f(2);
  f.add_term(3, Point{0.6, 0.2}, 2.0);
  f.add_term(1, Point{-0.3, 0.9}, 0.5);
  f.add_term(0, Point{0.0, 0.0}, -1.0);
  const BallIntegrand sampled = [&f](PointView y) { return f.evaluate(y); };
  const KernelSpec spec{0.0, 2, 1e-12};
  std::mt19937_64 rng(31);
  for (auto [b, c, t] : {std::tuple{0.0, 0.0, 1.0}, {1.5, -0.5, 2.0}, {-0.5, 2.0, -1.5}}) {
    const HarmonicExpansion route = apply_D(c, t, apply_T_spectral(b, c, f));
    const BallQuadrature rule = operator_rule(2, QuadratureConfig{}, b);
    for (int i = 0; i < 10; ++i) {
      const Point x = test::random_point(rng, 2, 0.85);
      CHECK(near(apply_T_derivative(b, c, t, sampled, x, spec, rule).value, route.evaluate(x), 1e-8));
    }
  }
}

TEST_CASE("norm orders") {
  CHECK(besov_order(2.0, 0.0) == 0);
  CHECK(besov_order(2.0, -1.0) == 1);
  CHECK(besov_order(2.0, -3.0) == 2);
  CHECK(besov_order(1.0, -7.5) == 7);
  CHECK(bloch_order(1.0) == 0);
  CHECK(bloch_order(0.0) == 1);
  CHECK(bloch_order(-2.0) == 3);
  CHECK(bloch_order(-2.5) == 3);
}

TEST_CASE("besov_norm") {
  const KernelSpec spec{0.0, 2, 1e-10};
  const SpaceNorm one = besov_norm(0.0, 0.0, kConstant, 2.0, 0.0, spec, BallQuadrature(2, QuadratureConfig{}, 0.0));
  CHECK(one.t == 0);
  CHECK(one.s == 0.0);
  CHECK(near(one.value, 1.0, 1e-12));
  // The same g measured with t and with t+1 (weight beta - q keeps beta + q t fixed).
  HarmonicExpansion f(2);
  f.add_term(2, Point{0.7, 0.0}, 1.0);
  f.add_term(0, Point{0.0, 0.0}, 1.0);
  const double beta = -3.0, q = 2.0;
  const int t = besov_order(q, beta);
  CHECK(t == 2);
  const BallQuadrature rule(2, QuadratureConfig{}, beta + q * t);
  const SpaceNorm at_t = besov_norm(0.5, 0.25, f, q, beta, spec, rule);
  const SpaceNorm at_t1 = besov_norm(0.5, 0.25, f, q, beta - q, spec, rule);
  CHECK(at_t1.t == t + 1);
  CHECK_FALSE(at_t.divergent);
  CHECK_FALSE(at_t1.divergent);
  CHECK(std::isfinite(at_t.value));
  CHECK(std::isfinite(at_t1.value));
  CHECK(at_t.value != at_t1.value);
}

TEST_CASE("besov_norm by nested quadrature matches the spectral route") {
  HarmonicExpansion f(2);
  f.add_term(1, Point{0.0, 1.0}, 1.0);
  f.add_term(0, Point{0.0, 0.0}, 0.5);
  const BallIntegrand sampled = [&f](PointView y) { return f.evaluate(y); };
  const KernelSpec spec{0.0, 2, 1e-10};
  QuadratureConfig small;
  small.radial_nodes = 16;
  small.sphere_nodes = 32;
  const BallQuadrature rule(2, small, 0.5);
  const SpaceNorm exact = besov_norm(0.0, 1.0, f, 2.0, 0.5, spec, rule);
  const SpaceNorm nested = besov_norm(0.0, 1.0, sampled, 2.0, 0.5, spec, rule);
  CHECK_FALSE(nested.divergent);
  CHECK(near_rel(nested.value, exact.value, 1e-6));
}

TEST_CASE("bloch_norm") {
  const KernelSpec spec{0.0, 2, 1e-10};
  const BallQuadrature rule(2, QuadratureConfig{});
  const SpaceNorm one = bloch_norm(0.0, 0.0, kConstant, 1.0, spec, rule);
  CHECK(one.t == 0);
  CHECK(near(one.value, 1.0, 1e-12));
  CHECK(bloch_norm(0.0, 0.0, kConstant, 0.0, spec, rule).t == 1);
  // A bounded f with p = inf, alpha = 0, b = 0, beta = 1 and c <= 1: the grid
  // supremum settles under refinement.
  const BallIntegrand f = [](PointView y) { return std::cos(3.0 * y[0]) + y[1]; };
  QuadratureConfig coarse, fine;
  coarse.radial_nodes = 12;
  coarse.sphere_nodes = 24;
  fine.radial_nodes = 24;
  fine.sphere_nodes = 48;
  const SpaceNorm a = bloch_norm(0.0, 0.5, f, 1.0, spec, BallQuadrature(2, coarse));
  const SpaceNorm b = bloch_norm(0.0, 0.5, f, 1.0, spec, BallQuadrature(2, fine));
  CHECK_FALSE(a.divergent);
  CHECK_FALSE(b.divergent);
  CHECK(near_rel(a.value, b.value, 0.02));
}

TEST_CASE("test_function_norm") {
  for (const auto& row : oracles()["fuv_norm"]) {
    const NormEstimate e = test_function_norm({row["u"], row["v"]}, ExtExponent(row["p"]), row["alpha"], row["n"]);
    CHECK_FALSE(e.divergent);
    CHECK(near_rel(e.value, row["value"], 1e-9));
  }
  CHECK(near(test_function_norm({0.0, 0.0}, ExtExponent(3.0), 1.5, 3).value, 1.0, 1e-12));
  CHECK(test_function_norm({0.0, 0.0}, ExtExponent::infinity(), 0.0, 2).value == 1.0);
  // alpha + p u = -1 with p v <= 1.
  CHECK(test_function_norm({-0.5, 0.5}, ExtExponent(2.0), 0.0, 2).divergent);
  CHECK(test_function_norm({-0.5, 0.0}, ExtExponent(2.0), 0.0, 3).divergent);
  CHECK_FALSE(test_function_norm({-0.5, 0.6}, ExtExponent(2.0), 0.0, 3).divergent);
}

TEST_CASE("analytic predicates") {
  CHECK(test_function_in_lp({-0.4, 0.0}, ExtExponent(2.0), 0.0));
  CHECK_FALSE(test_function_in_lp({-0.5, 0.5}, ExtExponent(2.0), 0.0));
  CHECK(test_function_in_lp({-0.5, 0.51}, ExtExponent(2.0), 0.0));
  CHECK(test_function_in_lp({-1.0, 0.0}, ExtExponent::infinity(), 1.0));
  CHECK(test_function_T_finite(0.0, {-0.5, 1.0}));
  CHECK_FALSE(test_function_T_finite(0.0, {-1.0, 1.0}));
  CHECK(test_function_T_finite(0.0, {-1.0, 1.0001}));
}

}  // TEST_SUITE
