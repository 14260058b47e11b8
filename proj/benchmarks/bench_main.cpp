#include <benchmark/benchmark.h>

#include "hbb/classifier.hpp"
#include "hbb/kernel.hpp"
#include "hbb/operators.hpp"
#include "hbb/quadrature.hpp"

namespace {

void BM_KernelEval(benchmark::State& state) {
  const double r = state.range(0) / 100.0;
  const hbb::KernelSpec spec{1.5, 3, 1e-10};
  const hbb::Point x{r, 0.0, 0.0};
  const hbb::Point y{0.0, r, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(hbb::kernel_eval(spec, x, y));
}
BENCHMARK(BM_KernelEval)->Arg(50)->Arg(90)->Arg(99);

void BM_GaussJacobi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hbb::gauss_jacobi(n, 0.5, -0.3));
}
BENCHMARK(BM_GaussJacobi)->Arg(32)->Arg(128)->Arg(512);

void BM_Classify(benchmark::State& state) {
  hbb::OperatorParams prm;
  prm.p = hbb::ExtExponent(1.0);
  prm.b = 0.5;
  prm.c = -1.0;
  for (auto _ : state) benchmark::DoNotOptimize(hbb::classify(prm));
}
BENCHMARK(BM_Classify);

void BM_ApplyT(benchmark::State& state) {
  hbb::QuadratureConfig cfg;
  cfg.radial_nodes = static_cast<int>(state.range(0));
  const hbb::BallQuadrature rule = hbb::operator_rule(2, cfg, 0.0);
  const hbb::KernelSpec spec{0.0, 2, 1e-10};
  const hbb::BallIntegrand f = [](hbb::PointView y) { return y[0] * y[0] + y[1]; };
  const hbb::Point x{0.4, -0.3};
  for (auto _ : state) benchmark::DoNotOptimize(hbb::apply_T(0.0, 1.0, f, x, spec, rule));
}
BENCHMARK(BM_ApplyT)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
