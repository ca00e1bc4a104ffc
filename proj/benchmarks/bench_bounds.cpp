#include <benchmark/benchmark.h>

#include "igbounds/analysis.hpp"

namespace {

using namespace igbounds;

// Parameters cover the negative, small-positive and large-positive regimes.
constexpr double kParams[] = {-7.5, -0.5, 0.5, 2.5, 7.5};

void BM_GBound(benchmark::State& state) {
  const double a = kParams[state.range(0)];
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(G_bound(a, x));
    x = x < 100 ? x * 1.7 : 0.37;
  }
}
BENCHMARK(BM_GBound)->DenseRange(2, 4);

void BM_BracketDouble(benchmark::State& state) {
  const double a = kParams[state.range(0)];
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bracket(a, x, Mode::Tamed));
    x = x < 100 ? x * 1.7 : 0.37;
  }
}
BENCHMARK(BM_BracketDouble)->DenseRange(0, 4);

void BM_BracketQuad(benchmark::State& state) {
  const quad a = kParams[state.range(0)];
  const quad x = 2.25;
  for (auto _ : state) benchmark::DoNotOptimize(bracket<quad>(a, x, Mode::Plain));
}
BENCHMARK(BM_BracketQuad)->DenseRange(0, 4);

void BM_OracleFast(benchmark::State& state) {
  const double a = kParams[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(igamma_ref(a, 0.8));
}
BENCHMARK(BM_OracleFast)->DenseRange(0, 4);

void BM_OracleVerifyQuad(benchmark::State& state) {
  const quad a = kParams[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(igamma_ref<quad>(a, quad(0.8), OracleMode::Verify));
}
BENCHMARK(BM_OracleVerifyQuad)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_VerifyGrid(benchmark::State& state) {
  const GridSpec grid{{-3.5, 0.5, 4.5}, log_points(1e-4, 1e2, 8)};
  for (auto _ : state) benchmark::DoNotOptimize(verify_all(grid, Mode::Plain));
}
BENCHMARK(BM_VerifyGrid)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
