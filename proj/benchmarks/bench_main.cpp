#include <benchmark/benchmark.h>

#include <cmath>

#include "gausstail/evaluator.hpp"
#include "gausstail/expansion.hpp"
#include "gausstail/moments.hpp"
#include "gausstail/setmodel.hpp"

using namespace gausstail;

static void BM_Erf(benchmark::State& state) {
  double x = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gausstail::erf(x));
    x = x > 5.0 ? -5.0 : x + 0.013;
  }
}
BENCHMARK(BM_Erf);

static void BM_CompleteLogMoment(benchmark::State& state) {
  const int j = static_cast<int>(state.range(0));
  double a = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(complete_log_moment(a, j));
    a = a > 6.0 ? 0.5 : a + 0.25;
  }
}
BENCHMARK(BM_CompleteLogMoment)->Arg(0)->Arg(2)->Arg(4);

static void BM_UpperIncompleteLogMoment(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(upper_incomplete_log_moment(-1.5, 1, std::sqrt(2.0), 0.3));
}
BENCHMARK(BM_UpperIncompleteLogMoment);

static void BM_PhiQuadrature(benchmark::State& state) {
  static const char* names[] = {"ball:n=2,R=1", "ex34", "ex38", "ex39"};
  const SetModel m = builtin(names[state.range(0)]);
  state.SetLabel(names[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(phi_quadrature(m, 0.01).value);
}
BENCHMARK(BM_PhiQuadrature)->DenseRange(0, 3);

static void BM_ExpandAtZero(benchmark::State& state) {
  const SetModel m = builtin("ex38");
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand_at_zero(m, K).series.terms().size());
}
BENCHMARK(BM_ExpandAtZero)->Arg(8)->Arg(64);

static void BM_ExpandAtInfinity(benchmark::State& state) {
  const SetModel m = builtin(state.range(0) == 0 ? "ex34" : "ball:n=3,R=1");
  const int K = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(expand_at_infinity(m, K).series.terms().size());
}
BENCHMARK(BM_ExpandAtInfinity)->Args({0, 4})->Args({0, 16})->Args({1, 16});

static void BM_MonteCarlo(benchmark::State& state) {
  const SetModel m = builtin("ex39");
  const std::int64_t samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(phi_montecarlo(m, 0.3, samples, 7).estimate);
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_MonteCarlo)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
