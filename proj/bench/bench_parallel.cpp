// Serial reference against the OpenMP kernels on the three parallel paths:
// conditional kernel tables, Monte Carlo sampling and theorem suites.

#include <benchmark/benchmark.h>

#include "ams/catalog.hpp"
#include "ams/oracle.hpp"
#include "ams/random.hpp"
#include "ams/theorems.hpp"

namespace {

using namespace ams;

struct Fixture {
  FsmSource src;
  FsmChannel ch;
  JointSource joint;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    SplitMix64 rng(77);
    FsmSource s = random_stationary_source(rng, letters(3), 4);
    FsmChannel c = random_dense_channel(rng, letters(3), letters(2), 3);
    return Fixture{s, c, hookup(s, c)};
  }();
  return f;
}

void BM_ConditionalTableSerial(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(conditional_table_serial(f.joint, f.src, state.range(0)));
  }
}

void BM_ConditionalTableParallel(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(conditional_table(f.joint, f.src, state.range(0)));
  }
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::monte_carlo_serial(f.joint.source, 4, state.range(0), 5));
  }
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::monte_carlo(f.joint.source, 4, state.range(0), 5));
  }
}

void BM_TheoremSuiteSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_theorem_suite_serial("prop10", state.range(0), 3, 9));
}

void BM_TheoremSuiteParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_theorem_suite("prop10", state.range(0), 3, 9));
}

}  // namespace

BENCHMARK(BM_ConditionalTableSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConditionalTableParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TheoremSuiteSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TheoremSuiteParallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
