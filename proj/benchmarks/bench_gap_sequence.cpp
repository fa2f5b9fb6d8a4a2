#include <benchmark/benchmark.h>

#include "uniprior/constructions.hpp"

using namespace uniprior;

static void BM_GreedyGapSequence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rational t0 = make_rational(1, 4), t1 = make_rational(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_gap_sequence(t0, t1, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_GreedyGapSequence)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

static void BM_GapExperiment(benchmark::State& state) {
  auto cls = ParamClass::gapped(make_rational(1, 4), make_rational(1, 2));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto report = gap_experiment(cls, WeightScheme::kSurrogate, n);
    benchmark::DoNotOptimize(report.ones_freq);
  }
}
BENCHMARK(BM_GapExperiment)->Arg(1 << 10)->Arg(1 << 14);

BENCHMARK_MAIN();
