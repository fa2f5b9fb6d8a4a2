#include <benchmark/benchmark.h>

#include "uniprior/staged_approx.hpp"

using namespace uniprior;

static void BM_StagedBuild(benchmark::State& state) {
  auto machine = std::make_shared<ProgramFamilyMachine>();
  const int bits = static_cast<int>(state.range(0));
  for (auto _ : state) {
    StagedApprox approx(machine, bits, 1000);
    benchmark::DoNotOptimize(approx.programs().size());
  }
  state.counters["programs"] =
      static_cast<double>(StagedApprox(machine, bits, 1000).programs().size());
}
BENCHMARK(BM_StagedBuild)->Arg(8)->Arg(12)->Arg(16);

static void BM_StagedQuery(benchmark::State& state) {
  auto machine = std::make_shared<ProgramFamilyMachine>();
  StagedApprox approx(machine, static_cast<int>(state.range(0)), 1000);
  Seq x = Seq::parse("10110");
  for (auto _ : state) benchmark::DoNotOptimize(approx.value_exact(x));
}
BENCHMARK(BM_StagedQuery)->Arg(12)->Arg(16);
