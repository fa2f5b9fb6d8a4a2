#include <benchmark/benchmark.h>

#include "uniprior/constructions.hpp"
#include "uniprior/mixture.hpp"
#include "uniprior/param_class.hpp"

using namespace uniprior;

/* cost of one posterior update as the class grows */
static void BM_PosteriorAdvance(benchmark::State& state) {
  auto cls = ParamClass::dense(static_cast<int>(state.range(0)));
  Mixture mix = Mixture::surrogate(cls.bernoulli_models());
  Seq x = sample_sequence(*mix.component(0).model, 4096, 7);

  std::size_t pos = 0;
  PosteriorState ps(mix);
  for (auto _ : state) {
    if (pos == x.size()) {
      state.PauseTiming();
      ps = PosteriorState(mix);
      pos = 0;
      state.ResumeTiming();
    }
    ps.advance(x[pos++]);
    benchmark::DoNotOptimize(ps.joint());
  }
  state.SetItemsProcessed(state.iterations());
  state.counters["components"] = static_cast<double>(mix.component_count());
}
BENCHMARK(BM_PosteriorAdvance)->Arg(4)->Arg(8)->Arg(16);

static void BM_MixJoint(benchmark::State& state) {
  auto cls = ParamClass::dense(8);
  Mixture mix = Mixture::surrogate(cls.bernoulli_models());
  Seq x = sample_sequence(*mix.component(5).model, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(mix_joint(mix, x));
}
BENCHMARK(BM_MixJoint)->Arg(64)->Arg(256)->Arg(1024);
