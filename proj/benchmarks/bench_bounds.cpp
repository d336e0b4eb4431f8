#include <benchmark/benchmark.h>

#include "bcregions/bounds.hpp"
#include "bcregions/entropy_cache.hpp"
#include "bcregions/region_search.hpp"
#include "bcregions/sampling.hpp"

using namespace bcr;

namespace {

StateBroadcastChannel channel(Rng& rng) {
  std::vector<double> kernel;
  for (int i = 0; i < 4; ++i) {
    const auto row = random_simplex(rng, 4);
    kernel.insert(kernel.end(), row.begin(), row.end());
  }
  return checked_channel(make_channel({2, 2, 2, 2}, random_simplex(rng, 2), kernel));
}

}  // namespace

static void BM_Entropy(benchmark::State& state) {
  Rng rng(1);
  const JointPMF j = random_joint(rng, {{"A", 3}, {"B", 3}, {"C", 3}, {"D", 3}, {"E", 3}});
  for (auto _ : state) benchmark::DoNotOptimize(mutual_information(j, {"A", "B"}, {"D"}, {"E"}));
}
BENCHMARK(BM_Entropy);

static void BM_InducedJoint(benchmark::State& state) {
  Rng rng(2);
  const auto c = channel(rng);
  const Strategy s = sample_strategy(static_cast<int>(state.range(0)), c, SearchConfig{}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(induced_joint(c, s));
}
BENCHMARK(BM_InducedJoint)->Arg(1)->Arg(2);

static void BM_Class2Terms(benchmark::State& state) {
  Rng rng(3);
  const auto c = channel(rng);
  const JointPMF j = induced_joint(c, sample_strategy(2, c, SearchConfig{}, 4));
  for (auto _ : state) {
    EntropyCache cache(j);
    benchmark::DoNotOptimize(class2_terms(cache));
  }
}
BENCHMARK(BM_Class2Terms);

static void BM_EvaluateStrategy(benchmark::State& state) {
  Rng rng(4);
  const auto c = channel(rng);
  const int cls = static_cast<int>(state.range(0));
  const Strategy s = sample_strategy(cls, c, SearchConfig{}, 5);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_strategy(BoundKind::inner, c, s));
}
BENCHMARK(BM_EvaluateStrategy)->Arg(1)->Arg(2);

static void BM_MaximizeWeighted(benchmark::State& state) {
  Rng rng(5);
  const auto c = channel(rng);
  SearchConfig cfg;
  cfg.threads = 1;
  cfg.restarts = 4;
  for (auto _ : state)
    benchmark::DoNotOptimize(maximize_weighted(1, BoundKind::outer, c, {0.6, 0.8}, cfg));
}
BENCHMARK(BM_MaximizeWeighted)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
