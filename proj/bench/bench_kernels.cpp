// Serial reference kernels against their OpenMP counterparts. Arg 0 runs
// serial, arg 1 parallel.

#include <benchmark/benchmark.h>

#include "ghp/diagnostics.hpp"
#include "ghp/kernels.hpp"
#include "ghp/limit_laws.hpp"

namespace {

ghp::Execution execution_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ghp::Execution::serial : ghp::Execution::parallel;
}

void BM_RatioSums(benchmark::State& state) {
  const std::vector<ghp::WeightFunction> weights{
      ghp::WeightFunction::power(1.0), ghp::WeightFunction::power(0.75),
      ghp::WeightFunction::power(0.25)};
  const std::int64_t k = state.range(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghp::ratio_sums(weights, k, execution_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * k);
}
BENCHMARK(BM_RatioSums)->ArgsProduct({{0, 1}, {100'000, 1'000'000}})->Unit(benchmark::kMillisecond);

void BM_McReplicates(benchmark::State& state) {
  ghp::McConfig c;
  c.model = ghp::TailModel::pareto(1.0);
  c.weights = {ghp::WeightFunction::power(1.0), ghp::WeightFunction::power(0.25)};
  c.n = 10'000;
  c.k = 300;
  c.reps = state.range(1);
  c.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghp::mc_replicates(c, execution_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * c.reps);
}
BENCHMARK(BM_McReplicates)->ArgsProduct({{0, 1}, {2000}})->Unit(benchmark::kMillisecond);

void BM_LimitDraws(benchmark::State& state) {
  const auto spec = ghp::make_limit_law(ghp::WeightFunction::power(0.0));
  const std::int64_t count = state.range(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ghp::sample_limit_L_streams(spec, 1, 0, count, state.range(0) == 1));
  }
  state.SetItemsProcessed(state.iterations() * count);
}
BENCHMARK(BM_LimitDraws)->ArgsProduct({{0, 1}, {20'000}})->Unit(benchmark::kMillisecond);

void BM_PooledMalmquist(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghp::pooled_malmquist(10'000, 100, 1000, 1, execution_of(state)));
  }
}
BENCHMARK(BM_PooledMalmquist)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
