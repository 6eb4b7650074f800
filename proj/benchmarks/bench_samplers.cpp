#include <benchmark/benchmark.h>

#include <vector>

#include "drawcouple/samplers.hpp"

namespace {

using namespace drawcouple;

Population skewed(std::size_t size) {
  std::vector<double> w(size), v(size, 0.0);
  Rng rng({1, 0});
  for (double& x : w) x = 0.01 + rng.uniform01() * rng.uniform01();
  return Population(std::move(w), std::move(v));
}

void BM_AliasBuild(benchmark::State& state) {
  const auto pop = skewed(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(AliasTable(pop.weights()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AliasBuild)->RangeMultiplier(10)->Range(100, 1'000'000)->Complexity();

void BM_AliasDraw(benchmark::State& state) {
  const auto pop = skewed(static_cast<std::size_t>(state.range(0)));
  const WithReplacementSampler sampler(pop);
  Rng rng({2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(rng));
}
BENCHMARK(BM_AliasDraw)->RangeMultiplier(100)->Range(100, 1'000'000);

void BM_SuccessiveFull(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto pop = skewed(size);
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(draw_without_replacement(pop, size, {3, stream++}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SuccessiveFull)->RangeMultiplier(10)->Range(1000, 1'000'000)->Complexity(benchmark::oNLogN)
    ->Unit(benchmark::kMillisecond);

void BM_SuccessivePrefix(benchmark::State& state) {
  const auto pop = skewed(1'000'000);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(draw_without_replacement(pop, n, {4, stream++}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SuccessivePrefix)->Arg(10)->Arg(1000)->Arg(100'000)->Unit(benchmark::kMicrosecond);

void BM_PolyaDraws(benchmark::State& state) {
  const auto pop = skewed(1000);
  const auto d = static_cast<int>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(draw_polya(pop, d, 10'000, {5, stream++}));
  state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_PolyaDraws)->Arg(1)->Arg(2)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_PhiloxUniform(benchmark::State& state) {
  Rng rng({6, 0});
  for (auto _ : state) benchmark::DoNotOptimize(rng.uniform01());
}
BENCHMARK(BM_PhiloxUniform);

}  // namespace
