#include <benchmark/benchmark.h>

#include <vector>

#include "drawcouple/coupling.hpp"
#include "drawcouple/harness.hpp"

namespace {

using namespace drawcouple;

Population graded(std::size_t size) {
  std::vector<double> w(size), v(size);
  for (std::size_t i = 0; i < size; ++i) {
    w[i] = 1.0 + static_cast<double>(i % 7);
    v[i] = static_cast<double>(i % 7);
  }
  return Population(std::move(w), std::move(v));
}

void BM_ScreeningCoupling(benchmark::State& state) {
  const auto pop = graded(1000);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(screening_coupling(pop, n, {1, stream++}));
}
BENCHMARK(BM_ScreeningCoupling)->Arg(10)->Arg(100)->Arg(500)->Arg(900)->Unit(benchmark::kMicrosecond);

void BM_PolyaCoupling(benchmark::State& state) {
  const auto pop = graded(50);
  PolyaCouplingOptions quiet;
  quiet.record_steps = false;
  std::uint64_t stream = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(polya_coupling(pop, 2, static_cast<int>(state.range(0)), 50,
                                            {2, stream++}, quiet));
}
BENCHMARK(BM_PolyaCoupling)->Arg(3)->Arg(5)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_EstimateV(benchmark::State& state) {
  const auto pop = graded(100);
  const auto record = screening_coupling(pop, 20, {3, 0});
  McOptions options;
  options.replicates = 1000;
  options.seed = {3, 1};
  options.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_V(pop, record, options));
}
BENCHMARK(BM_EstimateV)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
