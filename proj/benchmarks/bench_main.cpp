#include <benchmark/benchmark.h>

#include "rainbow/number_theory.hpp"
#include "rainbow/progression.hpp"
#include "rainbow/search.hpp"
#include "rainbow/zarankiewicz.hpp"

namespace {

void BM_SearchT3(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  rainbow::SearchConfig cfg;
  cfg.parallel_width = 1;
  for (auto _ : state) benchmark::DoNotOptimize(rainbow::search_rainbow_free(3, 3, n, cfg));
}
BENCHMARK(BM_SearchT3)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_SearchK4T4(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  rainbow::SearchConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(rainbow::search_rainbow_free(4, 4, n, cfg));
}
BENCHMARK(BM_SearchK4T4)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_ZarankiewiczPair(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rainbow::exact_zarankiewicz(side, side, 2, 2));
}
BENCHMARK(BM_ZarankiewiczPair)->DenseRange(4, 9)->Unit(benchmark::kMillisecond);

void BM_ZarankiewiczExhaustive(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        rainbow::exact_zarankiewicz(side, side, 2, 3, rainbow::ZarankiewiczBackend::exhaustive));
}
BENCHMARK(BM_ZarankiewiczExhaustive)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_DivisorSieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rainbow::max_tau_up_to(limit));
}
BENCHMARK(BM_DivisorSieve)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_ApFormula(benchmark::State& state) {
  std::int64_t m = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rainbow::count_aps_formula(m, 5));
    m = m % 100000 + 1;
  }
}
BENCHMARK(BM_ApFormula);

}  // namespace
BENCHMARK_MAIN();
