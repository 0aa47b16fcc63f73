#include <benchmark/benchmark.h>

#include <algorithm>

#include "netimmune/lfr.hpp"

static void BM_GenerateLfr(benchmark::State& state) {
  netimmune::LfrParams p;
  p.n = static_cast<std::size_t>(state.range(0));
  p.k_max = std::max<std::size_t>(180 * p.n / 7500, 20);
  p.c_max = std::max<std::size_t>(180 * p.n / 7500, 20);
  p.mu = static_cast<double>(state.range(1)) / 10.0;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    p.seed = seed++;
    benchmark::DoNotOptimize(netimmune::generate_lfr(p));
  }
}
BENCHMARK(BM_GenerateLfr)->Args({1000, 2})->Args({1000, 5})->Args({7500, 2})->Unit(benchmark::kMillisecond);
