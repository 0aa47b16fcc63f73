#include <benchmark/benchmark.h>

#include "netimmune/centrality.hpp"
#include "netimmune/lfr.hpp"

namespace {

netimmune::LfrNetwork network(std::size_t n) {
  netimmune::LfrParams p;
  p.n = n;
  p.k_max = 180 * n / 7500;
  p.c_max = 180 * n / 7500;
  p.seed = 1;
  return netimmune::generate_lfr(p);
}

void BM_Betweenness(benchmark::State& state) {
  const auto net = network(static_cast<std::size_t>(state.range(0)));
  const auto workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(netimmune::betweenness_centrality(net.graph, workers));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Betweenness)->Args({1000, 1})->Args({2000, 1})->Args({4000, 1})->Args({4000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_Commn(benchmark::State& state) {
  const auto net = network(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(netimmune::commn_centrality(net.graph, net.partition));
}
BENCHMARK(BM_Commn)->Arg(1500)->Arg(7500)->Unit(benchmark::kMicrosecond);

void BM_Mod(benchmark::State& state) {
  const auto net = network(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(netimmune::mod_centrality(net.graph, net.partition));
}
BENCHMARK(BM_Mod)->Arg(1500)->Arg(7500)->Unit(benchmark::kMicrosecond);

}  // namespace
