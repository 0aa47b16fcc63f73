#include <benchmark/benchmark.h>

#include "netimmune/epidemic.hpp"
#include "netimmune/lfr.hpp"

namespace {

void BM_SirRun(benchmark::State& state) {
  netimmune::LfrParams p;
  p.n = static_cast<std::size_t>(state.range(0));
  p.k_max = 180 * p.n / 7500;
  p.c_max = 180 * p.n / 7500;
  p.seed = 2;
  const auto net = netimmune::generate_lfr(p);
  netimmune::SirParams sir;
  sir.lambda = static_cast<double>(state.range(1)) / 10.0;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    sir.seed = seed++;
    benchmark::DoNotOptimize(netimmune::run_sir(net.graph, sir));
  }
}
BENCHMARK(BM_SirRun)->Args({1500, 1})->Args({1500, 9})->Args({7500, 1})->Unit(benchmark::kMicrosecond);

void BM_MeanField(benchmark::State& state) {
  std::vector<std::size_t> k;
  std::vector<double> pk;
  for (std::size_t d = 1; d <= 100; ++d) {
    k.push_back(d);
    pk.push_back(0.01);
  }
  const auto dist = netimmune::DegreeDistribution::from_pairs(k, pk);
  netimmune::MeanFieldOptions o;
  o.lambda = 0.01;
  o.record_stride = 100;
  for (auto _ : state) benchmark::DoNotOptimize(netimmune::integrate_mean_field(dist, o));
}
BENCHMARK(BM_MeanField)->Unit(benchmark::kMillisecond);

}  // namespace
