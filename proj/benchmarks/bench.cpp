#include <benchmark/benchmark.h>

#include "cpnet/detect.hpp"
#include "cpnet/hyptest.hpp"
#include "cpnet/metric.hpp"
#include "cpnet/models.hpp"
#include "cpnet/rng.hpp"

namespace {

using namespace cpnet;

SampleResult cpsbm_sample(int n) {
  const auto spec =
      ModelSpec::cp_sbm(n, n / 10, 0.015 * 1000 / n, 0.0075 * 1000 / n,
                        0.001 * 1000 / n);
  return sample(spec, 42);
}

void BM_SampleCpsbm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = ModelSpec::cp_sbm(n, n / 10, 0.02, 0.01, 0.002);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(spec, seed++).graph.edge_count());
  }
}
BENCHMARK(BM_SampleCpsbm)->Arg(500)->Arg(1000)->Arg(2000);

void BM_TSampleFull(benchmark::State& state) {
  const auto s = cpsbm_sample(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_sample(s.graph, *s.truth.labels));
  }
}
BENCHMARK(BM_TSampleFull)->Arg(1000)->Arg(2000);

void BM_SwapDelta(benchmark::State& state) {
  const auto s = cpsbm_sample(1000);
  SwapState st(s.graph, *s.truth.labels);
  int u = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(st.swap_delta(u));
    u = (u + 1) % s.graph.node_count();
  }
}
BENCHMARK(BM_SwapDelta);

void BM_Detect(benchmark::State& state) {
  const auto s = cpsbm_sample(static_cast<int>(state.range(0)));
  DetectConfig cfg;
  cfg.restarts = 10;
  cfg.seed = 7;
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect(s.graph, cfg).t_value);
  }
}
BENCHMARK(BM_Detect)->Unit(benchmark::kMillisecond)->Arg(500)->Arg(1000);

void BM_PlugInRho(benchmark::State& state) {
  const auto s = cpsbm_sample(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(plug_in_rho(s.graph, *s.truth.labels));
  }
}
BENCHMARK(BM_PlugInRho)->Arg(1000)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
