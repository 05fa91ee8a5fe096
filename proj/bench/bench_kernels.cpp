#include <benchmark/benchmark.h>

#include "sparsecut/partitioner.hpp"
#include "sparsecut/random_walk.hpp"
#include "sparsecut/testbed.hpp"

namespace {

using namespace sparsecut;

const Graph& walk_graph() {
  static const Graph g = erdos_renyi(20000, 0.001, 11);
  return g;
}

void BM_LazyStep(benchmark::State& state, Execution exec) {
  const Graph& g = walk_graph();
  DenseDistribution p = point_mass(g, 0);
  for (int i = 0; i < 5; ++i) p = lazy_step(g, p, exec);
  for (auto _ : state) benchmark::DoNotOptimize(lazy_step(g, p, exec));
  state.SetItemsProcessed(state.iterations() * g.total_volume());
}

void BM_LazyStepReference(benchmark::State& state) {
  const Graph& g = walk_graph();
  DenseDistribution p = point_mass(g, 0);
  for (int i = 0; i < 5; ++i) p = lazy_step_reference(g, p);
  for (auto _ : state) benchmark::DoNotOptimize(lazy_step_reference(g, p));
  state.SetItemsProcessed(state.iterations() * g.total_volume());
}

void BM_TruncatedWalk(benchmark::State& state) {
  const Graph& g = walk_graph();
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_walk(g, 0, {20, eps}));
}

void BM_Global(benchmark::State& state, Execution exec) {
  static const PlantedInstance inst = ring_of_cliques(16, 10);
  const GlobalParams params{inst.planted.volume, 0.01, 50};
  for (auto _ : state) benchmark::DoNotOptimize(global_sparsest_cut(inst.graph, params, exec));
}

BENCHMARK_CAPTURE(BM_LazyStep, parallel, Execution::parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_LazyStep, serial, Execution::serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LazyStepReference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TruncatedWalk)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Global, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Global, serial, Execution::serial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
