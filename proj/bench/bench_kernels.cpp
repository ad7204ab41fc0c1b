// Serial vs OpenMP kernels, and dense vs Lanczos eigensolvers.

#include <benchmark/benchmark.h>

#include <map>

#include "speccrit/criticality.hpp"
#include "speccrit/distsim.hpp"
#include "speccrit/generators.hpp"
#include "speccrit/spectral.hpp"

using namespace speccrit;

namespace {

const Graph& ba_graph(std::size_t n) {
  static std::map<std::size_t, Graph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gen_ba(n, 2, 42)).first;
  return it->second;
}

void BM_KappasSerial(benchmark::State& state) {
  const Graph& g = ba_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_kappas_serial(g, state.range(1)));
  state.SetItemsProcessed(state.iterations() * g.node_count());
}

void BM_KappasOpenMP(benchmark::State& state) {
  const Graph& g = ba_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_kappas(g, state.range(1)));
  state.SetItemsProcessed(state.iterations() * g.node_count());
}

void BM_ProtocolSerial(benchmark::State& state) {
  const Graph& g = ba_graph(state.range(0));
  distsim::SimOptions opts;
  opts.parallel = false;
  for (auto _ : state) benchmark::DoNotOptimize(distsim::run_protocol(g, 2, opts));
}

void BM_ProtocolOpenMP(benchmark::State& state) {
  const Graph& g = ba_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(distsim::run_protocol(g, 2));
}

void BM_GapDense(benchmark::State& state) {
  const Graph& g = ba_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_gap_dense(g).lambda2);
}

void BM_GapLanczos(benchmark::State& state) {
  const Graph& g = ba_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_gap_lanczos(g).lambda2);
}

}  // namespace

BENCHMARK(BM_KappasSerial)->Args({2000, 2})->Args({2000, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KappasOpenMP)->Args({2000, 2})->Args({2000, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProtocolSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProtocolOpenMP)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapDense)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapLanczos)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
