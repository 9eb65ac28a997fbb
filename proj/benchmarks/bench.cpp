#include <benchmark/benchmark.h>

#include "colouring/markov.hpp"
#include "colouring/rng.hpp"
#include "colouring/sim.hpp"
#include "colouring/words.hpp"

using namespace colouring;

static void BM_Normalize(benchmark::State& state) {
  SplitMix64 rng(1);
  std::vector<std::string> inputs;
  for (int t = 0; t < 256; ++t) {
    std::string s;
    for (int i = 0; i < 24; ++i) s += rng.next_bit() ? '2' : '1';
    inputs.push_back(std::move(s));
  }
  size_t i = 0;
  for (auto _ : state) {
    std::string s = inputs[i++ & 255];
    normalize_letters(s);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Normalize);

static void BM_BuildRegion(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Region r = build_region(depth, 7);
    benchmark::DoNotOptimize(r.words.size());
  }
}
BENCHMARK(BM_BuildRegion)->Arg(8)->Arg(12);

static void BM_Propagate(benchmark::State& state) {
  Region r = build_region(static_cast<int>(state.range(0)), 7);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    r.seed = ++seed;
    r.resample_bits(seed);
    const Colouring c = propagate(r, FrontierStrategy::Stationary);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * r.node_count());
}
BENCHMARK(BM_Propagate)->Arg(8)->Arg(12);

static void BM_Gadget(benchmark::State& state) {
  for (auto _ : state) {
    const GadgetReport g = gadget_run({1}, 1000, 3);
    benchmark::DoNotOptimize(g.counts);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Gadget);

static void BM_PathwayAnalysis(benchmark::State& state) {
  for (auto _ : state) {
    const PathwayReport pw = pathway_analysis();
    benchmark::DoNotOptimize(pw.discrepancy[0].sign());
  }
}
BENCHMARK(BM_PathwayAnalysis);

BENCHMARK_MAIN();
