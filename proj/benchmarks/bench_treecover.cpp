#include <benchmark/benchmark.h>

#include "treecover/forest_cover.hpp"
#include "treecover/generators.hpp"
#include "treecover/oracle.hpp"

using namespace treecover;

namespace {

Instance triangulation(int n) {
  GenParams p;
  p.kind = InstanceKind::RandomTriangulation;
  p.n = n;
  p.wmax = 4.0;
  p.seed = 1;
  return generate(p);
}

void BM_Dijkstra(benchmark::State& state) {
  Instance in = triangulation(static_cast<int>(state.range(0)));
  int s = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dijkstra(in.graph, s).dist.data());
    s = (s + 1) % in.graph.n();
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dijkstra)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_PlanarCover(benchmark::State& state) {
  Instance in = triangulation(static_cast<int>(state.range(0)));
  double eps = 1.0 / static_cast<double>(state.range(1));
  double delta = 2 * diameter(in.graph, false);
  for (auto _ : state) {
    PlanarCover pc = build_planar_cover(in.graph, *in.embedding, eps, 0.125, delta);
    benchmark::DoNotOptimize(pc.cover.forests.size());
  }
}
BENCHMARK(BM_PlanarCover)->Args({400, 2})->Args({400, 4})->Args({2000, 2})->Args({2000, 4})->Unit(benchmark::kMillisecond);

void BM_OracleQuery(benchmark::State& state) {
  Instance in = triangulation(static_cast<int>(state.range(0)));
  double delta = 2 * diameter(in.graph, false);
  PlanarCover pc = build_planar_cover(in.graph, *in.embedding, 0.25, 0.125, delta);
  CoverOracle oracle(pc.cover, in.graph.n());
  int n = in.graph.n();
  int u = 0, v = n / 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.query(u, v).distance);
    u = (u + 7) % n;
    v = (v + 13) % n;
  }
  state.counters["trees"] = oracle.tree_count();
}
BENCHMARK(BM_OracleQuery)->Arg(400)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
