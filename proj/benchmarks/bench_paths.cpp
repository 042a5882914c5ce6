#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "convograph/metrics.hpp"

using namespace convograph;

namespace {

// Random spanning tree plus extra chords: connected, roughly 1.5 edges per node.
Graph sparse_graph(std::size_t nodes, std::size_t edges) {
  std::mt19937_64 rng(nodes);
  std::set<std::pair<NodeId, NodeId>> seen;
  auto add = [&](NodeId a, NodeId b) {
    if (a != b) seen.insert({std::min(a, b), std::max(a, b)});
  };
  for (NodeId v = 1; v < nodes; ++v) add(v, static_cast<NodeId>(rng() % v));
  while (seen.size() < edges) add(static_cast<NodeId>(rng() % nodes), static_cast<NodeId>(rng() % nodes));
  std::vector<std::pair<NodeId, NodeId>> list(seen.begin(), seen.end());
  return Graph::from_edges(nodes, list);
}

void BM_SummarizePaths(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = sparse_graph(n, n + n / 2);
  PathOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(summarize_paths(g, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SummarizePaths)
    ->ArgsProduct({{1'000, 4'000, 10'000}, {1, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_SampledPaths(benchmark::State& state) {
  const Graph g = sparse_graph(50'000, 75'000);
  PathOptions opts;
  opts.exact_node_limit = 0;
  opts.sample_sources = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(summarize_paths(g, opts));
}
BENCHMARK(BM_SampledPaths)->Arg(256)->Arg(1'024)->Unit(benchmark::kMillisecond);

void BM_ComputeAll(benchmark::State& state) {
  const Graph g = sparse_graph(static_cast<std::size_t>(state.range(0)),
                               static_cast<std::size_t>(state.range(0)) * 3 / 2);
  for (auto _ : state) benchmark::DoNotOptimize(compute_all(g));
}
BENCHMARK(BM_ComputeAll)->Arg(5'000)->Unit(benchmark::kMillisecond);

}  // namespace
