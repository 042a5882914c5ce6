#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "convograph/community.hpp"

using namespace convograph;

namespace {

// Planted partition: dense blocks of 50 nodes with sparse links between them.
Graph planted_graph(std::size_t nodes) {
  std::mt19937_64 rng(7);
  std::set<std::pair<NodeId, NodeId>> seen;
  constexpr std::size_t kBlock = 50;
  for (std::size_t i = 0; i < nodes * 4; ++i) {
    const auto a = static_cast<NodeId>(rng() % nodes);
    NodeId b = 0;
    if (rng() % 10 < 9) {
      b = static_cast<NodeId>((a / kBlock) * kBlock + rng() % kBlock);
      if (b >= nodes) continue;
    } else {
      b = static_cast<NodeId>(rng() % nodes);
    }
    if (a != b) seen.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<std::pair<NodeId, NodeId>> list(seen.begin(), seen.end());
  return Graph::from_edges(nodes, list);
}

void BM_DetectCommunities(benchmark::State& state) {
  const Graph g = planted_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(detect_communities(g, 42));
  state.counters["Q"] = modularity(g, detect_communities(g, 42));
}
BENCHMARK(BM_DetectCommunities)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_Modularity(benchmark::State& state) {
  const Graph g = planted_graph(10'000);
  const Partition p = detect_communities(g, 42);
  for (auto _ : state) benchmark::DoNotOptimize(modularity(g, p));
}
BENCHMARK(BM_Modularity)->Unit(benchmark::kMicrosecond);

}  // namespace
