#include <gtest/gtest.h>

#include <random>

#include "convograph/community.hpp"
#include "convograph/error.hpp"
#include "oracles/graph_oracles.hpp"

using namespace convograph;
using oracle::Edge;

namespace {

Graph make(std::size_t n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); }

}  // namespace

TEST(Partition, Validation) {
  EXPECT_THROW(Partition({0, 2}), Error);
  EXPECT_NO_THROW(Partition({1, 0, 1}));
  EXPECT_EQ(Partition::canonical({7, 3, 7, 9}).labels(), (std::vector<std::uint32_t>{0, 1, 0, 2}));
  EXPECT_EQ(Partition::singletons(3).community_count(), 3u);
  EXPECT_EQ(Partition::single_community(3).community_count(), 1u);
}

TEST(Modularity, Examples) {
  const Graph t = make(6, oracle::two_triangles());
  EXPECT_NEAR(modularity(t, Partition({0, 0, 0, 1, 1, 1})), 0.5, 1e-15);

  const Graph k4 = make(4, oracle::clique_edges(4));
  EXPECT_NEAR(modularity(k4, Partition::single_community(4)), 0.0, 1e-15);

  const Graph k2 = make(2, {{0, 1}});
  EXPECT_NEAR(modularity(k2, Partition::singletons(2)), -0.5, 1e-15);

  EXPECT_THROW(modularity(make(3, {}), Partition::singletons(3)), Error);
  EXPECT_THROW(modularity(t, Partition::singletons(5)), Error);
}

TEST(Modularity, ExhaustiveOptimaOfFixtures) {
  const auto tri = oracle::exhaustive_modularity(make(6, oracle::two_triangles()));
  EXPECT_NEAR(tri.q, 0.5, 1e-12);

  const auto k4 = oracle::exhaustive_modularity(make(4, oracle::clique_edges(4)));
  EXPECT_NEAR(k4.q, 0.0, 1e-12);

  const Graph barbell = make(8, oracle::barbell_edges());
  const auto bb = oracle::exhaustive_modularity(barbell);
  EXPECT_NEAR(modularity(barbell, Partition({0, 0, 0, 0, 1, 1, 1, 1})), bb.q, 1e-12);
}

TEST(Modularity, TwoRoutesAgree) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    const auto edges = oracle::random_edges(n, 0.3, rng);
    const Graph g = make(n, edges);
    if (g.edge_count() == 0) continue;
    std::vector<std::uint32_t> labels(n);
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % n);
    for (auto& l : labels) l = static_cast<std::uint32_t>(rng() % k);
    const auto p = Partition::canonical(labels);
    const double q = modularity(g, p);
    EXPECT_NEAR(q, oracle::direct_modularity(g, p.labels()), 1e-12);
    EXPECT_GE(q, -0.5 - 1e-12);
    EXPECT_LE(q, 1.0);
    EXPECT_NEAR(modularity(g, Partition::single_community(n)), 0.0, 1e-12);
  }
}

TEST(Modularity, RelabelingInvariant) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + rng() % 10;
    const Graph g = make(n, oracle::random_edges(n, 0.4, rng));
    if (g.edge_count() == 0) continue;
    std::vector<std::uint32_t> labels(n);
    for (auto& l : labels) l = static_cast<std::uint32_t>(rng() % 3);
    const auto p = Partition::canonical(labels);
    std::vector<std::uint32_t> names(p.community_count());
    std::iota(names.begin(), names.end(), 0);
    std::shuffle(names.begin(), names.end(), rng);
    std::vector<std::uint32_t> renamed(n);
    for (std::size_t i = 0; i < n; ++i) renamed[i] = names[p[i]];
    EXPECT_DOUBLE_EQ(modularity(g, p), modularity(g, Partition(renamed)));
  }
}

TEST(Louvain, Fixtures) {
  const Graph t = make(6, oracle::two_triangles());
  const auto pt = detect_communities(t, 0);
  EXPECT_EQ(pt.labels(), (std::vector<std::uint32_t>{0, 0, 0, 1, 1, 1}));
  EXPECT_NEAR(modularity(t, pt), 0.5, 1e-12);

  const Graph k4 = make(4, oracle::clique_edges(4));
  EXPECT_EQ(detect_communities(k4, 0).community_count(), 1u);

  const Graph barbell = make(8, oracle::barbell_edges());
  const auto pb = detect_communities(barbell, 0);
  EXPECT_EQ(pb.labels(), (std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1, 1, 1}));
}

TEST(Louvain, DeterministicPerSeedAndTotal) {
  std::mt19937_64 rng(5);
  const Graph g = make(80, oracle::random_edges(80, 0.05, rng));
  EXPECT_EQ(detect_communities(g, 17), detect_communities(g, 17));
  try {
    detect_communities(make(3, {}), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::undefined_metric);
  }
}

TEST(Louvain, AttainsExhaustiveOptimum) {
  std::mt19937_64 rng(20191101);
  int instances = 0;
  int exact = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const double p = 0.2 + 0.6 * static_cast<double>(rng() % 1000) / 1000.0;
    const Graph g = make(n, oracle::random_edges(n, p, rng));
    if (g.edge_count() == 0) continue;
    ++instances;
    const auto best = oracle::exhaustive_modularity(g);
    const double q = modularity(g, detect_communities(g, static_cast<std::uint64_t>(trial)));
    EXPECT_GE(q + 1e-12, modularity(g, Partition::singletons(n)));
    EXPECT_LE(q, best.q + 1e-12);
    if (q >= best.q - 1e-9) ++exact;
  }
  ASSERT_GT(instances, 100);
  EXPECT_GE(static_cast<double>(exact) / instances, 0.9) << exact << "/" << instances;
}

TEST(Partition, TextExport) {
  const Graph g = Graph::from_edges({"a", "b", "c"}, std::vector<Edge>{{0, 1}});
  EXPECT_EQ(to_text(g, Partition({0, 0, 1})), "a\t0\nb\t0\nc\t1\n");
}
