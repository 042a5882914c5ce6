#include <gtest/gtest.h>

#include <random>

#include "convograph/error.hpp"
#include "convograph/graph.hpp"
#include "oracles/graph_oracles.hpp"

using namespace convograph;

namespace {

InteractionRecord rec(std::string author, std::vector<std::string> mentions,
                      std::optional<std::string> reply = std::nullopt) {
  InteractionRecord r;
  r.id = author;
  r.author = std::move(author);
  r.mentions = std::move(mentions);
  r.reply_to = std::move(reply);
  r.created_at = "2019-10-01";
  return r;
}

void expect_invariants(const Graph& g) {
  std::size_t degree_sum = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto adj = g.neighbors(u);
    degree_sum += adj.size();
    EXPECT_TRUE(std::is_sorted(adj.begin(), adj.end()));
    EXPECT_EQ(std::adjacent_find(adj.begin(), adj.end()), adj.end());
    for (NodeId v : adj) {
      EXPECT_NE(u, v);
      auto back = g.neighbors(v);
      EXPECT_TRUE(std::binary_search(back.begin(), back.end(), u));
    }
  }
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
}

}  // namespace

TEST(BuildGraph, OneRecordTwoMentions) {
  std::vector<InteractionRecord> records{rec("alice", {"bob", "carol"})};
  Graph g = build_graph(records);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(export_edgelist(g, EdgeListFormat::tsv), "alice\tbob\nalice\tcarol\n");
  expect_invariants(g);
}

TEST(BuildGraph, SelfMentionDropped) {
  std::vector<InteractionRecord> records{rec("alice", {"alice"})};
  Graph g = build_graph(records);
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(BuildGraph, UndirectedCollapse) {
  std::vector<InteractionRecord> records{rec("alice", {"bob"}), rec("bob", {"alice"})};
  Graph g = build_graph(records);
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(BuildGraph, EmptyRecordsGiveEmptyGraph) {
  Graph g = build_graph(std::span<const InteractionRecord>{});
  EXPECT_EQ(g.node_count(), 0u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(BuildGraph, PolicySelectsEdgeSources) {
  std::vector<InteractionRecord> records{rec("alice", {"bob"}, "carol")};
  EXPECT_EQ(build_graph(records, {true, true}).edge_count(), 2u);

  Graph mentions_only = build_graph(records, {true, false});
  EXPECT_EQ(mentions_only.edge_count(), 1u);
  EXPECT_FALSE(mentions_only.contains("carol"));

  Graph replies_only = build_graph(records, {false, true});
  EXPECT_EQ(replies_only.edge_count(), 1u);
  EXPECT_FALSE(replies_only.contains("bob"));

  EXPECT_THROW(build_graph(records, {false, false}), Error);
}

TEST(BuildGraph, FirstSeenIndexingIsStableAndDuplicationIdempotent) {
  std::mt19937_64 rng(3);
  std::vector<InteractionRecord> records;
  for (int i = 0; i < 400; ++i) {
    std::vector<std::string> mentions;
    for (int k = rng() % 4; k > 0; --k) mentions.push_back("u" + std::to_string(rng() % 60));
    std::optional<std::string> reply;
    if (rng() % 4 == 0) reply = "u" + std::to_string(rng() % 60);
    records.push_back(rec("u" + std::to_string(rng() % 60), mentions, reply));
  }
  const Graph g = build_graph(records);
  expect_invariants(g);
  EXPECT_EQ(build_graph(records), g);
  EXPECT_EQ(g.handle(0), records[0].author);

  auto doubled = records;
  doubled.insert(doubled.end(), records.begin(), records.end());
  EXPECT_EQ(build_graph(doubled), g);
}

TEST(Degree, Fixtures) {
  const auto k4 = oracle::clique_edges(4);
  Graph g = Graph::from_edges(4, k4);
  for (NodeId u = 0; u < 4; ++u) EXPECT_EQ(degree(g, u), 3u);

  const auto star = oracle::star_edges(4);
  Graph s = Graph::from_edges(6, star);
  EXPECT_EQ(degree(s, 0), 4u);
  EXPECT_EQ(degree(s, 1), 1u);
  EXPECT_EQ(degree(s, 5), 0u);  // isolated
}

TEST(Degree, OutOfRange) {
  Graph g = Graph::from_edges(2, std::vector<oracle::Edge>{{0, 1}});
  try {
    degree(g, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::bounds);
  }
}

TEST(ExportEdgelist, CanonicalOrdering) {
  Graph single = Graph::from_edges({"b", "a"}, std::vector<oracle::Edge>{{0, 1}});
  EXPECT_EQ(export_edgelist(single, EdgeListFormat::tsv), "a\tb\n");

  EXPECT_EQ(export_edgelist(Graph{}, EdgeListFormat::tsv), "");

  Graph tri = Graph::from_edges({"c", "a", "b"}, oracle::clique_edges(3));
  EXPECT_EQ(export_edgelist(tri, EdgeListFormat::tsv), "a\tb\na\tc\nb\tc\n");
}

TEST(ExportEdgelist, DotBlock) {
  Graph g = Graph::from_edges({"b", "a", "lonely \"q\""}, std::vector<oracle::Edge>{{0, 1}});
  EXPECT_EQ(export_edgelist(g, EdgeListFormat::dot),
            "graph conversation {\n"
            "  \"lonely \\\"q\\\"\";\n"
            "  \"a\" -- \"b\";\n"
            "}\n");
}
