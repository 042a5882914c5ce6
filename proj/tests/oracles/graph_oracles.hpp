#pragma once

// Test-only reference implementations. Nothing here calls the BFS engine,
// the component labeler or the community-sum modularity it checks.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "convograph/graph.hpp"

namespace convograph::oracle {

using Edge = std::pair<NodeId, NodeId>;
inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

inline std::vector<std::vector<std::uint32_t>> floyd_warshall(std::size_t n,
                                                              const std::vector<Edge>& edges) {
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [a, b] : edges) {
    if (a == b) continue;
    d[a][b] = d[b][a] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] != kInf && d[k][j] != kInf && d[i][k] + d[k][j] < d[i][j])
          d[i][j] = d[i][k] + d[k][j];
  return d;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct PathOracle {
  std::uint32_t diameter = 0;     // max finite distance
  double apl = 0.0;               // mean finite distance over ordered pairs
  std::uint64_t connected_ordered = 0;
  std::size_t components = 0;
  double reachability = 0.0;      // connected unordered pairs / (N^2/2)
  std::vector<std::size_t> sizes;  // descending
};

inline PathOracle path_oracle(std::size_t n, const std::vector<Edge>& edges) {
  PathOracle o;
  const auto d = floyd_warshall(n, edges);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && d[i][j] != kInf) {
        sum += d[i][j];
        ++o.connected_ordered;
        o.diameter = std::max(o.diameter, d[i][j]);
      }
  if (o.connected_ordered > 0) o.apl = static_cast<double>(sum) / o.connected_ordered;

  UnionFind uf(n);
  for (auto [a, b] : edges) uf.unite(a, b);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++count[uf.find(i)];
  std::uint64_t pairs = 0;
  for (std::size_t c : count) {
    if (c == 0) continue;
    ++o.components;
    o.sizes.push_back(c);
    pairs += static_cast<std::uint64_t>(c) * (c - 1) / 2;
  }
  std::sort(o.sizes.begin(), o.sizes.end(), std::greater<>());
  if (n > 0) o.reachability = static_cast<double>(pairs) / (static_cast<double>(n) * n / 2.0);
  return o;
}

/// Q straight from (1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(s_i, s_j).
inline double direct_modularity(const Graph& g, const std::vector<std::uint32_t>& labels) {
  const std::size_t n = g.node_count();
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (labels[i] == labels[j]) {
        const double ki = static_cast<double>(g.degree(static_cast<NodeId>(i)));
        const double kj = static_cast<double>(g.degree(static_cast<NodeId>(j)));
        q += a[i][j] - ki * kj / two_m;
      }
  return q / two_m;
}

struct ExhaustiveBest {
  double q = -1.0;
  std::vector<std::uint32_t> labels;
};

/// Enumerates every set partition (restricted growth strings); n <= 10.
inline ExhaustiveBest exhaustive_modularity(const Graph& g) {
  const std::size_t n = g.node_count();
  ExhaustiveBest best;
  std::vector<std::uint32_t> rgs(n, 0), max_prefix(n, 0);
  while (true) {
    const double q = direct_modularity(g, rgs);
    if (q > best.q) {
      best.q = q;
      best.labels = rgs;
    }
    // Next restricted growth string.
    std::size_t i = n;
    while (i-- > 1) {
      if (rgs[i] <= max_prefix[i - 1]) break;
    }
    if (i == 0 || i >= n) break;
    ++rgs[i];
    max_prefix[i] = std::max(max_prefix[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      max_prefix[j] = max_prefix[j - 1];
    }
  }
  return best;
}

inline std::vector<Edge> random_edges(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return edges;
}

// Named fixtures.
inline std::vector<Edge> path_edges(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}
inline std::vector<Edge> clique_edges(std::size_t n, NodeId offset = 0) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(offset + i, offset + j);
  return e;
}
inline std::vector<Edge> star_edges(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return e;
}
inline std::vector<Edge> two_triangles() {
  auto e = clique_edges(3);
  auto f = clique_edges(3, 3);
  e.insert(e.end(), f.begin(), f.end());
  return e;
}
inline std::vector<Edge> petersen_edges() {
  std::vector<Edge> e;
  for (NodeId i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return e;
}
inline std::vector<Edge> barbell_edges() {
  auto e = clique_edges(4);
  auto f = clique_edges(4, 4);
  e.insert(e.end(), f.begin(), f.end());
  e.emplace_back(3, 4);
  return e;
}

}  // namespace convograph::oracle
