#include "convograph/community.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "convograph/error.hpp"
#include "convograph/seeded.hpp"

namespace convograph {

Partition::Partition(std::vector<std::uint32_t> labels) : labels_(std::move(labels)) {
  std::vector<bool> seen;
  for (std::uint32_t l : labels_) {
    if (l >= seen.size()) seen.resize(l + 1, false);
    seen[l] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::validation, "partition labels must cover 0..k-1 without gaps");
  }
  community_count_ = seen.size();
}

Partition Partition::canonical(std::vector<std::uint32_t> labels) {
  std::vector<std::uint32_t> remap;
  std::uint32_t next = 0;
  for (auto& l : labels) {
    if (l >= remap.size()) remap.resize(l + 1, kNone);
    if (remap[l] == kNone) remap[l] = next++;
    l = remap[l];
  }
  return Partition(std::move(labels));
}

Partition Partition::singletons(std::size_t node_count) {
  std::vector<std::uint32_t> labels(node_count);
  std::iota(labels.begin(), labels.end(), 0u);
  return Partition(std::move(labels));
}

Partition Partition::single_community(std::size_t node_count) {
  return Partition(std::vector<std::uint32_t>(node_count, 0u));
}

double modularity(const Graph& g, const Partition& p) {
  if (p.size() != g.node_count()) {
    throw Error(ErrorKind::validation, "partition covers " + std::to_string(p.size()) +
                                           " nodes, graph has " +
                                           std::to_string(g.node_count()));
  }
  if (g.edge_count() == 0) {
    throw Error(ErrorKind::undefined_metric, "modularity needs at least one edge");
  }
  std::vector<std::uint64_t> internal(p.community_count(), 0);
  std::vector<std::uint64_t> degree_sum(p.community_count(), 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    degree_sum[p[u]] += g.degree(u);
    for (NodeId v : g.neighbors(u)) {
      if (u < v && p[u] == p[v]) ++internal[p[u]];
    }
  }
  const auto m = static_cast<double>(g.edge_count());
  double q = 0.0;
  for (std::size_t c = 0; c < p.community_count(); ++c) {
    const double share = static_cast<double>(degree_sum[c]) / (2.0 * m);
    q += static_cast<double>(internal[c]) / m - share * share;
  }
  return q;
}

namespace {

// Coarsened graph used between Louvain levels. Weights are integer edge
// multiplicities so gain comparisons stay exact.
struct WeightedGraph {
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> adj;  // no self entries
  std::vector<std::int64_t> self_loops;
  std::vector<std::int64_t> strength;  // sum of incident weights, self-loops twice

  std::size_t size() const { return adj.size(); }
};

WeightedGraph from_graph(const Graph& g) {
  WeightedGraph w;
  w.adj.resize(g.node_count());
  w.self_loops.assign(g.node_count(), 0);
  w.strength.assign(g.node_count(), 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) w.adj[u].emplace_back(v, 1);
    w.strength[u] = static_cast<std::int64_t>(g.degree(u));
  }
  return w;
}

// One level of local moving. Returns true when at least one node moved.
bool move_nodes(const WeightedGraph& g, std::int64_t two_m, std::vector<std::uint32_t>& comm,
                std::mt19937_64& rng) {
  const std::size_t n = g.size();
  comm.resize(n);
  std::iota(comm.begin(), comm.end(), 0u);
  std::vector<std::int64_t> total(g.strength);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  seeded_shuffle(std::span<std::uint32_t>(order), rng);

  std::vector<std::int64_t> link(n, -1);  // weight from the current node into each community
  std::vector<std::uint32_t> touched;
  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t old_comm = comm[i];
      const std::int64_t k_i = g.strength[i];

      touched.clear();
      link[old_comm] = 0;
      touched.push_back(old_comm);
      for (auto [j, w] : g.adj[i]) {
        const std::uint32_t c = comm[j];
        if (link[c] < 0) {
          link[c] = 0;
          touched.push_back(c);
        }
        link[c] += w;
      }
      std::sort(touched.begin(), touched.end());

      total[old_comm] -= k_i;
      // Gain of joining c, scaled by 2m^2: link_c * 2m - total_c * k_i.
      std::uint32_t best = old_comm;
      std::int64_t best_gain = link[old_comm] * two_m - total[old_comm] * k_i;
      for (std::uint32_t c : touched) {
        const std::int64_t gain = link[c] * two_m - total[c] * k_i;
        if (gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      total[best] += k_i;
      comm[i] = best;
      if (best != old_comm) moved = any_move = true;

      for (std::uint32_t c : touched) link[c] = -1;
    }
  }
  return any_move;
}

// Renumbers comm densely and returns the community-level graph.
WeightedGraph aggregate(const WeightedGraph& g, std::vector<std::uint32_t>& comm) {
  const Partition dense = Partition::canonical(comm);
  comm = dense.labels();
  const std::size_t k = dense.community_count();

  WeightedGraph out;
  out.adj.resize(k);
  out.self_loops.assign(k, 0);
  out.strength.assign(k, 0);
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> raw(k);
  for (std::uint32_t u = 0; u < g.size(); ++u) {
    const std::uint32_t cu = comm[u];
    out.self_loops[cu] += g.self_loops[u];
    out.strength[cu] += g.strength[u];
    for (auto [v, w] : g.adj[u]) {
      const std::uint32_t cv = comm[v];
      if (cu == cv) {
        if (u < v) out.self_loops[cu] += w;
      } else {
        raw[cu].emplace_back(cv, w);
      }
    }
  }
  for (std::uint32_t c = 0; c < k; ++c) {
    auto& r = raw[c];
    std::sort(r.begin(), r.end());
    for (auto [v, w] : r) {
      if (!out.adj[c].empty() && out.adj[c].back().first == v) {
        out.adj[c].back().second += w;
      } else {
        out.adj[c].emplace_back(v, w);
      }
    }
  }
  return out;
}

}  // namespace

Partition detect_communities(const Graph& g, std::uint64_t seed) {
  if (g.edge_count() == 0) {
    throw Error(ErrorKind::undefined_metric, "community detection needs at least one edge");
  }
  std::mt19937_64 rng(seed);
  const auto two_m = static_cast<std::int64_t>(2 * g.edge_count());

  WeightedGraph level = from_graph(g);
  std::vector<std::uint32_t> membership(g.node_count());
  std::iota(membership.begin(), membership.end(), 0u);

  std::vector<std::uint32_t> comm;
  while (move_nodes(level, two_m, comm, rng)) {
    level = aggregate(level, comm);
    for (auto& m : membership) m = comm[m];
  }
  return Partition::canonical(std::move(membership));
}

std::string to_text(const Graph& g, const Partition& p) {
  std::ostringstream out;
  for (NodeId u = 0; u < g.node_count(); ++u) out << g.handle(u) << '\t' << p[u] << '\n';
  return out.str();
}

}  // namespace convograph
