#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "convograph/ingest.hpp"

namespace convograph {

using NodeId = std::uint32_t;

/// Which interactions become edges. Self-loops are always dropped and
/// repeated interactions always collapse to one edge.
struct EdgePolicy {
  bool use_mentions = true;
  bool use_replies = true;

  /// Throws Error{validation} when both sources are disabled.
  void validate() const;
};

/// Undirected simple graph over user handles, immutable once built.
/// Node ids are dense and follow first-seen order of the handles.
class Graph {
 public:
  Graph() = default;

  /// Builds from explicit endpoints; self-loops and repeats are discarded.
  /// Every edge endpoint must be < handles.size().
  static Graph from_edges(std::vector<std::string> handles,
                          std::span<const std::pair<NodeId, NodeId>> edges);

  /// Convenience for fixtures: nodes named "0".."n-1".
  static Graph from_edges(std::size_t node_count,
                          std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const noexcept { return handles_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Sorted neighbor ids. Throws Error{bounds} for a bad id.
  std::span<const NodeId> neighbors(NodeId node) const;
  std::size_t degree(NodeId node) const { return neighbors(node).size(); }

  const std::string& handle(NodeId node) const;
  const std::vector<std::string>& handles() const noexcept { return handles_; }
  /// Throws Error{bounds} when the handle is not a node.
  NodeId id_of(std::string_view handle) const;
  bool contains(std::string_view handle) const;

  /// Each undirected edge once, as (lower id, higher id), ascending.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.handles_ == b.handles_ && a.adjacency_ == b.adjacency_;
  }

 private:
  void check(NodeId node) const;

  std::vector<std::string> handles_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Nodes are authors plus every handle the policy pulls in; an edge joins an
/// author to each handle they mention or reply to.
Graph build_graph(std::span<const InteractionRecord> records, const EdgePolicy& policy = {});

/// Free-function spelling of Graph::degree.
std::size_t degree(const Graph& g, NodeId node);

enum class EdgeListFormat { tsv, dot };

/// tsv: one "a\tb" line per edge with a < b, sorted. dot: an undirected
/// `graph` block with quoted handles.
std::string export_edgelist(const Graph& g, EdgeListFormat format);

}  // namespace convograph
