#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convograph/graph.hpp"

namespace convograph {

/// Community assignment: labels are dense, 0..community_count()-1.
class Partition {
 public:
  Partition() = default;

  /// Validates density of labels; throws Error{validation} on gaps.
  explicit Partition(std::vector<std::uint32_t> labels);

  /// Renumbers arbitrary labels by order of first appearance.
  static Partition canonical(std::vector<std::uint32_t> labels);
  static Partition singletons(std::size_t node_count);
  static Partition single_community(std::size_t node_count);

  const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }
  std::uint32_t operator[](std::size_t node) const { return labels_[node]; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t community_count() const noexcept { return community_count_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  std::vector<std::uint32_t> labels_;
  std::size_t community_count_ = 0;
};

/// Newman modularity, summed per community as L_c/m - (d_c/2m)^2.
/// Throws Error{undefined_metric} when the graph has no edges and
/// Error{validation} when the partition does not cover every node.
double modularity(const Graph& g, const Partition& p);

/// Louvain: local moving then aggregation until no move helps. Visit order
/// is a seeded shuffle; equal gains go to the lowest community id.
/// Throws Error{undefined_metric} when the graph has no edges.
Partition detect_communities(const Graph& g, std::uint64_t seed);

/// "handle\tcommunity_id" lines in node order.
std::string to_text(const Graph& g, const Partition& p);

}  // namespace convograph
