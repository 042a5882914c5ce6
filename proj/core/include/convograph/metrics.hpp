#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convograph/community.hpp"
#include "convograph/graph.hpp"

namespace convograph {

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// 2L / (N(N-1)). Throws Error{undefined_metric} for N < 2.
double density(const Graph& g);

/// 2L / N. Throws Error{undefined_metric} for N = 0.
double average_degree(const Graph& g);

/// BFS hop counts from source; kUnreachable for other components.
std::vector<std::uint32_t> shortest_path_lengths(const Graph& g, NodeId source);

/// Largest finite distance. Throws Error{undefined_metric} when L = 0.
std::uint32_t diameter(const Graph& g);

/// Mean finite distance over ordered pairs i != j that are connected.
/// Throws Error{undefined_metric} when no pair is connected.
double average_path_length(const Graph& g);

struct Components {
  std::size_t count = 0;
  /// Component id per node; the component holding the lowest node id gets
  /// the lowest label.
  std::vector<std::uint32_t> labels;
  /// Size per component id.
  std::vector<std::size_t> sizes;
};

/// Throws Error{undefined_metric} for N = 0.
Components connected_components(const Graph& g);

/// Connected unordered pairs divided by N^2/2. A connected graph scores
/// (N-1)/N. Throws Error{undefined_metric} for N = 0.
double reachability(const Graph& g);

struct PathOptions {
  /// Graphs with more nodes than this use sampled BFS sources.
  std::size_t exact_node_limit = 50'000;
  std::size_t sample_sources = 1'024;
  std::uint64_t seed = 0;
  /// 0 = std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Aggregate of a BFS sweep. Exact unless `sampled` is set.
struct PathSummary {
  std::uint32_t max_distance = 0;
  std::uint64_t distance_sum = 0;
  std::uint64_t connected_ordered_pairs = 0;
  std::size_t sources = 0;
  bool sampled = false;
};

PathSummary summarize_paths(const Graph& g, const PathOptions& options = {});

struct MetricsReport {
  std::size_t size = 0;
  std::size_t edges = 0;
  std::optional<double> density;
  std::optional<double> modularity;
  std::optional<std::uint32_t> diameter;
  std::optional<double> avg_path_length;
  std::optional<double> avg_degree;
  std::optional<double> reachability;
  std::optional<std::size_t> connected_components;
  /// Largest component first.
  std::vector<std::size_t> per_component_sizes;
  /// Diameter and average path length come from sampled sources.
  bool paths_estimated = false;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Every property at once; anything undefined on g stays std::nullopt.
/// Modularity is filled only when a partition is given and L >= 1.
MetricsReport compute_all(const Graph& g, const Partition* partition = nullptr,
                          const PathOptions& options = {});

/// "key<TAB>value" lines, "n/a" for undefined values.
std::string to_key_value(const MetricsReport& report);
std::string to_json(const MetricsReport& report);
MetricsReport metrics_report_from_json(std::string_view text);

}  // namespace convograph
