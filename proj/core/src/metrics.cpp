#include "convograph/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "convograph/error.hpp"
#include "convograph/number_format.hpp"
#include "convograph/seeded.hpp"

namespace convograph {
namespace {

void require_nodes(const Graph& g, std::size_t minimum, const char* metric) {
  if (g.node_count() < minimum) {
    throw Error(ErrorKind::undefined_metric,
                std::string(metric) + " needs at least " + std::to_string(minimum) +
                    " node(s), graph has " + std::to_string(g.node_count()));
  }
}

// BFS into caller-owned buffers so a sweep allocates once per worker.
void bfs(const Graph& g, NodeId source, std::vector<std::uint32_t>& dist,
         std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    const std::uint32_t next = dist[u] + 1;
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = next;
        queue.push_back(v);
      }
    }
  }
}

std::vector<NodeId> choose_sources(const Graph& g, const PathOptions& options, bool& sampled) {
  std::vector<NodeId> sources(g.node_count());
  std::iota(sources.begin(), sources.end(), NodeId{0});
  sampled = g.node_count() > options.exact_node_limit &&
            options.sample_sources < g.node_count();
  if (sampled) {
    std::mt19937_64 rng(options.seed);
    seeded_shuffle(std::span<NodeId>(sources), rng);
    sources.resize(options.sample_sources);
    std::sort(sources.begin(), sources.end());
  }
  return sources;
}

}  // namespace

double density(const Graph& g) {
  require_nodes(g, 2, "density");
  const auto n = static_cast<double>(g.node_count());
  return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

double average_degree(const Graph& g) {
  require_nodes(g, 1, "average degree");
  return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

std::vector<std::uint32_t> shortest_path_lengths(const Graph& g, NodeId source) {
  if (source >= g.node_count()) {
    throw Error(ErrorKind::bounds, "source node " + std::to_string(source) + " out of range");
  }
  std::vector<std::uint32_t> dist(g.node_count());
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  bfs(g, source, dist, queue);
  return dist;
}

PathSummary summarize_paths(const Graph& g, const PathOptions& options) {
  PathSummary summary;
  if (g.node_count() == 0) return summary;

  const std::vector<NodeId> sources = choose_sources(g, options, summary.sampled);
  summary.sources = sources.size();

  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(
                                                 1, sources.size() / 64)));

  std::vector<PathSummary> partial(workers);
  std::atomic<std::size_t> cursor{0};
  constexpr std::size_t kChunk = 32;

  auto work = [&](PathSummary& out) {
    std::vector<std::uint32_t> dist(g.node_count());
    std::vector<NodeId> queue;
    queue.reserve(g.node_count());
    while (true) {
      const std::size_t begin = cursor.fetch_add(kChunk, std::memory_order_relaxed);
      if (begin >= sources.size()) break;
      const std::size_t end = std::min(begin + kChunk, sources.size());
      for (std::size_t s = begin; s < end; ++s) {
        bfs(g, sources[s], dist, queue);
        // queue holds exactly the reached nodes; skip the source itself.
        for (std::size_t k = 1; k < queue.size(); ++k) {
          const std::uint32_t d = dist[queue[k]];
          out.distance_sum += d;
          out.max_distance = std::max(out.max_distance, d);
        }
        out.connected_ordered_pairs += queue.size() - 1;
      }
    }
  };

  if (workers == 1) {
    work(partial[0]);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, std::ref(partial[w]));
  }

  for (const auto& p : partial) {
    summary.distance_sum += p.distance_sum;
    summary.connected_ordered_pairs += p.connected_ordered_pairs;
    summary.max_distance = std::max(summary.max_distance, p.max_distance);
  }
  return summary;
}

std::uint32_t diameter(const Graph& g) {
  if (g.edge_count() == 0) {
    throw Error(ErrorKind::undefined_metric, "diameter needs at least one edge");
  }
  PathOptions exact;
  exact.exact_node_limit = g.node_count();
  return summarize_paths(g, exact).max_distance;
}

double average_path_length(const Graph& g) {
  PathOptions exact;
  exact.exact_node_limit = g.node_count();
  const PathSummary s = summarize_paths(g, exact);
  if (s.connected_ordered_pairs == 0) {
    throw Error(ErrorKind::undefined_metric, "average path length needs a connected pair");
  }
  return static_cast<double>(s.distance_sum) / static_cast<double>(s.connected_ordered_pairs);
}

Components connected_components(const Graph& g) {
  require_nodes(g, 1, "connected components");
  Components c;
  c.labels.assign(g.node_count(), kUnreachable);
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < g.node_count(); ++start) {
    if (c.labels[start] != kUnreachable) continue;
    const auto label = static_cast<std::uint32_t>(c.count++);
    std::size_t size = 0;
    c.labels[start] = label;
    stack.push_back(start);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId v : g.neighbors(u)) {
        if (c.labels[v] == kUnreachable) {
          c.labels[v] = label;
          stack.push_back(v);
        }
      }
    }
    c.sizes.push_back(size);
  }
  return c;
}

namespace {

double reachability_from_sizes(const std::vector<std::size_t>& sizes, std::size_t n) {
  std::uint64_t pairs = 0;
  for (std::size_t s : sizes) pairs += static_cast<std::uint64_t>(s) * (s - 1) / 2;
  const auto nn = static_cast<double>(n);
  return static_cast<double>(pairs) / (nn * nn / 2.0);
}

}  // namespace

double reachability(const Graph& g) {
  const Components c = connected_components(g);
  return reachability_from_sizes(c.sizes, g.node_count());
}

MetricsReport compute_all(const Graph& g, const Partition* partition,
                          const PathOptions& options) {
  MetricsReport r;
  r.size = g.node_count();
  r.edges = g.edge_count();
  if (r.size == 0) return r;

  r.avg_degree = average_degree(g);
  if (r.size >= 2) r.density = density(g);

  const Components c = connected_components(g);
  r.connected_components = c.count;
  r.per_component_sizes = c.sizes;
  std::sort(r.per_component_sizes.begin(), r.per_component_sizes.end(), std::greater<>());
  r.reachability = reachability_from_sizes(c.sizes, r.size);

  if (r.edges > 0) {
    const PathSummary paths = summarize_paths(g, options);
    r.paths_estimated = paths.sampled;
    r.diameter = paths.max_distance;
    if (paths.connected_ordered_pairs > 0) {
      r.avg_path_length = static_cast<double>(paths.distance_sum) /
                          static_cast<double>(paths.connected_ordered_pairs);
    }
    if (partition != nullptr) r.modularity = modularity(g, *partition);
  }
  return r;
}

namespace {

template <typename T>
std::string kv_value(const std::optional<T>& v) {
  if (!v) return "n/a";
  if constexpr (std::is_floating_point_v<T>) {
    return format_shortest(*v);
  } else {
    return std::to_string(*v);
  }
}

template <typename T>
nlohmann::json json_value(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> from_json_value(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

std::string to_key_value(const MetricsReport& r) {
  std::ostringstream out;
  out << "size\t" << r.size << '\n'
      << "edges\t" << r.edges << '\n'
      << "density\t" << kv_value(r.density) << '\n'
      << "modularity\t" << kv_value(r.modularity) << '\n'
      << "diameter\t" << kv_value(r.diameter) << '\n'
      << "avg_path_length\t" << kv_value(r.avg_path_length) << '\n'
      << "avg_degree\t" << kv_value(r.avg_degree) << '\n'
      << "reachability\t" << kv_value(r.reachability) << '\n'
      << "connected_components\t" << kv_value(r.connected_components) << '\n';
  return out.str();
}

std::string to_json(const MetricsReport& r) {
  nlohmann::ordered_json obj;
  obj["size"] = r.size;
  obj["edges"] = r.edges;
  obj["density"] = json_value(r.density);
  obj["modularity"] = json_value(r.modularity);
  obj["diameter"] = json_value(r.diameter);
  obj["avg_path_length"] = json_value(r.avg_path_length);
  obj["avg_degree"] = json_value(r.avg_degree);
  obj["reachability"] = json_value(r.reachability);
  obj["connected_components"] = json_value(r.connected_components);
  obj["per_component_sizes"] = r.per_component_sizes;
  obj["paths_estimated"] = r.paths_estimated;
  return obj.dump();
}

MetricsReport metrics_report_from_json(std::string_view text) {
  const auto obj = nlohmann::json::parse(text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    throw Error(ErrorKind::validation, "metrics report is not a JSON object");
  }
  try {
    MetricsReport r;
    r.size = obj.at("size").get<std::size_t>();
    r.edges = obj.at("edges").get<std::size_t>();
    r.density = from_json_value<double>(obj, "density");
    r.modularity = from_json_value<double>(obj, "modularity");
    r.diameter = from_json_value<std::uint32_t>(obj, "diameter");
    r.avg_path_length = from_json_value<double>(obj, "avg_path_length");
    r.avg_degree = from_json_value<double>(obj, "avg_degree");
    r.reachability = from_json_value<double>(obj, "reachability");
    r.connected_components = from_json_value<std::size_t>(obj, "connected_components");
    if (auto it = obj.find("per_component_sizes"); it != obj.end()) {
      r.per_component_sizes = it->get<std::vector<std::size_t>>();
    }
    if (auto it = obj.find("paths_estimated"); it != obj.end()) {
      r.paths_estimated = it->get<bool>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::validation, std::string("metrics report: ") + e.what());
  }
}

}  // namespace convograph
