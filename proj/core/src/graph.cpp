#include "convograph/graph.hpp"

#include <algorithm>
#include <sstream>

#include "convograph/error.hpp"

namespace convograph {

void EdgePolicy::validate() const {
  if (!use_mentions && !use_replies) {
    throw Error(ErrorKind::validation, "edge policy must enable mentions or replies");
  }
}

Graph Graph::from_edges(std::vector<std::string> handles,
                        std::span<const std::pair<NodeId, NodeId>> edges) {
  Graph g;
  g.handles_ = std::move(handles);
  g.index_.reserve(g.handles_.size());
  for (NodeId i = 0; i < g.handles_.size(); ++i) {
    if (!g.index_.emplace(g.handles_[i], i).second) {
      throw Error(ErrorKind::validation, "duplicate handle '" + g.handles_[i] + "'");
    }
  }
  g.adjacency_.resize(g.handles_.size());
  for (auto [a, b] : edges) {
    g.check(a);
    g.check(b);
    if (a == b) continue;
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }
  std::size_t degree_sum = 0;
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    adj.shrink_to_fit();
    degree_sum += adj.size();
  }
  g.edge_count_ = degree_sum / 2;
  return g;
}

Graph Graph::from_edges(std::size_t node_count,
                        std::span<const std::pair<NodeId, NodeId>> edges) {
  std::vector<std::string> handles;
  handles.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) handles.push_back(std::to_string(i));
  return from_edges(std::move(handles), edges);
}

void Graph::check(NodeId node) const {
  if (node >= handles_.size()) {
    throw Error(ErrorKind::bounds, "node id " + std::to_string(node) + " out of range (N=" +
                                       std::to_string(handles_.size()) + ")");
  }
}

std::span<const NodeId> Graph::neighbors(NodeId node) const {
  check(node);
  return adjacency_[node];
}

const std::string& Graph::handle(NodeId node) const {
  check(node);
  return handles_[node];
}

NodeId Graph::id_of(std::string_view handle) const {
  auto it = index_.find(std::string(handle));
  if (it == index_.end()) {
    throw Error(ErrorKind::bounds, "unknown handle '" + std::string(handle) + "'");
  }
  return it->second;
}

bool Graph::contains(std::string_view handle) const {
  return index_.contains(std::string(handle));
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph build_graph(std::span<const InteractionRecord> records, const EdgePolicy& policy) {
  policy.validate();
  std::vector<std::string> handles;
  std::unordered_map<std::string, NodeId> index;
  std::vector<std::pair<NodeId, NodeId>> edges;

  auto intern = [&](const std::string& handle) {
    auto [it, inserted] = index.emplace(handle, static_cast<NodeId>(handles.size()));
    if (inserted) handles.push_back(handle);
    return it->second;
  };

  for (const auto& rec : records) {
    const NodeId author = intern(rec.author);
    if (policy.use_replies && rec.reply_to) {
      edges.emplace_back(author, intern(*rec.reply_to));
    }
    if (policy.use_mentions) {
      for (const auto& mention : rec.mentions) edges.emplace_back(author, intern(mention));
    }
  }
  return Graph::from_edges(std::move(handles), edges);
}

std::size_t degree(const Graph& g, NodeId node) { return g.degree(node); }

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string export_edgelist(const Graph& g, EdgeListFormat format) {
  std::vector<std::pair<std::string_view, std::string_view>> named;
  named.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) {
    std::string_view a = g.handle(u), b = g.handle(v);
    if (b < a) std::swap(a, b);
    named.emplace_back(a, b);
  }
  std::sort(named.begin(), named.end());

  std::ostringstream out;
  if (format == EdgeListFormat::tsv) {
    for (auto [a, b] : named) out << a << '\t' << b << '\n';
    return out.str();
  }
  out << "graph conversation {\n";
  // Isolated users would otherwise vanish from the rendering.
  std::vector<std::string_view> isolated;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (g.degree(u) == 0) isolated.push_back(g.handle(u));
  }
  std::sort(isolated.begin(), isolated.end());
  for (auto h : isolated) out << "  " << dot_quote(std::string(h)) << ";\n";
  for (auto [a, b] : named) {
    out << "  " << dot_quote(std::string(a)) << " -- " << dot_quote(std::string(b)) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace convograph
