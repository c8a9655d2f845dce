#include "attrsample/graph.hpp"

#include <algorithm>
#include <string>

#include "attrsample/errors.hpp"

namespace attrsample {

std::string_view to_string(Group group) {
  return group == Group::kMinority ? "minority" : "majority";
}

Group other(Group group) {
  return group == Group::kMinority ? Group::kMajority : Group::kMinority;
}

AttributedGraph::AttributedGraph(std::size_t node_count, std::span<const Edge> edges,
                                 std::vector<Group> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() != node_count) {
    throw InputError("label count " + std::to_string(labels_.size()) +
                     " does not match node count " + std::to_string(node_count));
  }
  std::vector<std::size_t> degree(node_count, 0);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") references a node outside 0.." + std::to_string(node_count));
    }
    if (u == v) throw InputError("self-loop on node " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }
  offsets_.assign(node_count + 1, 0);
  for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  neighbors_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    neighbors_[cursor[u]++] = v;
    neighbors_[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw InputError("duplicate edge (" + std::to_string(i) + ", " + std::to_string(*dup) + ")");
    }
  }
}

bool AttributedGraph::has_edge(NodeId u, NodeId v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::size_t AttributedGraph::group_size(Group group) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), group));
}

std::vector<Edge> AttributedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::string_view to_string(SamplingMethod method) {
  switch (method) {
    case SamplingMethod::kNode:
      return "node";
    case SamplingMethod::kEdge:
      return "edge";
    case SamplingMethod::kRandomWalk:
      return "rw";
    case SamplingMethod::kSnowball:
      return "snowball";
  }
  return "unknown";
}

SamplingMethod parse_sampling_method(std::string_view name) {
  if (name == "node") return SamplingMethod::kNode;
  if (name == "edge") return SamplingMethod::kEdge;
  if (name == "rw" || name == "random_walk") return SamplingMethod::kRandomWalk;
  if (name == "snowball") return SamplingMethod::kSnowball;
  throw InputError("unknown sampling method '" + std::string(name) + "'");
}

SampledGraph::SampledGraph(std::vector<NodeId> parent_node_ids, std::vector<Edge> edges,
                           std::vector<Group> labels, SampleProvenance provenance)
    : parent_ids_(std::move(parent_node_ids)),
      edges_(std::move(edges)),
      labels_(std::move(labels)),
      provenance_(provenance) {
  if (labels_.size() != parent_ids_.size()) {
    throw InvariantError("sampled graph labels misaligned with node ids");
  }
  provenance_.actual = parent_ids_.size();
}

AttributedGraph SampledGraph::local_graph() const {
  std::vector<Edge> local;
  local.reserve(edges_.size());
  auto local_id = [this](NodeId parent) {
    auto it = std::lower_bound(parent_ids_.begin(), parent_ids_.end(), parent);
    return static_cast<NodeId>(it - parent_ids_.begin());
  };
  for (const auto& [u, v] : edges_) local.emplace_back(local_id(u), local_id(v));
  return AttributedGraph(parent_ids_.size(), local, labels_);
}

std::vector<double> degree_centrality(const AttributedGraph& graph) {
  const std::size_t n = graph.node_count();
  if (n < 2) throw InputError("degree centrality needs at least 2 nodes");
  std::vector<double> out(n);
  const double denom = static_cast<double>(n - 1);
  for (NodeId i = 0; i < n; ++i) out[i] = static_cast<double>(graph.degree(i)) / denom;
  return out;
}

namespace {

std::vector<NodeId> normalized_node_set(const AttributedGraph& graph,
                                        std::span<const NodeId> nodes) {
  std::vector<NodeId> ids(nodes.begin(), nodes.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (!ids.empty() && ids.back() >= graph.node_count()) {
    throw InputError("node id " + std::to_string(ids.back()) + " is not in the graph");
  }
  return ids;
}

std::vector<Group> labels_of(const AttributedGraph& graph, std::span<const NodeId> ids) {
  std::vector<Group> labels;
  labels.reserve(ids.size());
  for (NodeId id : ids) labels.push_back(graph.label(id));
  return labels;
}

}  // namespace

SampledGraph induced_subgraph(const AttributedGraph& graph, std::span<const NodeId> nodes,
                              SampleProvenance provenance) {
  auto ids = normalized_node_set(graph, nodes);
  std::vector<char> member(graph.node_count(), 0);
  for (NodeId id : ids) member[id] = 1;
  std::vector<Edge> edges;
  for (NodeId u : ids) {
    for (NodeId v : graph.neighbors(u)) {
      if (u < v && member[v]) edges.emplace_back(u, v);
    }
  }
  if (provenance.requested == 0) provenance.requested = ids.size();
  auto labels = labels_of(graph, ids);
  return SampledGraph(std::move(ids), std::move(edges), std::move(labels), provenance);
}

SampledGraph partial_subgraph(const AttributedGraph& graph, std::span<const NodeId> nodes,
                              std::span<const Edge> edges, SampleProvenance provenance) {
  auto ids = normalized_node_set(graph, nodes);
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (!std::binary_search(ids.begin(), ids.end(), u) ||
        !std::binary_search(ids.begin(), ids.end(), v)) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has an endpoint outside the sampled node set");
    }
    if (v >= graph.node_count() || !graph.has_edge(u, v)) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") is not in the parent graph");
    }
    kept.emplace_back(u, v);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (provenance.requested == 0) provenance.requested = ids.size();
  auto labels = labels_of(graph, ids);
  return SampledGraph(std::move(ids), std::move(kept), std::move(labels), provenance);
}

double same_group_edge_fraction(const AttributedGraph& graph) {
  if (graph.edge_count() == 0) {
    throw InputError("same-group edge fraction is undefined for an edgeless graph");
  }
  std::size_t same = 0;
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    for (NodeId v : graph.neighbors(u)) {
      if (u < v && graph.label(u) == graph.label(v)) ++same;
    }
  }
  return static_cast<double>(same) / static_cast<double>(graph.edge_count());
}

}  // namespace attrsample
