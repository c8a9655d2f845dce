#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace attrsample {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

enum class Group : std::uint8_t { kMajority = 0, kMinority = 1 };

std::string_view to_string(Group group);
Group other(Group group);

/// Undirected simple graph over dense ids 0..N-1 with one binary group label
/// per node. Adjacency is stored in CSR form with each neighbor list sorted
/// ascending. Immutable after construction.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  /// Builds a graph from an undirected edge list. Throws InputError on
  /// self-loops, duplicate edges (in either orientation), out-of-range ids or
  /// a label vector whose length differs from node_count.
  AttributedGraph(std::size_t node_count, std::span<const Edge> edges, std::vector<Group> labels);

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId node) const {
    return {neighbors_.data() + offsets_[node], neighbors_.data() + offsets_[node + 1]};
  }
  std::size_t degree(NodeId node) const { return offsets_[node + 1] - offsets_[node]; }
  bool has_edge(NodeId u, NodeId v) const;

  Group label(NodeId node) const { return labels_[node]; }
  std::span<const Group> labels() const { return labels_; }
  std::size_t group_size(Group group) const;

  /// Canonical edge list: (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  std::vector<Group> labels_;
};

enum class SamplingMethod : std::uint8_t { kNode, kEdge, kRandomWalk, kSnowball };

std::string_view to_string(SamplingMethod method);
/// Accepts "node", "edge", "rw"/"random_walk", "snowball".
SamplingMethod parse_sampling_method(std::string_view name);

struct SampleProvenance {
  SamplingMethod method = SamplingMethod::kNode;
  std::size_t requested = 0;
  std::size_t actual = 0;
  std::uint64_t seed = 0;
};

/// A node/edge subset of a parent graph. Node ids refer to the parent graph.
class SampledGraph {
 public:
  SampledGraph() = default;
  SampledGraph(std::vector<NodeId> parent_node_ids, std::vector<Edge> edges,
               std::vector<Group> labels, SampleProvenance provenance);

  /// Sorted ascending, unique.
  std::span<const NodeId> parent_node_ids() const { return parent_ids_; }
  /// Parent-id edges, (u, v) with u < v, sorted.
  std::span<const Edge> edges() const { return edges_; }
  /// Labels aligned with parent_node_ids().
  std::span<const Group> labels() const { return labels_; }
  const SampleProvenance& provenance() const { return provenance_; }
  std::size_t node_count() const { return parent_ids_.size(); }

  /// The sample as a standalone graph over local ids 0..K-1, where local id i
  /// corresponds to parent_node_ids()[i].
  AttributedGraph local_graph() const;

 private:
  std::vector<NodeId> parent_ids_;
  std::vector<Edge> edges_;
  std::vector<Group> labels_;
  SampleProvenance provenance_;
};

/// degree(i) / (N - 1). Throws InputError when N < 2.
std::vector<double> degree_centrality(const AttributedGraph& graph);

/// Subgraph on `nodes` containing every parent edge with both endpoints in
/// the set. Duplicate ids in `nodes` are collapsed.
SampledGraph induced_subgraph(const AttributedGraph& graph, std::span<const NodeId> nodes,
                              SampleProvenance provenance = {});

/// Subgraph on `nodes` that keeps exactly `edges`. Every edge must exist in
/// the parent and have both endpoints in `nodes`.
SampledGraph partial_subgraph(const AttributedGraph& graph, std::span<const NodeId> nodes,
                              std::span<const Edge> edges, SampleProvenance provenance = {});

/// Share of edges whose endpoints carry the same label. Throws InputError for
/// an edgeless graph.
double same_group_edge_fraction(const AttributedGraph& graph);

}  // namespace attrsample
