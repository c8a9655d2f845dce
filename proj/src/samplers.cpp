#include "attrsample/samplers.hpp"

#include <string>
#include <unordered_map>

#include "attrsample/errors.hpp"
#include "attrsample/rng.hpp"

namespace attrsample {

namespace {

void check_k(const AttributedGraph& graph, std::size_t k) {
  if (k < 1) throw InfeasibleError("sample size K must be at least 1");
  if (k > graph.node_count()) {
    throw InfeasibleError("sample size K=" + std::to_string(k) + " exceeds N=" +
                          std::to_string(graph.node_count()));
  }
}

/// Lazy Fisher-Yates over 0..size-1: draws without replacement in O(draws)
/// memory.
class LazyPermutation {
 public:
  explicit LazyPermutation(std::size_t size) : size_(size) {}

  bool exhausted() const { return drawn_ == size_; }

  std::size_t next(Rng& rng) {
    const std::size_t j = drawn_ + static_cast<std::size_t>(rng.below(size_ - drawn_));
    const std::size_t picked = at(j);
    swapped_[j] = at(drawn_);
    ++drawn_;
    return picked;
  }

 private:
  std::size_t at(std::size_t i) const {
    auto it = swapped_.find(i);
    return it == swapped_.end() ? i : it->second;
  }

  std::size_t size_;
  std::size_t drawn_ = 0;
  std::unordered_map<std::size_t, std::size_t> swapped_;
};

}  // namespace

SampledGraph node_sample(const AttributedGraph& graph, std::size_t k, std::uint64_t seed) {
  check_k(graph, k);
  Rng rng(seed);
  LazyPermutation perm(graph.node_count());
  std::vector<NodeId> nodes;
  nodes.reserve(k);
  while (nodes.size() < k) nodes.push_back(static_cast<NodeId>(perm.next(rng)));
  return induced_subgraph(graph, nodes, {SamplingMethod::kNode, k, k, seed});
}

SampledGraph edge_sample(const AttributedGraph& graph, std::size_t k, std::uint64_t seed) {
  check_k(graph, k);
  if (graph.edge_count() == 0) throw CoverageError(k, 0);
  const auto all_edges = graph.edges();
  Rng rng(seed);
  LazyPermutation perm(all_edges.size());
  std::vector<char> member(graph.node_count(), 0);
  std::vector<NodeId> nodes;
  std::vector<Edge> kept;
  while (nodes.size() < k) {
    if (perm.exhausted()) throw CoverageError(k, nodes.size());
    const Edge& e = all_edges[perm.next(rng)];
    kept.push_back(e);
    for (NodeId v : {e.first, e.second}) {
      if (!member[v]) {
        member[v] = 1;
        nodes.push_back(v);
      }
    }
  }
  return partial_subgraph(graph, nodes, kept, {SamplingMethod::kEdge, k, nodes.size(), seed});
}

SampledGraph random_walk_sample(const AttributedGraph& graph, std::size_t k, double teleport,
                                std::uint64_t seed) {
  check_k(graph, k);
  if (!(teleport >= 0.0 && teleport < 1.0)) throw InputError("teleport must lie in [0, 1)");
  Rng rng(seed);
  const std::size_t n = graph.node_count();
  std::vector<char> member(n, 0);
  std::vector<NodeId> nodes;
  nodes.reserve(k);
  auto visit = [&](NodeId v) {
    if (!member[v]) {
      member[v] = 1;
      nodes.push_back(v);
    }
  };

  auto current = static_cast<NodeId>(rng.below(n));
  visit(current);
  const std::size_t step_cap = 10'000 * k;
  for (std::size_t step = 0; nodes.size() < k; ++step) {
    if (step >= step_cap) {
      throw NonTerminationError("random walk collected " + std::to_string(nodes.size()) + " of " +
                                std::to_string(k) + " nodes within " + std::to_string(step_cap) +
                                " steps");
    }
    const auto adj = graph.neighbors(current);
    // The coin is flipped on every step so the stream does not depend on
    // whether the walker sits on a dead end.
    const bool jump = rng.bernoulli(teleport) || adj.empty();
    if (jump) {
      current = static_cast<NodeId>(rng.below(n));
    } else {
      current = adj[rng.below(adj.size())];
    }
    visit(current);
  }
  return induced_subgraph(graph, nodes, {SamplingMethod::kRandomWalk, k, k, seed});
}

SampledGraph snowball_sample(const AttributedGraph& graph, std::size_t k, std::uint64_t seed) {
  check_k(graph, k);
  Rng rng(seed);
  std::vector<char> member(graph.node_count(), 0);
  std::vector<NodeId> nodes;
  nodes.reserve(k);
  auto add = [&](NodeId v) {
    if (!member[v] && nodes.size() < k) {
      member[v] = 1;
      nodes.push_back(v);
    }
  };

  LazyPermutation starts(graph.node_count());
  while (nodes.size() < k) {
    // Skipping already-sampled ids keeps the start uniform over unused nodes.
    NodeId start;
    do {
      start = static_cast<NodeId>(starts.next(rng));
    } while (member[start]);
    add(start);
    const auto first_hop = graph.neighbors(start);
    for (NodeId v : first_hop) add(v);
    for (NodeId v : first_hop) {
      if (nodes.size() >= k) break;
      for (NodeId w : graph.neighbors(v)) add(w);
    }
  }
  return induced_subgraph(graph, nodes, {SamplingMethod::kSnowball, k, k, seed});
}

SampledGraph sample(const AttributedGraph& graph, const SamplerParams& params) {
  switch (params.method) {
    case SamplingMethod::kNode:
      return node_sample(graph, params.k, params.seed);
    case SamplingMethod::kEdge:
      return edge_sample(graph, params.k, params.seed);
    case SamplingMethod::kRandomWalk:
      return random_walk_sample(graph, params.k, params.teleport, params.seed);
    case SamplingMethod::kSnowball:
      return snowball_sample(graph, params.k, params.seed);
  }
  throw InvariantError("unhandled sampling method");
}

}  // namespace attrsample
