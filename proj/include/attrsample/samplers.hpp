#pragma once

#include <cstdint>

#include "attrsample/graph.hpp"

namespace attrsample {

inline constexpr double kDefaultTeleport = 0.15;

struct SamplerParams {
  SamplingMethod method = SamplingMethod::kNode;
  std::size_t k = 1;
  double teleport = kDefaultTeleport;
  std::uint64_t seed = 0;
};

/// K nodes uniformly without replacement; induced edges.
SampledGraph node_sample(const AttributedGraph& graph, std::size_t k, std::uint64_t seed);

/// Edges uniformly without replacement until their endpoints cover at least
/// K nodes. Only drawn edges are kept, so the result may hold K + 1 nodes.
/// Throws CoverageError if the edges run out first.
SampledGraph edge_sample(const AttributedGraph& graph, std::size_t k, std::uint64_t seed);

/// Random walk from a uniform start node. Each step teleports to a uniform
/// node with probability `teleport` (always, on a dead end), otherwise moves
/// to a uniform neighbor. Every visited node joins the sample. Throws
/// NonTerminationError after 10'000 * K steps.
SampledGraph random_walk_sample(const AttributedGraph& graph, std::size_t k, double teleport,
                                std::uint64_t seed);

/// Two-hop snowball from uniform unused start nodes, collected in BFS
/// discovery order and truncated at exactly K nodes.
SampledGraph snowball_sample(const AttributedGraph& graph, std::size_t k, std::uint64_t seed);

/// Dispatches on params.method.
SampledGraph sample(const AttributedGraph& graph, const SamplerParams& params);

}  // namespace attrsample
