#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "attrsample/graph.hpp"

namespace attrsample {

/// Nodes ordered by descending degree centrality (rank 1 first). Node ids
/// live in the id space of the graph the ranking was computed for; for a
/// SampledGraph that is the parent graph.
struct RankedList {
  std::vector<NodeId> nodes;
  std::vector<double> centrality;
  std::uint64_t tie_seed = 0;

  std::size_t size() const { return nodes.size(); }
};

/// Sort by descending degree. Ties are broken by a per-node random priority
/// derived from (tie_seed, node id), so equal-degree nodes are ordered
/// uniformly at random and the same node keeps the same priority in every
/// ranking that shares the seed.
RankedList rank_by_centrality(const AttributedGraph& graph, std::uint64_t tie_seed);

/// Ranks a sample by its own degrees (denominator: sample size - 1) and
/// reports parent ids.
RankedList rank_by_centrality(const SampledGraph& sample, std::uint64_t tie_seed);

/// Share of minority nodes among the first min(k, size) ranks. `labels` is
/// indexed by the ranked node ids.
double top_k_minority_fraction(const RankedList& ranked, std::span<const Group> labels,
                               std::size_t k);

/// expected (original top-k) minus observed (sample top-k) minority share.
/// Positive values mean the minority is under-represented in the sample.
double top_k_bias(const RankedList& original, const RankedList& sampled,
                  std::span<const Group> labels, std::size_t k);

/// Per-node relevance: (N - rank + 1) / (N (N + 1) / 2). Nodes without a
/// rank in the source list hold NaN.
struct RelevanceTable {
  std::vector<double> by_node;

  double at(NodeId node) const;
};

/// Relevance of every node in `ranked`. `id_space` sizes the table; it
/// defaults to ranked.size() and must exceed every ranked id.
RelevanceTable relevance(const RankedList& ranked, std::size_t id_space = 0);

/// Cumulative relevance of `group` among the first min(k, size) ranks.
/// Throws InvariantError if a ranked node has no relevance entry.
double cgr(const RankedList& ranked, const RelevanceTable& rel, std::span<const Group> labels,
           Group group, std::size_t k);

inline constexpr double kNcgrEpsilon = 0.001;

/// Which relevance values the sample-side CGR sums.
enum class NcgrMode : std::uint8_t {
  /// The original network's relevance of each node in the sample's top k.
  kOriginalRelevance,
  /// Relevance recomputed from the sample's own ranking (N = sample size).
  kSampleRelevance,
};

/// ln((CGR(sample) + eps) / (CGR(original) + eps)) for the top k of each list.
double log_ncgr(const RankedList& sampled, const RelevanceTable& original_rel,
                const RankedList& original, std::span<const Group> labels, Group group,
                std::size_t k, double epsilon = kNcgrEpsilon,
                NcgrMode mode = NcgrMode::kOriginalRelevance);

/// One experiment cell's measurements for one (network, sample, k).
struct MetricRecord {
  SamplingMethod method = SamplingMethod::kNode;
  double h = 0.0;
  double f = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
  double sample_fraction = 1.0;
  std::size_t k = 1;
  std::uint64_t network_seed = 0;
  std::uint64_t sample_seed = 0;
  double bias_topk = 0.0;
  double log_ncgr_minority = 0.0;
  double log_ncgr_majority = 0.0;
  std::size_t actual_nodes = 0;
  /// True when k exceeded the sample size and was clamped.
  bool k_clamped = false;
  /// Minority shares behind bias_topk; not part of the records CSV.
  double expected_topk = 0.0;
  double observed_topk = 0.0;
};

/// Everything needed to score samples of one original network.
struct OriginalRanking {
  RankedList ranked;
  RelevanceTable relevance;
};

OriginalRanking rank_original(const AttributedGraph& graph, std::uint64_t tie_seed);

/// Fills the metric fields of `record` (k, bias, both log-nCGRs, shares,
/// actual_nodes, k_clamped) for one sample ranking.
void score_sample(const OriginalRanking& original, const RankedList& sampled,
                  std::span<const Group> labels, std::size_t k, NcgrMode mode,
                  MetricRecord& record);

}  // namespace attrsample
