#include "attrsample/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "attrsample/errors.hpp"
#include "attrsample/rng.hpp"

namespace attrsample {

namespace {

RankedList rank_nodes(const AttributedGraph& graph, std::span<const NodeId> ids,
                      std::uint64_t tie_seed) {
  const std::size_t n = graph.node_count();
  struct Key {
    std::size_t degree;
    std::uint64_t priority;
    NodeId local;
  };
  std::vector<Key> keys(n);
  for (NodeId i = 0; i < n; ++i) keys[i] = {graph.degree(i), hash_combine(tie_seed, ids[i]), i};
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.local < b.local;
  });
  RankedList out;
  out.tie_seed = tie_seed;
  out.nodes.reserve(n);
  out.centrality.reserve(n);
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (const Key& key : keys) {
    out.nodes.push_back(ids[key.local]);
    out.centrality.push_back(static_cast<double>(key.degree) / denom);
  }
  return out;
}

std::size_t clamp_k(std::size_t k, std::size_t size) {
  if (k < 1) throw InputError("k must be at least 1");
  if (size == 0) throw InputError("ranked list is empty");
  return std::min(k, size);
}

}  // namespace

RankedList rank_by_centrality(const AttributedGraph& graph, std::uint64_t tie_seed) {
  std::vector<NodeId> ids(graph.node_count());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  return rank_nodes(graph, ids, tie_seed);
}

RankedList rank_by_centrality(const SampledGraph& sample, std::uint64_t tie_seed) {
  return rank_nodes(sample.local_graph(), sample.parent_node_ids(), tie_seed);
}

double top_k_minority_fraction(const RankedList& ranked, std::span<const Group> labels,
                               std::size_t k) {
  const std::size_t top = clamp_k(k, ranked.size());
  std::size_t minority = 0;
  for (std::size_t r = 0; r < top; ++r) {
    if (labels[ranked.nodes[r]] == Group::kMinority) ++minority;
  }
  return static_cast<double>(minority) / static_cast<double>(top);
}

double top_k_bias(const RankedList& original, const RankedList& sampled,
                  std::span<const Group> labels, std::size_t k) {
  return top_k_minority_fraction(original, labels, k) -
         top_k_minority_fraction(sampled, labels, k);
}

double RelevanceTable::at(NodeId node) const {
  if (node >= by_node.size() || std::isnan(by_node[node])) {
    throw InvariantError("node " + std::to_string(node) + " has no relevance entry");
  }
  return by_node[node];
}

RelevanceTable relevance(const RankedList& ranked, std::size_t id_space) {
  const std::size_t n = ranked.size();
  if (n == 0) throw InputError("cannot compute relevance of an empty ranking");
  if (id_space == 0) id_space = n;
  RelevanceTable table{std::vector<double>(id_space, std::numeric_limits<double>::quiet_NaN())};
  const double rank_sum = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
  for (std::size_t r = 0; r < n; ++r) {
    const NodeId node = ranked.nodes[r];
    if (node >= id_space) throw InputError("ranked node id outside the relevance id space");
    // rank = r + 1, inverse rank = n - rank + 1
    table.by_node[node] = static_cast<double>(n - r) / rank_sum;
  }
  return table;
}

double cgr(const RankedList& ranked, const RelevanceTable& rel, std::span<const Group> labels,
           Group group, std::size_t k) {
  const std::size_t top = clamp_k(k, ranked.size());
  double sum = 0.0;
  for (std::size_t r = 0; r < top; ++r) {
    const NodeId node = ranked.nodes[r];
    const double value = rel.at(node);
    if (labels[node] == group) sum += value;
  }
  return sum;
}

double log_ncgr(const RankedList& sampled, const RelevanceTable& original_rel,
                const RankedList& original, std::span<const Group> labels, Group group,
                std::size_t k, double epsilon, NcgrMode mode) {
  const double original_cgr = cgr(original, original_rel, labels, group, k);
  double sample_cgr;
  if (mode == NcgrMode::kOriginalRelevance) {
    sample_cgr = cgr(sampled, original_rel, labels, group, k);
  } else {
    const auto own = relevance(sampled, original_rel.by_node.size());
    sample_cgr = cgr(sampled, own, labels, group, k);
  }
  return std::log((sample_cgr + epsilon) / (original_cgr + epsilon));
}

OriginalRanking rank_original(const AttributedGraph& graph, std::uint64_t tie_seed) {
  OriginalRanking out;
  out.ranked = rank_by_centrality(graph, tie_seed);
  out.relevance = relevance(out.ranked, graph.node_count());
  return out;
}

void score_sample(const OriginalRanking& original, const RankedList& sampled,
                  std::span<const Group> labels, std::size_t k, NcgrMode mode,
                  MetricRecord& record) {
  record.k = k;
  record.actual_nodes = sampled.size();
  record.k_clamped = k > sampled.size();
  record.expected_topk = top_k_minority_fraction(original.ranked, labels, k);
  record.observed_topk = top_k_minority_fraction(sampled, labels, k);
  record.bias_topk = record.expected_topk - record.observed_topk;
  record.log_ncgr_minority = log_ncgr(sampled, original.relevance, original.ranked, labels,
                                      Group::kMinority, k, kNcgrEpsilon, mode);
  record.log_ncgr_majority = log_ncgr(sampled, original.relevance, original.ranked, labels,
                                      Group::kMajority, k, kNcgrEpsilon, mode);
}

}  // namespace attrsample
