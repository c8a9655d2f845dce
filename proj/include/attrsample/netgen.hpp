#pragma once

#include <cstdint>
#include <vector>

#include "attrsample/graph.hpp"

namespace attrsample {

/// What an arriving node does when every remaining candidate has zero
/// attachment weight. This only happens at h = 0 or h = 1, when the
/// compatible group has fewer than m existing members.
enum class ZeroWeightPolicy : std::uint8_t {
  /// Stop linking; the node keeps the targets it already has.
  kStop,
  /// Link to a uniformly chosen incompatible node and count it as forced.
  kForce,
};

struct GenParams {
  std::size_t n = 10'000;
  std::size_t m = 10;
  double minority_fraction = 0.2;
  double homophily = 0.5;
  std::uint64_t seed = 0;
  ZeroWeightPolicy zero_weight = ZeroWeightPolicy::kStop;
};

/// Throws InputError unless h in [0,1], 0 < f <= 0.5, m >= 1 and n > m.
void validate(const GenParams& params);

struct GenDiagnostics {
  /// Links that went to an incompatible node under ZeroWeightPolicy::kForce.
  std::size_t forced_edges = 0;
  /// Link slots left empty under ZeroWeightPolicy::kStop.
  std::size_t unfilled_slots = 0;
};

struct GeneratedNetwork {
  AttributedGraph graph;
  GenDiagnostics diagnostics;
};

/// Preferential attachment with homophily. Node i (arriving after m isolated
/// seed nodes) links to m distinct existing nodes; target j is drawn with
/// probability proportional to w(i, j) * (degree(j) + 1), where w = h for
/// equal labels and 1 - h otherwise. Labels come from a seeded shuffle of
/// exactly round(f * n) minority tags.
GeneratedNetwork generate_network(const GenParams& params);

/// Convenience wrapper returning only the graph.
AttributedGraph generate(const GenParams& params);

/// One step of an empirical complementary CDF: share of the group's nodes
/// whose degree is >= `degree`.
struct CcdfPoint {
  std::size_t degree;
  double fraction;
};

/// CCDF over the distinct degree values present in `group`. Throws
/// InputError if the group is empty.
std::vector<CcdfPoint> group_ccdf(const AttributedGraph& graph, Group group);

struct GroupDegreeDistribution {
  std::vector<CcdfPoint> minority;
  std::vector<CcdfPoint> majority;
};

/// Both group CCDFs. Throws InputError if either group is empty.
GroupDegreeDistribution group_degree_distribution(const AttributedGraph& graph);

/// Largest pointwise gap between two step CCDFs (a two-sample KS distance).
double ccdf_max_gap(const std::vector<CcdfPoint>& a, const std::vector<CcdfPoint>& b);

}  // namespace attrsample
