#include "attrsample/netgen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "attrsample/errors.hpp"
#include "attrsample/rng.hpp"

namespace attrsample {

namespace {

/// Fenwick tree over integer weights with prefix-sum search.
class WeightTree {
 public:
  explicit WeightTree(std::size_t size) : tree_(size + 1, 0) {}

  void add(std::size_t index, std::int64_t delta) {
    total_ += delta;
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  std::int64_t total() const { return total_; }

  /// Index whose cumulative range contains `target`, for 0 <= target < total().
  std::size_t find(std::int64_t target) const {
    std::size_t pos = 0;
    for (std::size_t step = std::bit_floor(tree_.size() - 1); step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    return pos;
  }

 private:
  std::vector<std::int64_t> tree_;
  std::int64_t total_ = 0;
};

std::vector<Group> shuffled_labels(std::size_t n, double f, Rng& rng) {
  const auto minority = static_cast<std::size_t>(std::llround(f * static_cast<double>(n)));
  std::vector<Group> labels(n, Group::kMajority);
  std::fill_n(labels.begin(), minority, Group::kMinority);
  rng.shuffle(std::span(labels));
  return labels;
}

}  // namespace

void validate(const GenParams& params) {
  if (!(params.homophily >= 0.0 && params.homophily <= 1.0)) {
    throw InputError("homophily must lie in [0, 1]");
  }
  if (!(params.minority_fraction > 0.0 && params.minority_fraction <= 0.5)) {
    throw InputError("minority fraction must lie in (0, 0.5]");
  }
  if (params.m < 1) throw InputError("m must be at least 1");
  if (params.n <= params.m) throw InputError("n must exceed m");
}

GeneratedNetwork generate_network(const GenParams& params) {
  validate(params);
  const std::size_t n = params.n;
  const std::size_t m = params.m;
  const double h = params.homophily;

  Rng rng(params.seed);
  const auto labels = shuffled_labels(n, params.minority_fraction, rng);

  // One tree per group; entry j holds degree(j) + 1 for arrived nodes.
  WeightTree trees[2] = {WeightTree(n), WeightTree(n)};
  std::vector<std::int64_t> degree(n, 0);
  auto tree_of = [&](Group g) -> WeightTree& { return trees[static_cast<int>(g)]; };

  for (std::size_t j = 0; j < m; ++j) tree_of(labels[j]).add(j, 1);

  GenDiagnostics diagnostics;
  std::vector<Edge> edges;
  edges.reserve((n - m) * m);
  std::vector<NodeId> picked;
  picked.reserve(m);
  std::vector<char> is_picked(n, 0);

  for (std::size_t i = m; i < n; ++i) {
    const Group own = labels[i];
    WeightTree& same = tree_of(own);
    WeightTree& cross = tree_of(other(own));
    picked.clear();

    for (std::size_t slot = 0; slot < m; ++slot) {
      const double same_mass = h * static_cast<double>(same.total());
      const double cross_mass = (1.0 - h) * static_cast<double>(cross.total());
      NodeId target;
      if (same_mass + cross_mass > 0.0) {
        const bool pick_same = rng.unit() * (same_mass + cross_mass) < same_mass;
        WeightTree& tree = pick_same ? same : cross;
        const auto r = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(tree.total())));
        target = static_cast<NodeId>(tree.find(r));
      } else if (params.zero_weight == ZeroWeightPolicy::kStop) {
        diagnostics.unfilled_slots += m - slot;
        break;
      } else {
        // Every remaining candidate is label-incompatible: pick uniformly
        // among existing, not yet picked nodes.
        const auto available = i - picked.size();
        auto rank = rng.below(available);
        target = 0;
        for (std::size_t j = 0; j < i; ++j) {
          if (is_picked[j]) continue;
          if (rank-- == 0) {
            target = static_cast<NodeId>(j);
            break;
          }
        }
        ++diagnostics.forced_edges;
      }
      // Remove the target from the pool until this arrival is done.
      tree_of(labels[target]).add(target, -(degree[target] + 1));
      is_picked[target] = 1;
      picked.push_back(target);
    }

    for (NodeId target : picked) {
      ++degree[target];
      is_picked[target] = 0;
      tree_of(labels[target]).add(target, degree[target] + 1);
      edges.emplace_back(target, static_cast<NodeId>(i));
    }
    degree[i] = static_cast<std::int64_t>(picked.size());
    same.add(i, degree[i] + 1);
  }

  return {AttributedGraph(n, edges, labels), diagnostics};
}

AttributedGraph generate(const GenParams& params) { return generate_network(params).graph; }

std::vector<CcdfPoint> group_ccdf(const AttributedGraph& graph, Group group) {
  std::vector<std::size_t> degrees;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    if (graph.label(i) == group) degrees.push_back(graph.degree(i));
  }
  if (degrees.empty()) {
    throw InputError("group " + std::string(to_string(group)) + " has no nodes");
  }
  std::sort(degrees.begin(), degrees.end());
  const double total = static_cast<double>(degrees.size());
  std::vector<CcdfPoint> out;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i == 0 || degrees[i] != degrees[i - 1]) {
      out.push_back({degrees[i], static_cast<double>(degrees.size() - i) / total});
    }
  }
  return out;
}

GroupDegreeDistribution group_degree_distribution(const AttributedGraph& graph) {
  return {group_ccdf(graph, Group::kMinority), group_ccdf(graph, Group::kMajority)};
}

namespace {

/// Value of a step CCDF at degree d: share with degree >= d.
double ccdf_at(const std::vector<CcdfPoint>& ccdf, std::size_t d) {
  auto it = std::lower_bound(ccdf.begin(), ccdf.end(), d,
                             [](const CcdfPoint& p, std::size_t value) { return p.degree < value; });
  return it == ccdf.end() ? 0.0 : it->fraction;
}

}  // namespace

double ccdf_max_gap(const std::vector<CcdfPoint>& a, const std::vector<CcdfPoint>& b) {
  double gap = 0.0;
  for (const auto& p : a) gap = std::max(gap, std::abs(p.fraction - ccdf_at(b, p.degree)));
  for (const auto& p : b) gap = std::max(gap, std::abs(p.fraction - ccdf_at(a, p.degree)));
  return gap;
}

}  // namespace attrsample
