#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "attrsample/graph.hpp"
#include "attrsample/rng.hpp"

namespace testing {

using attrsample::AttributedGraph;
using attrsample::Edge;
using attrsample::Group;
using attrsample::NodeId;

inline constexpr Group kMin = Group::kMinority;
inline constexpr Group kMaj = Group::kMajority;

inline AttributedGraph triangle(std::vector<Group> labels = {kMaj, kMaj, kMaj}) {
  const std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 2}};
  return AttributedGraph(3, edges, std::move(labels));
}

// Center 0, leaves 1..3.
inline AttributedGraph star4(Group label = kMaj) {
  const std::vector<Edge> edges = {{0, 1}, {0, 2}, {0, 3}};
  return AttributedGraph(4, edges, std::vector<Group>(4, label));
}

// {0,1,2} and {3,4,5}.
inline AttributedGraph two_triangles() {
  const std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}};
  return AttributedGraph(6, edges, {kMin, kMaj, kMaj, kMin, kMaj, kMaj});
}

// Erdos-Renyi style graph with random labels, for property tests.
inline AttributedGraph random_graph(std::uint64_t seed, std::size_t n, double p,
                                    double minority_share = 0.3) {
  attrsample::Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  std::vector<Group> labels(n);
  for (auto& label : labels) label = rng.bernoulli(minority_share) ? kMin : kMaj;
  return AttributedGraph(n, edges, std::move(labels));
}

// Same graph with node i renamed to perm[i].
inline AttributedGraph relabel(const AttributedGraph& g, const std::vector<NodeId>& perm) {
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  std::vector<Group> labels(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) labels[perm[i]] = g.label(i);
  return AttributedGraph(g.node_count(), edges, std::move(labels));
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() /
              (name + "_" + std::to_string(std::random_device{}()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
