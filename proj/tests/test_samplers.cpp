#include "doctest.h"

#include <set>

#include "attrsample/errors.hpp"
#include "attrsample/netgen.hpp"
#include "attrsample/samplers.hpp"
#include "support.hpp"

using namespace attrsample;
using namespace testing;

namespace {

constexpr SamplingMethod kAll[] = {SamplingMethod::kNode, SamplingMethod::kEdge,
                                   SamplingMethod::kRandomWalk, SamplingMethod::kSnowball};

bool same_sample(const SampledGraph& a, const SampledGraph& b) {
  return std::ranges::equal(a.parent_node_ids(), b.parent_node_ids()) &&
         std::ranges::equal(a.edges(), b.edges());
}

bool is_induced(const AttributedGraph& g, const SampledGraph& s) {
  return std::ranges::equal(induced_subgraph(g, s.parent_node_ids()).edges(), s.edges());
}

}  // namespace

TEST_SUITE("samplers") {

TEST_CASE("K outside [1, N] is infeasible") {
  const auto g = triangle();
  for (auto method : kAll) {
    CHECK_THROWS_AS(sample(g, {method, 0, 0.15, 1}), InfeasibleError);
    CHECK_THROWS_AS(sample(g, {method, 4, 0.15, 1}), InfeasibleError);
  }
  CHECK_THROWS_AS(random_walk_sample(g, 2, 1.0, 1), InputError);
  CHECK_THROWS_AS(random_walk_sample(g, 2, -0.1, 1), InputError);
}

TEST_CASE("node sampling examples") {
  const auto g = random_graph(5, 40, 0.1);
  const auto full = node_sample(g, g.node_count(), 3);
  CHECK(full.node_count() == g.node_count());
  CHECK(std::ranges::equal(full.edges(), g.edges()));

  const auto one = node_sample(g, 1, 3);
  CHECK(one.node_count() == 1);
  CHECK(one.edges().empty());
}

TEST_CASE("node sampling draws labels in proportion") {
  std::vector<Group> labels(100, kMaj);
  for (int i = 0; i < 20; ++i) labels[i * 5] = kMin;
  AttributedGraph g(100, std::vector<Edge>{}, labels);
  double total = 0.0;
  const int seeds = 10'000;
  for (int seed = 0; seed < seeds; ++seed) {
    const auto s = node_sample(g, 10, static_cast<std::uint64_t>(seed));
    total += static_cast<double>(std::ranges::count(s.labels(), kMin)) / 10.0;
  }
  CHECK(total / seeds == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("edge sampling on a star keeps two edges") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = edge_sample(star4(), 3, seed);
    CHECK(s.edges().size() == 2);
    CHECK(s.node_count() == 3);
    CHECK(s.parent_node_ids()[0] == 0);
  }
}

TEST_CASE("edge sampling on a triangle is not induced") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = edge_sample(triangle(), 3, seed);
    CHECK(s.node_count() == 3);
    CHECK(s.edges().size() == 2);
  }
  const auto two = edge_sample(triangle(), 2, 7);
  CHECK(two.node_count() == 2);
  CHECK(two.edges().size() == 1);
}

TEST_CASE("edge sampling may overshoot by one") {
  // A perfect matching: every edge brings two new nodes.
  const std::vector<Edge> edges = {{0, 1}, {2, 3}, {4, 5}};
  AttributedGraph g(6, edges, std::vector<Group>(6, kMaj));
  const auto s = edge_sample(g, 3, 1);
  CHECK(s.node_count() == 4);
  CHECK(s.provenance().requested == 3);
  CHECK(s.provenance().actual == 4);
}

TEST_CASE("edge sampling reports exhausted coverage") {
  const std::vector<Edge> edges = {{0, 1}};
  AttributedGraph g(4, edges, std::vector<Group>(4, kMaj));
  try {
    edge_sample(g, 3, 1);
    FAIL("expected CoverageError");
  } catch (const CoverageError& e) {
    CHECK(e.requested() == 3);
    CHECK(e.reached() == 2);
  }
}

TEST_CASE("random walk examples") {
  const auto g = random_graph(2, 30, 0.3);
  const auto full = random_walk_sample(g, g.node_count(), 0.15, 5);
  CHECK(std::ranges::equal(full.edges(), g.edges()));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(random_walk_sample(two_triangles(), 6, 0.15, seed).node_count() == 6);
  }

  AttributedGraph isolated(5, std::vector<Edge>{}, std::vector<Group>(5, kMaj));
  CHECK(random_walk_sample(isolated, 5, 0.0, 1).node_count() == 5);
}

TEST_CASE("random walk without teleport stays in one component") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_walk_sample(two_triangles(), 3, 0.0, seed);
    const auto ids = s.parent_node_ids();
    const bool left = ids.back() <= 2;
    const bool right = ids.front() >= 3;
    CHECK((left || right));
  }
  CHECK_THROWS_AS(random_walk_sample(two_triangles(), 6, 0.0, 1), NonTerminationError);
}

TEST_CASE("snowball examples") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(snowball_sample(star4(), 4, seed).node_count() == 4);
  }
  const auto g = random_graph(8, 25, 0.2);
  CHECK(std::ranges::equal(snowball_sample(g, g.node_count(), 1).edges(), g.edges()));

  // Each triangle closes after three nodes, so six needs two starts; the
  // sample is still exactly the two triangles.
  const auto s = snowball_sample(two_triangles(), 6, 4);
  CHECK(s.node_count() == 6);
  CHECK(s.edges().size() == 6);
}

TEST_CASE("snowball truncates the last wave at exactly K") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = snowball_sample(star4(), 2, seed);
    CHECK(s.node_count() == 2);
    CHECK(s.edges().size() == 1);  // every pair discovered together shares an edge
  }
}

TEST_CASE("property: size, closure and determinism for all samplers") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = generate({400, 3, 0.2, 0.3, seed});
    for (auto method : kAll) {
      for (std::size_t k : {1ul, 17ul, 120ul, 400ul}) {
        const SamplerParams params{method, k, 0.15, seed * 31 + k};
        const auto s = sample(g, params);
        CHECK(same_sample(s, sample(g, params)));
        CHECK(s.parent_node_ids().back() < g.node_count());
        for (auto [u, v] : s.edges()) CHECK(g.has_edge(u, v));
        if (method == SamplingMethod::kEdge) {
          CHECK((s.node_count() == k || s.node_count() == k + 1));
          CHECK(s.edges().size() <= induced_subgraph(g, s.parent_node_ids()).edges().size());
        } else {
          CHECK(s.node_count() == k);
          CHECK(is_induced(g, s));
        }
        CHECK(s.provenance().method == method);
        CHECK(s.provenance().actual == s.node_count());
      }
    }
  }
}

}  // TEST_SUITE
