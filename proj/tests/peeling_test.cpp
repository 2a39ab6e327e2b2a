#include <gtest/gtest.h>

#include "mlcore/mlcore.hpp"
#include "test_util.hpp"

using namespace mlcore;
using namespace mlcore::testing;

namespace {

Adjacency graph_of(std::size_t n, std::vector<Edge> edges) { return Adjacency::from_edges(n, edges); }

// Core numbers straight from the definition: largest k whose k-core holds u.
std::vector<std::uint32_t> core_numbers_by_definition(const Adjacency& g) {
  const auto all = VertexSet::all(g.vertex_count());
  std::vector<std::uint32_t> c(g.vertex_count(), 0);
  for (std::uint32_t k = 1;; ++k) {
    auto core = peel_to_threshold(g, k, all);
    if (core.empty()) break;
    for (VertexId u : core) c[u] = k;
  }
  return c;
}

}  // namespace

TEST(CoreDecomposition, SmallGraphs) {
  auto triangle = graph_of(3, {{0, 1}, {1, 2}, {0, 2}});
  auto idx = core_decomposition(triangle);
  EXPECT_EQ(idx.core_number, (std::vector<std::uint32_t>{2, 2, 2}));
  EXPECT_EQ(idx.k_star, 2u);

  auto pendant = graph_of(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  idx = core_decomposition(pendant);
  EXPECT_EQ(idx.core_number, (std::vector<std::uint32_t>{2, 2, 2, 1}));
  EXPECT_EQ(idx.k_star, 2u);

  auto star = graph_of(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  idx = core_decomposition(star);
  EXPECT_EQ(idx.core_number, std::vector<std::uint32_t>(6, 1));
  EXPECT_EQ(idx.k_star, 1u);
}

TEST(CoreDecomposition, EmptyGraph) {
  auto idx = core_decomposition(graph_of(4, {}));
  EXPECT_EQ(idx.core_number, std::vector<std::uint32_t>(4, 0));
  EXPECT_EQ(idx.k_star, 0u);
  EXPECT_EQ(core_decomposition(Adjacency{}).k_star, 0u);
}

TEST(CoreDecomposition, MatchesDefinitionOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = random_multilayer(40, 1, 0.15, seed);
    auto idx = core_decomposition(g.layer(0));
    EXPECT_EQ(idx.core_number, core_numbers_by_definition(g.layer(0))) << "seed " << seed;
    for (VertexId u = 0; u < 40; ++u) EXPECT_LE(idx.core_number[u], g.layer(0).degree(u));
    // Re-decomposing a k-core gives back the same k-core.
    for (std::uint32_t k = 1; k <= idx.k_star; ++k) {
      auto ck = idx.core(k);
      auto again = core_decomposition(g.layer(0), ck);
      EXPECT_EQ(again.core(k), ck);
    }
  }
}

TEST(CoreDecomposition, RestrictedToSubset) {
  auto pendant = graph_of(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  auto idx = core_decomposition(pendant, VertexSet{0, 2, 3});
  EXPECT_EQ(idx.core_number, (std::vector<std::uint32_t>{1, 0, 1, 1}));
}

TEST(PeelToVector, TwoLayerExample) {
  auto g = two_layer_example();
  const auto V = VertexSet::all(4);
  EXPECT_EQ(peel_to_vector(g, {2, 2}, V), ids_of(g.labels(), {"1", "2", "3"}));
  EXPECT_EQ(peel_to_vector(g, {0, 0}, V), V);
  EXPECT_TRUE(peel_to_vector(g, {3, 0}, V).empty());
  EXPECT_THROW(peel_to_vector(g, {1}, V), ContractViolation);
}

TEST(PeelToVector, OrderIndependent) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto g = random_multilayer(20, 3, 0.3, seed);
    const auto V = VertexSet::all(20);
    for (CorenessVector k : {CorenessVector{1, 1, 1}, CorenessVector{2, 1, 3}, CorenessVector{3, 3, 2}}) {
      auto fast = peel_to_vector(g, k, V);
      for (std::uint64_t order = 0; order < 3; ++order)
        EXPECT_EQ(random_order_peel(g, k, V, seed * 10 + order), fast);
    }
  }
}

TEST(PeelToVector, MonotoneAndRestartConsistent) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto g = random_multilayer(25, 2, 0.25, seed);
    const auto V = VertexSet::all(25);
    for (std::uint32_t a = 0; a < 5; ++a)
      for (std::uint32_t b = 0; b < 5; ++b) {
        auto base = peel_to_vector(g, {a, b}, V);
        auto up_a = peel_to_vector(g, {a + 1, b}, V);
        auto up_b = peel_to_vector(g, {a, b + 1}, V);
        EXPECT_TRUE(up_a.is_subset_of(base));
        EXPECT_TRUE(up_b.is_subset_of(base));
        // Restarting from any superset of the answer gives the same answer.
        EXPECT_EQ(peel_to_vector(g, {a + 1, b}, base), up_a);
        EXPECT_EQ(peel_to_vector(g, {a + 1, b}, unite(up_a, VertexSet{0, 1, 2})), up_a);
      }
  }
}

TEST(PeelerIncremental, ParentsIntersectionMatchesDirectPeel) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_multilayer(30, 3, 0.25, seed);
    MultilayerPeeler peeler(g);
    const auto V = VertexSet::all(30);
    CorenessVector k{2, 2, 1};
    auto p0 = peeler.peel({1, 2, 1}, V);
    auto p1 = peeler.peel({2, 1, 1}, V);
    auto p2 = peeler.peel({2, 2, 0}, V);
    const PeeledCore* parents[] = {&p0, &p1, &p2};
    for (std::size_t base = 0; base < 3; ++base) {
      auto got = peeler.peel_from_parents(k, parents, base);
      EXPECT_EQ(got.vertices, peel_to_vector(g, k, V));
      // Stored degrees are induced degrees inside the result.
      for (std::size_t i = 0; i < got.vertices.size(); ++i)
        for (std::size_t l = 0; l < 3; ++l)
          EXPECT_EQ(got.degrees[i * 3 + l], induced_degree(g.layer(l), got.vertices, got.vertices[i]));
    }
  }
}

TEST(PeelInterval, TriangleExample) {
  auto g = triangle_temporal();
  const auto V = VertexSet::all(3);
  EXPECT_EQ(peel_interval(g, 2, 0, 1, V), V);
  EXPECT_TRUE(peel_interval(g, 2, 0, 2, V).empty());
  EXPECT_EQ(peel_interval(g, 1, 0, 2, V), ids_of(g.labels(), {"a", "b"}));
  EXPECT_THROW(peel_interval(g, 1, 0, 3, V), ContractViolation);
}
