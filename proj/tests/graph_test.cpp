#include <random>

#include <gtest/gtest.h>

#include "chipfire/graph.hpp"
#include "support/fixtures.hpp"

namespace chipfire {
namespace {

using testing::heavy_middle;

TEST(Graph, ConstructionErrors) {
  EXPECT_THROW(WeightedMultigraph::from_indices({}, {}), GraphError);
  EXPECT_THROW(WeightedMultigraph::from_indices({0, 0}, {}), GraphError);  // disconnected
  EXPECT_THROW(WeightedMultigraph::from_indices({-1}, {}), GraphError);
  EXPECT_THROW(WeightedMultigraph::from_indices({0}, {{0, 1}}), GraphError);
  EXPECT_THROW(WeightedMultigraph({{"a", 0}, {"a", 0}}, std::vector<Edge>{{0, 1}}), GraphError);
  EXPECT_THROW(WeightedMultigraph({{"a", 0}}, {{"a", "b"}}), GraphError);
}

TEST(Graph, FirstVertexIsLexicographic) {
  WeightedMultigraph g({{"zeta", 0}, {"alpha", 0}, {"mid", 0}}, {{"zeta", "alpha"}, {"alpha", "mid"}});
  EXPECT_EQ(g.name(g.first_vertex()), "alpha");
}

TEST(Graph, Genus) {
  EXPECT_EQ(genus(WeightedMultigraph::from_indices({0}, {})), 0);
  EXPECT_EQ(genus(heavy_middle()), 6);  // 4 - 3 + 1 + (0 + 3 + 1)
  EXPECT_EQ(genus(WeightedMultigraph::from_indices({0, 0}, {{0, 1}, {0, 1}})), 1);
}

TEST(Graph, Valence) {
  EXPECT_EQ(valence(heavy_middle(), 1), 4);
  EXPECT_EQ(valence(WeightedMultigraph::from_indices({0}, {}), 0), 0);
  EXPECT_EQ(valence(WeightedMultigraph::from_indices({0}, {{0, 0}}), 0), 2);
  EXPECT_THROW(valence(heavy_middle(), 7), DomainError);
}

TEST(Graph, CanonicalDivisor) {
  EXPECT_EQ(canonical_divisor(heavy_middle()), (Divisor{1, 8, 1}));
  EXPECT_EQ(canonical_divisor(heavy_middle()).degree(), 10);
  EXPECT_EQ(canonical_divisor(WeightedMultigraph::from_indices({1}, {})), (Divisor{0}));
  EXPECT_EQ(canonical_divisor(testing::cycle(3)), (Divisor{0, 0, 0}));
}

TEST(Graph, Stability) {
  const StabilityReport hm = stability(heavy_middle());
  EXPECT_TRUE(hm.applicable);
  EXPECT_TRUE(hm.semistable);
  EXPECT_TRUE(hm.stable);

  // weight-0 leaf hanging off a genus-2 vertex
  const auto leafy = WeightedMultigraph::from_indices({2, 0}, {{0, 1}});
  EXPECT_FALSE(is_semistable(leafy));

  // all weights >= 1: condition is vacuous
  const auto heavy = WeightedMultigraph::from_indices({1, 1, 1}, {{0, 1}, {1, 2}});
  EXPECT_TRUE(is_semistable(heavy));
  EXPECT_TRUE(is_stable(heavy));

  const StabilityReport low = stability(testing::cycle(4));
  EXPECT_FALSE(low.applicable);
  EXPECT_FALSE(low.semistable);
  EXPECT_FALSE(low.stable);
}

TEST(Graph, Bridges) {
  const EdgeCut hm = bridges(heavy_middle());
  EXPECT_EQ(hm.bridges(), (std::vector<std::size_t>{3}));
  EXPECT_EQ(bridges(testing::cycle(5)).count(), 0u);
  EXPECT_EQ(bridges(testing::path(5)).count(), 4u);
  // loops and parallel edges are never bridges
  const auto g = WeightedMultigraph::from_indices({0, 0, 0}, {{0, 0}, {0, 1}, {0, 1}, {1, 2}});
  EXPECT_EQ(bridges(g).bridges(), (std::vector<std::size_t>{3}));
}

TEST(Graph, ContractNonBridges) {
  const BridgeTree hm = contract_non_bridges(heavy_middle());
  EXPECT_EQ(hm.tree.num_vertices(), 2u);
  EXPECT_EQ(hm.tree.num_edges(), 1u);
  EXPECT_EQ(hm.tree.name(0), "v1+v2");
  EXPECT_EQ(hm.tree.name(1), "v3");
  EXPECT_EQ(hm.vertex_map, (std::vector<std::size_t>{0, 0, 1}));

  EXPECT_EQ(contract_non_bridges(testing::cycle(4)).tree.num_vertices(), 1u);

  const BridgeTree star = contract_non_bridges(testing::star_fixture());
  EXPECT_EQ(star.tree.num_vertices(), 4u);
  EXPECT_EQ(valence(star.tree, star.vertex_map[0]), 3);
}

TEST(Graph, ChainOfTwoEdgeConnectedComponents) {
  EXPECT_TRUE(is_chain_of_2ec(testing::chain_fixture()));
  EXPECT_FALSE(is_chain_of_2ec(testing::star_fixture()));
  EXPECT_TRUE(is_chain_of_2ec(testing::cycle(6)));
  EXPECT_TRUE(is_chain_of_2ec(heavy_middle()));
  // a tree with a degree-3 vertex is not a chain
  EXPECT_FALSE(is_chain_of_2ec(WeightedMultigraph::from_indices({0, 0, 0, 0}, {{0, 1}, {0, 2}, {0, 3}})));
}

TEST(Graph, BulletModel) {
  const auto plain = testing::cycle(3);
  const BulletModel same = bullet_model(plain);
  EXPECT_TRUE(same.identity);
  EXPECT_EQ(same.graph, plain);

  const BulletModel two = bullet_model(WeightedMultigraph::from_indices({2}, {}));
  EXPECT_EQ(two.graph.num_vertices(), 3u);
  EXPECT_EQ(two.graph.multiplicity(0, 1), 2);
  EXPECT_EQ(two.graph.multiplicity(0, 2), 2);
  EXPECT_EQ(genus(two.graph), 2);

  const BulletModel looped = bullet_model(WeightedMultigraph::from_indices({0}, {{0, 0}}));
  EXPECT_EQ(looped.graph.num_vertices(), 2u);
  EXPECT_EQ(looped.graph.num_edges(), 2u);
  EXPECT_EQ(looped.graph.multiplicity(0, 1), 2);
}

TEST(GraphProperty, RandomGraphInvariants) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = testing::random_graph(rng, {6, 10, 2, 0.2});
    const BulletModel model = bullet_model(g);
    EXPECT_EQ(genus(model.graph), genus(g));
    for (std::size_t v = 0; v < model.graph.num_vertices(); ++v) {
      EXPECT_EQ(model.graph.weight(v), 0);
      EXPECT_EQ(model.graph.loops(v), 0);
    }
    EXPECT_EQ(canonical_divisor(g).degree(), 2 * genus(g) - 2);

    const EdgeCut cut = bridges(g);
    const BridgeTree bt = contract_non_bridges(g);
    EXPECT_EQ(bt.tree.num_edges(), cut.count());
    EXPECT_EQ(genus(bt.tree), 0);  // connected with |E| = |V| - 1: acyclic
    if (cut.count() == 0) {
      EXPECT_TRUE(is_chain_of_2ec(g));
    }

    // brute-force bridge check: removing the edge disconnects iff bridge
    for (std::size_t id = 0; id < g.num_edges(); ++id) {
      std::vector<Edge> rest;
      for (std::size_t j = 0; j < g.num_edges(); ++j)
        if (j != id) rest.push_back(g.edges()[j]);
      bool connected = true;
      try {
        WeightedMultigraph::from_indices(g.weights(), rest);
      } catch (const GraphError&) {
        connected = false;
      }
      EXPECT_EQ(cut.is_bridge[id], !connected);
    }
  }
}

}  // namespace
}  // namespace chipfire
