#include <random>

#include <gtest/gtest.h>

#include "chipfire/rank.hpp"
#include "support/fixtures.hpp"

namespace chipfire {
namespace {

using testing::heavy_middle;

Options no_shortcuts() {
  Options o;
  o.shortcuts = false;
  return o;
}

TEST(Rank, HeavyMiddleGolden) {
  const auto g = heavy_middle();
  EXPECT_EQ(rank(g, Divisor(3)).rank, 0);
  EXPECT_EQ(rank(g, Divisor{-1, 0, 0}).rank, -1);
  EXPECT_EQ(rank(g, canonical_divisor(g)).rank, 5);
  EXPECT_EQ(rank(g, canonical_divisor(g), no_shortcuts()).rank, 5);
  EXPECT_EQ(rank(g, Divisor{0, 3, 2}).rank, 2);
  EXPECT_EQ(rank(g, Divisor{3, 2, 0}).rank, 2);
  EXPECT_EQ(rank(g, Divisor{1, 5, -1}).rank, 2);
  EXPECT_EQ(rank_oracle(g, Divisor{0, 3, 2}), 2);
  EXPECT_EQ(rank_oracle(g, Divisor{1, 5, -1}), 2);
  EXPECT_EQ(rank_oracle(g, Divisor(3)), 0);
}

TEST(Rank, WitnessAndMethod) {
  const auto g = heavy_middle();
  const RankReport negative = rank(g, Divisor{-1, 0, 0});
  EXPECT_EQ(negative.method, RankMethod::regime_shortcut);
  ASSERT_TRUE(negative.witness.has_value());
  EXPECT_TRUE(negative.witness->is_zero());

  const RankReport high = rank(g, Divisor{11, 0, 0});
  EXPECT_EQ(high.rank, 5);
  EXPECT_EQ(high.method, RankMethod::regime_shortcut);
  EXPECT_FALSE(high.witness.has_value());

  const RankReport mid = rank(g, Divisor{0, 3, 2});
  EXPECT_EQ(mid.method, RankMethod::definition);
  ASSERT_TRUE(mid.witness.has_value());
  EXPECT_EQ(mid.witness->degree(), 3);
  EXPECT_TRUE(mid.witness->is_effective());
  // the class on the bullet model really fails to absorb the witness
  const BulletModel model = bullet_model(g);
  EXPECT_FALSE(effectivize(model.graph, embed_divisor(model, Divisor{0, 3, 2}) - *mid.witness).has_value());
}

TEST(Rank, BudgetExceeded) {
  const auto g = heavy_middle();
  Options tight;
  tight.budget = 5;
  EXPECT_THROW(rank(g, canonical_divisor(g), [&] { auto o = no_shortcuts(); o.budget = 5; return o; }()), BudgetExceeded);
  EXPECT_THROW(rank_oracle(g, Divisor{0, 3, 2}, tight), BudgetExceeded);
}

TEST(Rank, LowerBoundEdeg) {
  const auto g = heavy_middle();
  EXPECT_TRUE(rank_lower_bound_edeg(g, canonical_divisor(g), 0));
  EXPECT_FALSE(rank_lower_bound_edeg(g, Divisor{-1, 0, 0}, 0));
  EXPECT_THROW(rank_lower_bound_edeg(g, Divisor(3), -1), DomainError);
}

TEST(Rank, RiemannRochHeavyMiddle) {
  const auto g = heavy_middle();
  const RiemannRochReport r = riemann_roch(g, Divisor{0, 3, 2});
  EXPECT_EQ(r.rank, 2);
  EXPECT_EQ(r.residual_rank, 2);
  EXPECT_EQ(r.genus, 6);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(riemann_roch_check(g, Divisor(3)));
}

TEST(Rank, CliffordCheckRange) {
  const auto g = heavy_middle();
  EXPECT_TRUE(clifford_check(g, Divisor{0, 3, 2}));
  EXPECT_TRUE(clifford_check(g, canonical_divisor(g)));
  EXPECT_THROW(clifford_check(g, Divisor{-1, 0, 0}), DomainError);
  EXPECT_THROW(clifford_check(g, Divisor{11, 0, 0}), DomainError);
}

TEST(Rank, LatticeCountsSpanningTrees) {
  EXPECT_EQ(detail::LaplacianLattice(heavy_middle()).spanning_trees(), 3);
  EXPECT_EQ(detail::LaplacianLattice(testing::cycle(5)).spanning_trees(), 5);
  EXPECT_EQ(detail::LaplacianLattice(testing::path(4)).spanning_trees(), 1);
  // K4 has 16 spanning trees
  const auto k4 = WeightedMultigraph::from_indices({0, 0, 0, 0}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(detail::LaplacianLattice(k4).spanning_trees(), 16);
}

TEST(RankProperty, MatchesOracleOnSmallGraphs) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const auto g = testing::random_graph(rng, {4, 5, 1, 0.1});
    const Divisor d = testing::random_divisor(rng, g.num_vertices(), -1, 2);
    EXPECT_EQ(rank(g, d, no_shortcuts()).rank, rank_oracle(g, d)) << testing::describe(d);
  }
}

TEST(RankProperty, RegimesAndRiemannRoch) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 120; ++trial) {
    const auto g = testing::random_graph(rng, {5, 7, 1, 0.1});
    const std::int64_t gen = genus(g);
    const Divisor d = testing::random_divisor(rng, g.num_vertices(), -2, 3);
    const std::int64_t r = rank(g, d, no_shortcuts()).rank;
    EXPECT_EQ(r, rank(g, d).rank);
    if (d.degree() < 0) {
      EXPECT_EQ(r, -1);
    }
    if (d.degree() > 2 * gen - 2) {
      EXPECT_EQ(r, d.degree() - gen);
    }
    EXPECT_GE(r, -1);
    EXPECT_LE(r, std::max<std::int64_t>(d.degree(), -1));
    EXPECT_TRUE(riemann_roch_check(g, d));
  }
}

TEST(RankProperty, ClassInvarianceAndSuperadditivity) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 120; ++trial) {
    const auto g = testing::random_graph(rng, {5, 7, 1, 0.1});
    const std::size_t n = g.num_vertices();
    const Divisor a = testing::random_divisor(rng, n, 0, 2);
    const Divisor b = testing::random_divisor(rng, n, 0, 2);
    const std::int64_t ra = rank(g, a).rank;
    EXPECT_EQ(ra, rank(g, testing::random_shift(rng, g, a, 3)).rank);
    const std::int64_t rb = rank(g, b).rank;
    EXPECT_GE(rank(g, a + b).rank, ra + rb);
  }
}

TEST(RankProperty, LowerBoundImpliesRank) {
  std::mt19937_64 rng(43);
  int certified = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_graph(rng, {4, 6, 2, 0.15});
    const Divisor d = testing::random_divisor(rng, g.num_vertices(), 0, 4);
    const std::int64_t r = rank(g, d).rank;
    for (std::int64_t s = 0; s <= 3; ++s)
      if (rank_lower_bound_edeg(g, d, s)) {
        ++certified;
        EXPECT_GE(r, s);
      }
  }
  EXPECT_GT(certified, 0);
}

TEST(RankProperty, ThreadsIrrelevantToRank) {
  const auto g = testing::chain_fixture();
  Options four;
  four.threads = 4;
  const Divisor d{1, 0, 1, 0, 2, 1};
  EXPECT_EQ(rank(g, d).rank, rank(g, d, four).rank);
  EXPECT_EQ(rank(g, d).witness, rank(g, d, four).witness);
}

}  // namespace
}  // namespace chipfire
