#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

using namespace satgame;
using namespace satgame::testing;

namespace {

const ActionProfile kTop{0, 1};     // the only (1,1) cell of the 2x2 example
const ActionProfile kBottom{1, 0};  // player 1 satisfied, player 2 not

bool is_sub(const std::vector<ActionProfile>& a, const std::vector<ActionProfile>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST(IsSatisfied, SingleSeEntries) {
  const auto g = single_se_game();
  EXPECT_TRUE(is_satisfied(g, 0, kTop));
  EXPECT_FALSE(is_satisfied(g, 1, kBottom));
  EXPECT_TRUE(is_satisfied(g, 0, kBottom));
}

TEST(IsSatisfied, ConstantTrue) {
  const auto g = constant_game({3, 2, 4}, true);
  g.space().for_each([&](std::size_t, const ActionProfile& a) {
    for (PlayerIndex k = 0; k < 3; ++k) EXPECT_TRUE(is_satisfied(g, k, a));
  });
}

TEST(IsSatisfied, RejectsBadIndices) {
  const auto g = single_se_game();
  EXPECT_THROW(is_satisfied(g, 2, kTop), ArgumentError);
  EXPECT_THROW(is_satisfied(g, 0, ActionProfile{0, 2}), ArgumentError);
  EXPECT_THROW(is_satisfied(g, 0, ActionProfile{0}), ArgumentError);
  EXPECT_THROW(is_se(g, ActionProfile{5, 0}), ArgumentError);
  EXPECT_THROW(binary_utility(g, 7, kTop), ArgumentError);
}

TEST(Construction, RejectsMalformedGames) {
  EXPECT_THROW(SatisfactionGame::from_table({2, 0}, {}), ArgumentError);
  EXPECT_THROW(SatisfactionGame::from_table({}, {}), ArgumentError);
  EXPECT_THROW(SatisfactionGame::from_table({2, 2}, {1, 0, 1}), ArgumentError);
  EXPECT_THROW(SatisfactionGame({2}, SatisfactionOracle{}), ArgumentError);
}

TEST(Construction, MaterializeMatchesOracle) {
  const auto cb = SatisfactionGame({3, 4}, [](PlayerIndex k, std::span<const ActionIndex> a) {
    return (a[0] + 2 * a[1] + k) % 3 == 0;
  });
  const auto ex = cb.materialize();
  EXPECT_TRUE(ex.is_explicit());
  EXPECT_FALSE(cb.is_explicit());
  cb.space().for_each([&](std::size_t, const ActionProfile& a) {
    for (PlayerIndex k = 0; k < 2; ++k) EXPECT_EQ(cb.satisfied(k, a), ex.satisfied(k, a));
  });
  EXPECT_EQ(ex.table().size(), 2u * 12u);
}

TEST(IsSe, Examples) {
  const auto g = single_se_game();
  EXPECT_TRUE(is_se(g, kTop));
  EXPECT_FALSE(is_se(g, kBottom));
  EXPECT_TRUE(is_se(constant_game({2, 5}, true), ActionProfile{1, 4}));
}

TEST(EnumerateSe, SingleSe) {
  EXPECT_EQ(enumerate_se(single_se_game()), std::vector<ActionProfile>{kTop});
}

TEST(EnumerateSe, ConstantFalseIsEmpty) {
  EXPECT_TRUE(enumerate_se(constant_game({3, 3}, false)).empty());
}

TEST(EnumerateSe, FourLevelChannelMatchesRateTable) {
  ic::Channel ch;
  ch.gains = {{{1.0, 0.3}, {0.4, 0.8}}};
  ch.pmax = {4.0, 4.0};
  ch.levels = {4, 4};
  ch.targets = {1.0, 0.8};
  const auto se = enumerate_se(ic::build_satisfaction_game(ch));
  // independent pass: hand-written rate formula over the 16 cells
  std::vector<ActionProfile> expected;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double p1 = 4.0 * i / 3.0, p2 = 4.0 * j / 3.0;
      const double r1 = std::log2(1.0 + p1 * 1.0 / (1.0 + p2 * 0.3));
      const double r2 = std::log2(1.0 + p2 * 0.8 / (1.0 + p1 * 0.4));
      if (r1 >= 1.0 && r2 >= 0.8) expected.push_back({i, j});
    }
  ASSERT_FALSE(expected.empty());
  EXPECT_EQ(se, expected);
}

TEST(EnumerateSe, CapacityErrorNamesCap) {
  const auto g = constant_game({100, 100, 100}, true);
  try {
    enumerate_se(g, 1000);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.cap(), 1000u);
    EXPECT_NE(std::string(e.what()).find("1000"), std::string::npos);
  }
  EXPECT_THROW(enumerate_se(constant_game({5000, 5000}, true)), CapacityError);
}

TEST(BinaryUtility, Examples) {
  const auto g = single_se_game();
  EXPECT_EQ(binary_utility(g, 0, kBottom), 1);
  EXPECT_EQ(binary_utility(g, 1, ActionProfile{0, 0}), 0);
  EXPECT_EQ(binary_utility(constant_game({2, 2}, true), 1, ActionProfile{1, 1}), 1);
}

TEST(EnumerateNeBinary, SingleSeHasTwo) {
  const std::vector<ActionProfile> expected{kTop, kBottom};
  EXPECT_EQ(enumerate_ne_binary(single_se_game()), expected);
}

TEST(EnumerateNeBinary, ConstantTrueGivesEverything) {
  const auto g = constant_game({2, 3}, true);
  EXPECT_EQ(enumerate_ne_binary(g).size(), 6u);
}

TEST(EnumerateNeBinary, Random333IsSupersetOfSe) {
  GameGenerator gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rg = gen.shaped({3, 3, 3});
    const auto g = rg.game();
    const auto ne = enumerate_ne_binary(g);
    EXPECT_EQ(ne, oracle_ne_binary(rg));
    EXPECT_TRUE(is_sub(enumerate_se(g), ne));
  }
}

TEST(EnumerateGne, ConstantUtilityEqualsSe) {
  GameGenerator gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rg = gen.game(3, 4);
    const ConstrainedGame cg{rg.game(),
                             [](PlayerIndex, std::span<const ActionIndex>) { return 2.5; }};
    EXPECT_EQ(enumerate_gne(cg), enumerate_se(cg.base));
  }
}

TEST(EnumerateGne, ConstantFalseIsEmpty) {
  const ConstrainedGame cg{constant_game({3, 3}, false),
                           [](PlayerIndex, std::span<const ActionIndex> a) {
                             return static_cast<double>(a[0]);
                           }};
  EXPECT_TRUE(enumerate_gne(cg).empty());
}

TEST(EnumerateGne, RandomMatchesOracleAndIsInsideSe) {
  GameGenerator gen(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rg = gen.game(3, 4);
    const auto cg = rg.constrained();
    const auto gne = enumerate_gne(cg);
    EXPECT_EQ(gne, oracle_gne(rg));
    EXPECT_TRUE(is_sub(gne, enumerate_se(cg.base)));
  }
}

TEST(FindClippingAction, ConstantTrue) {
  const auto g = constant_game({3, 4}, true);
  EXPECT_EQ(find_clipping_action(g, 0), 0u);
  EXPECT_EQ(find_clipping_action(g, 1), 0u);
}

TEST(FindClippingAction, SingleSePlayer2HasNone) {
  EXPECT_FALSE(find_clipping_action(single_se_game(), 1).has_value());
  EXPECT_THROW(find_clipping_action(single_se_game(), 2), ArgumentError);
}

TEST(FindClippingAction, DominantLinkAtMaxPower) {
  ic::Channel ch;
  ch.gains = {{{1.0, 0.5}, {0.5, 1.0}}};
  ch.pmax = {3.0, 3.0};
  ch.levels = {4, 4};
  ch.targets = {0.5, 1.0};
  // link 2 at full power against full interference: log2(1 + 3/2.5) > 1;
  // at 2 it gets log2(1 + 2/2.5) < 1
  EXPECT_EQ(find_clipping_action(ic::build_satisfaction_game(ch), 1), 3u);
}

TEST(LatticeConditions, ConstantTrueIsNotMonotone) {
  const auto g = constant_game({2, 3}, true);
  const auto r = check_lattice_conditions(g, ascending_orders(g));
  EXPECT_TRUE(r.lattice_ok);
  EXPECT_TRUE(r.nonempty_ok);
  EXPECT_FALSE(r.monotone_ok);
}

TEST(LatticeConditions, SingletonActionsAllTrue) {
  const auto g = constant_game({1, 1, 1}, true);
  EXPECT_TRUE(check_lattice_conditions(g, ascending_orders(g)).all());
}

TEST(LatticeConditions, FeasibleChannelNonEmpty) {
  const auto g = ic::build_satisfaction_game(ic::feasible_channel());
  ASSERT_TRUE(ic::existence_condition(ic::feasible_channel()));
  const auto r = check_lattice_conditions(g, descending_orders(g));
  EXPECT_TRUE(r.nonempty_ok);
  EXPECT_TRUE(r.lattice_ok);
}

TEST(LatticeConditions, RejectsInvalidOrders) {
  const auto g = single_se_game();
  EXPECT_THROW(check_lattice_conditions(g, {{0, 1}}), ArgumentError);
  EXPECT_THROW(check_lattice_conditions(g, {{0, 1}, {1, 1}}), ArgumentError);
  EXPECT_THROW(check_lattice_conditions(g, {{0, 1}, {0, 1, 2}}), ArgumentError);
  EXPECT_THROW(check_lattice_conditions(constant_game({200, 200}, true),
                                         ascending_orders(constant_game({200, 200}, true))),
               CapacityError);
}

// Naive pairwise reading of the monotonicity condition: every b in F(a) and
// b' in F(a') with a <= a' must satisfy b <= b'.
TEST(LatticeConditions, MonotoneMatchesPairwiseOracle) {
  GameGenerator gen(23);
  for (int trial = 0; trial < 150; ++trial) {
    auto rg = gen.game(2, 3, trial % 2 ? 0.3 : 0.6);
    const auto g = rg.game();
    ActionOrders orders(rg.counts.size());
    for (std::size_t k = 0; k < orders.size(); ++k) {
      orders[k].resize(rg.counts[k]);
      for (std::size_t i = 0; i < rg.counts[k]; ++i) orders[k][i] = i;
      std::shuffle(orders[k].begin(), orders[k].end(), gen.rng);
    }
    std::vector<std::vector<std::size_t>> rank(orders.size());
    for (std::size_t k = 0; k < orders.size(); ++k) {
      rank[k].resize(orders[k].size());
      for (std::size_t r = 0; r < orders[k].size(); ++r) rank[k][orders[k][r]] = r;
    }
    auto leq = [&](const ActionProfile& x, const ActionProfile& y) {
      for (std::size_t k = 0; k < x.size(); ++k)
        if (rank[k][x[k]] > rank[k][y[k]]) return false;
      return true;
    };
    auto image = [&](const ActionProfile& a) {
      std::vector<ActionProfile> out;
      for (std::size_t i = 0; i < rg.size(); ++i) {
        const auto b = decode(i, rg.counts);
        bool in = true;
        for (std::size_t k = 0; k < b.size() && in; ++k) {
          auto c = a;
          c[k] = b[k];
          in = rg.sat_at(k, c);
        }
        if (in) out.push_back(b);
      }
      return out;
    };
    bool nonempty = true, monotone = true;
    for (std::size_t i = 0; i < rg.size(); ++i) {
      const auto a = decode(i, rg.counts);
      const auto fa = image(a);
      if (fa.empty()) nonempty = false;
      for (std::size_t j = 0; j < rg.size(); ++j) {
        const auto a2 = decode(j, rg.counts);
        if (!leq(a, a2)) continue;
        for (const auto& b : fa)
          for (const auto& b2 : image(a2))
            if (!leq(b, b2)) monotone = false;
      }
    }
    const auto r = check_lattice_conditions(g, orders);
    EXPECT_EQ(r.nonempty_ok, nonempty);
    EXPECT_EQ(r.monotone_ok, monotone) << "trial " << trial;
  }
}

// ---- properties ----------------------------------------------------------

TEST(Properties, InclusionChainOnRandomGames) {
  GameGenerator gen(101);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rg = gen.game(4, 5);
    const auto g = rg.game();
    const auto se = enumerate_se(g);
    const auto ne = enumerate_ne_binary(g);
    EXPECT_EQ(se, oracle_se(rg));
    EXPECT_TRUE(is_sub(se, ne));
    EXPECT_TRUE(is_sub(enumerate_gne(rg.constrained()), se));
  }
}

TEST(Properties, BestResponseSeIsNashSet) {
  GameGenerator gen(303);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rg = gen.game(3, 4);
    const auto cg = rg.constrained();
    const auto br = best_response_game(rg.counts, cg.utility);
    // pure NE of the normal-form game, by direct deviation scan
    std::vector<ActionProfile> ne;
    for (std::size_t i = 0; i < rg.size(); ++i) {
      const auto a = decode(i, rg.counts);
      bool ok = true;
      for (std::size_t k = 0; k < a.size() && ok; ++k) {
        auto b = a;
        for (std::size_t x = 0; x < rg.counts[k]; ++x) {
          b[k] = x;
          if (rg.utility[k][encode(b, rg.counts)] > rg.utility[k][i]) ok = false;
        }
      }
      if (ok) ne.push_back(a);
    }
    EXPECT_EQ(enumerate_se(br), ne);
  }
}

TEST(Properties, EnumerationsAreDeterministic) {
  GameGenerator gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rg = gen.game(3, 4);
    const auto g = rg.game();
    const auto cg = rg.constrained();
    EXPECT_EQ(enumerate_se(g), enumerate_se(g));
    EXPECT_EQ(enumerate_ne_binary(g), enumerate_ne_binary(g));
    EXPECT_EQ(enumerate_gne(cg), enumerate_gne(cg));
    const auto se = enumerate_se(g);
    EXPECT_TRUE(std::is_sorted(se.begin(), se.end()));
  }
}
