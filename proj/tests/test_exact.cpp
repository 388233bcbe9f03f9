#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace treesearch;
using namespace treesearch::testing;

TEST(OptExact, SingleVertex) {
  auto inst = make_instance(1, {}, {q(3, 7)});
  auto sol = opt_exact(inst);
  EXPECT_EQ(sol.cost, q(3, 7));
  EXPECT_EQ(sol.tree, DecisionTree::single(1));
}

TEST(OptExact, UniformPathOfSeven) {
  auto inst = uniform_path(7);
  EXPECT_EQ(enumerated_opt(inst), q(3));
  EXPECT_EQ(opt_exact(inst).cost, q(3));
}

TEST(OptExact, Fix1MatchesOracleAndFrozenValue) {
  auto inst = fix1();
  auto sol = opt_exact(inst);
  EXPECT_EQ(sol.cost, brute_force_opt(inst));
  EXPECT_EQ(sol.cost, q(9, 5));
  EXPECT_LE(sol.cost, evaluate_cost(inst, d_fix2()));
  EXPECT_EQ(evaluate_cost(inst, sol.tree), sol.cost);
}

TEST(OptExact, TieBreakPicksSmallestRoot) {
  // Every vertex of a uniform path of 4 is an optimal first query.
  auto sol = opt_exact(uniform_path(4));
  EXPECT_EQ(sol.cost, q(3));
  EXPECT_EQ(sol.tree.root, 1);
  // Only the middle vertex is optimal on these paths of 3.
  EXPECT_EQ(opt_exact(uniform_path(3)).tree.root, 2);
  EXPECT_EQ(opt_exact(path_with_costs({q(1), q(1), q(1, 2)})).tree.root, 2);
}

TEST(OptExact, StateLimit) {
  auto inst = uniform_path(12);
  try {
    opt_exact(inst, SolveLimits{5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::StateLimitExceeded);
  }
  EXPECT_THROW(opt_exact(inst, SolveLimits{0}), Error);
}

TEST(OptExact, RejectsDisconnectedScope) {
  try {
    opt_exact(uniform_path(5), VertexSet{1, 2, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotConnected);
  }
}

TEST(OptExact, AgreesWithOraclesOnSmallInstances) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto inst = mixed_instance(seed, 1, 9);
    auto sol = opt_exact(inst);
    EXPECT_EQ(sol.cost, brute_force_opt(inst)) << "seed " << seed;
    if (inst.size() <= 6) {
      EXPECT_EQ(sol.cost, enumerated_opt(inst)) << "seed " << seed;
    }
    EXPECT_NO_THROW(validate_decision_tree(inst, sol.tree));
    EXPECT_EQ(evaluate_cost(inst, sol.tree), sol.cost);
  }
}

TEST(OptExact, TwinLeavesOnStars) {
  // Many equal leaves collapse into few states; unequal ones still agree with the oracle.
  auto big = star(40, q(1), q(1));
  auto sol = opt_exact(big);
  EXPECT_EQ(sol.cost, q(2));
  EXPECT_LT(sol.states, 200u);
  EXPECT_EQ(evaluate_cost(big, sol.tree), q(2));

  auto mixed = make_instance(6, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {5, 6}},
                             {q(1), q(1, 2), q(1, 2), q(1, 3), q(1, 4), q(1, 2)});
  EXPECT_EQ(opt_exact(mixed).cost, brute_force_opt(mixed));
}

TEST(OptExact, LargeDenominatorsUseRationalPath) {
  // The lcm of these denominators is far above 2^61.
  std::vector<Rational> costs;
  for (std::int64_t p : {1000003, 1000033, 1000037, 1000039, 1000081}) costs.push_back(q(p - 1, p));
  auto inst = path_with_costs(costs);
  auto sol = opt_exact(inst);
  EXPECT_EQ(sol.cost, brute_force_opt(inst));
  EXPECT_EQ(evaluate_cost(inst, sol.tree), sol.cost);
}

TEST(OptExact, WideKeysBeyondSixtyFourVertices) {
  auto inst = uniform_path(70);
  auto sol = opt_exact(inst, inst.vertices());
  EXPECT_EQ(sol.cost, q(floor_log2(70) + 1));
  EXPECT_EQ(evaluate_cost(inst, sol.tree), sol.cost);
}

TEST(OptExact, NormalizedBoundsAndWitness) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto inst = normalize(mixed_instance(seed, 1, 14)).first;
    auto sol = opt_exact(inst);
    EXPECT_GE(sol.cost, q(1));
    EXPECT_LE(sol.cost, q(floor_log2(inst.size()) + 1));
    EXPECT_LE(sol.cost, evaluate_cost(inst, ranking_based_dt(inst)));
    EXPECT_LE(sol.cost, evaluate_cost(inst, create_decision_tree(inst).tree));
  }
}

TEST(OptExact, SubtreeMonotonicity) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto inst = mixed_instance(seed, 2, 12);
    Rng rng(seed ^ 0x5555);
    auto s = random_connected_subset(inst, rng, rng.range(1, inst.size()));
    EXPECT_LE(opt_exact(inst, s).cost, opt_exact(inst).cost);
  }
}
