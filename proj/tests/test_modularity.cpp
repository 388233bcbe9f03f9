#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace treesearch;
using namespace treesearch::testing;

namespace {

// Count of heavy modules by direct definition: vertices above t, grouped by
// walking edges whose endpoints are both above t.
int count_modules_naive(const TreeInstance& inst, const Rational& t) {
  std::vector<int> comp(static_cast<std::size_t>(inst.size()) + 1, 0);
  int count = 0;
  for (int v = 1; v <= inst.size(); ++v) {
    if (inst.cost(v) <= t || comp[static_cast<std::size_t>(v)] != 0) continue;
    ++count;
    std::vector<int> stack{v};
    comp[static_cast<std::size_t>(v)] = count;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : inst.neighbors(u)) {
        if (inst.cost(w) > t && comp[static_cast<std::size_t>(w)] == 0) {
          comp[static_cast<std::size_t>(w)] = count;
          stack.push_back(w);
        }
      }
    }
  }
  return count;
}

}  // namespace

TEST(HeavyModules, Fix1Examples) {
  auto inst = fix1();
  auto at35 = heavy_modules(inst, q(3, 5));
  EXPECT_EQ(at35.count(), 3u);
  EXPECT_EQ(at35.modules, (std::vector<VertexSet>{{6}, {7}, {11}}));
  EXPECT_EQ(heavy_modules(inst, q(1)).count(), 0u);
  auto at0 = heavy_modules(inst, q(0));
  ASSERT_EQ(at0.count(), 1u);
  EXPECT_EQ(at0.modules[0], inst.vertices());
}

TEST(HeavyModules, DyadicThresholdComparesExactly) {
  auto inst = path_with_costs({q(1, 4), q(1), q(1, 4)});
  EXPECT_EQ(heavy_modules(inst, 0.25).count(), 1u);
  EXPECT_EQ(heavy_modules(inst, std::nextafter(0.25, 0.0)).count(), 1u);
  EXPECT_EQ(heavy_modules(inst, std::nextafter(0.25, 0.0)).modules[0], (VertexSet{1, 2, 3}));
}

TEST(HeavyModules, MaximalDisjointAndNonAdjacent) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto inst = mixed_instance(seed, 1, 40);
    for (const auto& t : inst.costs()) {
      auto dec = heavy_modules(inst, t);
      std::vector<int> owner(static_cast<std::size_t>(inst.size()) + 1, -1);
      for (std::size_t i = 0; i < dec.modules.size(); ++i) {
        EXPECT_TRUE(is_connected(inst, dec.modules[i]));
        for (int v : dec.modules[i]) {
          EXPECT_GT(inst.cost(v), t);
          EXPECT_EQ(owner[static_cast<std::size_t>(v)], -1);
          owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
      }
      for (int v = 1; v <= inst.size(); ++v) {
        EXPECT_EQ(owner[static_cast<std::size_t>(v)] >= 0, inst.cost(v) > t);
      }
      for (auto [u, v] : inst.edges()) {
        int a = owner[static_cast<std::size_t>(u)];
        int b = owner[static_cast<std::size_t>(v)];
        if (a >= 0 && b >= 0) {
          EXPECT_EQ(a, b);
        }
      }
      EXPECT_EQ(static_cast<int>(dec.count()), count_modules_naive(inst, t));
    }
  }
}

TEST(KUpModularity, Fix1) {
  auto m = k_up_modularity(fix1());
  EXPECT_EQ(m.k, 4);
  EXPECT_EQ(m.witness, q(1, 5));
  auto dec = heavy_modules(fix1(), m.witness);
  EXPECT_EQ(dec.modules, (std::vector<VertexSet>{{2, 5, 6}, {7, 9}, {8}, {11}}));
}

TEST(KUpModularity, Fix1AgainstThresholdScan) {
  auto inst = fix1();
  int best = 0;
  for (int num = 0; num <= 5; ++num) best = std::max(best, count_modules_naive(inst, q(num, 5)));
  EXPECT_EQ(best, 4);
}

TEST(KUpModularity, UniformIsOne) {
  for (Shape shape : all_shapes()) {
    auto inst = generate_instance(shape, CostModel{}, 13, 5);
    EXPECT_EQ(k_up_modularity(inst).k, 1);
  }
}

TEST(KUpModularity, AlternatingPath) {
  auto inst = path_with_costs({q(1), q(2), q(1), q(2), q(1)});
  auto m = k_up_modularity(inst);
  EXPECT_EQ(m.k, 2);
  EXPECT_EQ(m.witness, q(1));
}

TEST(IsUpMonotonic, Examples) {
  EXPECT_TRUE(is_up_monotonic(star(5, q(1), q(1, 2))));
  EXPECT_FALSE(is_up_monotonic(fix1()));
  auto dip = path_with_costs({q(1), q(1, 4), q(1, 2)});
  EXPECT_FALSE(is_up_monotonic(dip));
  EXPECT_EQ(heavy_modules(dip, q(1, 4)).count(), 2u);
}

TEST(IsUpMonotonic, SeveralMaxima) {
  EXPECT_TRUE(is_up_monotonic(path_with_costs({q(1), q(1), q(1), q(1, 2)})));
  EXPECT_TRUE(is_up_monotonic(path_with_costs({q(1, 2), q(1), q(1)})));
  EXPECT_FALSE(is_up_monotonic(path_with_costs({q(1), q(1, 2), q(1)})));
}

TEST(IsUpMonotonic, MatchesKEqualsOne) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = mixed_instance(seed, 1, 30);
    EXPECT_EQ(k_up_modularity(inst).k == 1, is_up_monotonic(inst)) << "seed " << seed;
  }
}

TEST(KUpModularity, SubtreeNeverIncreasesK) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto inst = mixed_instance(seed, 2, 40);
    int k = k_up_modularity(inst).k;
    Rng rng(seed + 77);
    auto s = random_connected_subset(inst, rng, rng.range(1, inst.size()));
    EXPECT_LE(k_up_modularity(inst, s).k, k);
    for (const auto& t : inst.costs()) EXPECT_LE(static_cast<int>(heavy_modules(inst, t).count()), k);
  }
}
