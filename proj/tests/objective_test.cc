// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "episfm/objective.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "episfm/random_problems.h"
#include "episfm/sfm.h"
#include "test_util.h"

namespace episfm {
namespace {

using testing::DeterministicPmf;
using testing::MaskFromBits;
using testing::PathInstance;
using testing::RandomSubset;
using testing::UniformPmf;

Instance Triangle() {
  Instance instance;
  instance.graph = Graph(3, {{0, 1}, {0, 2}, {1, 2}});
  instance.params = {{0.5, 0.5, 0.5}, {2.0, 3.0, 7.0}};
  instance.chain = PhaseTypeChain::FromPmf(UniformPmf(7, 10));
  instance.initial = EpidemicState(std::vector<int>{1, 0, 0});
  return instance;
}

// Protection set over node ids, from a mask over ground positions.
ProtectionSet FromGroundMask(const std::vector<int>& ground,
                             const std::vector<bool>& mask, int n) {
  std::vector<int> members;
  for (std::size_t e = 0; e < ground.size(); ++e) {
    if (mask[e]) members.push_back(ground[e]);
  }
  return ProtectionSet(n, members);
}

TEST(StageCostTest, HandValues) {
  const Instance t = Triangle();
  EXPECT_EQ(StageCost(ProtectionSet::Empty(3), t.initial, t), 0.0);
  EXPECT_EQ(StageCost(ProtectionSet(3, {0}), t.initial, t), 0.0);
  EXPECT_EQ(StageCost(ProtectionSet(3, {1, 2}), t.initial, t), 5.0);
}

TEST(StageCostTest, ModularOverGround) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance instance = RandomSmallInstance(seed);
    const int n = instance.graph.num_nodes();
    const std::vector<int> ground = GroundSet(instance.initial, instance.graph);
    for (std::uint64_t bits = 0; bits < (1ULL << ground.size()); bits += 3) {
      const auto mask = MaskFromBits(bits, ground.size());
      double singles = 0.0;
      for (std::size_t e = 0; e < ground.size(); ++e) {
        if (mask[e]) {
          singles += StageCost(ProtectionSet(n, {ground[e]}), instance.initial, instance);
        }
      }
      EXPECT_NEAR(StageCost(FromGroundMask(ground, mask, n), instance.initial, instance),
                  singles, 1e-12);
    }
  }
}

TEST(NodeDurationTest, Cases) {
  Instance instance = PathInstance({1, 0, 1, 0}, 0.5, {1.0, 1.0, 1.0}, UniformPmf(7, 10));
  const EpidemicState& x = instance.initial;
  const auto none = ProtectionSet::Empty(4);
  EXPECT_TRUE(NodeDuration(1, x, ProtectionSet(4, {1}), instance).is_point_mass_at_zero());
  const auto two = NodeDuration(1, x, none, instance);
  EXPECT_NEAR(two.weight, 0.25, 1e-15);
  EXPECT_NEAR(two.alpha(0), 0.75, 1e-15);
  EXPECT_EQ(two.offset, DurationDistribution::Offset::kNewlyInfected);
  const auto infected = NodeDuration(2, x, none, instance);
  EXPECT_EQ(infected.weight, 0.0);
  EXPECT_EQ(infected.alpha(0), 1.0);
  EXPECT_EQ(infected.offset, DurationDistribution::Offset::kCurrentInfected);

  instance.params.beta = {1.0, 1.0, 1.0};
  const auto certain = NodeDuration(3, x, none, instance);
  EXPECT_EQ(certain.weight, 0.0);
  EXPECT_EQ(certain.alpha(0), 1.0);
  EXPECT_NEAR(InfectionProbability(3, x, instance), 1.0, 0.0);
}

TEST(NodeDurationTest, InteriorSusceptibleIsPointMass) {
  const Instance instance = PathInstance({1, 0, 0, 0}, 0.9, {1.0, 1.0, 1.0}, UniformPmf(7, 10));
  EXPECT_EQ(InfectionProbability(3, instance.initial, instance), 0.0);
  EXPECT_TRUE(NodeDuration(3, instance.initial, ProtectionSet::Empty(4), instance)
                  .is_point_mass_at_zero());
}

TEST(RolloutCostTest, SingleEdgeHandValues) {
  constexpr int d = 5;
  constexpr double c = 2.0;
  const Instance none_infected = PathInstance({0, 0}, 1.0, {c}, DeterministicPmf(d));
  const Instance edge = PathInstance({1, 0}, 1.0, {c}, DeterministicPmf(d));
  for (const auto& p : {ProtectionSet::Empty(2), ProtectionSet(2, {1})}) {
    EXPECT_EQ(RolloutCostExact(p, none_infected.initial, none_infected), 0.0);
  }
  EXPECT_NEAR(RolloutCostExact(ProtectionSet(2, {1}), edge.initial, edge), c * (d - 1),
              1e-12);
  EXPECT_NEAR(RolloutCostExact(ProtectionSet::Empty(2), edge.initial, edge), c * 1.0,
              1e-12);
}

TEST(RolloutCostTest, MonteCarloDegenerateCases) {
  const Instance none_infected = PathInstance({0, 0}, 1.0, {2.0}, DeterministicPmf(5));
  const auto zero = RolloutCostMonteCarlo(ProtectionSet::Empty(2), none_infected.initial,
                                          none_infected, 50, 1);
  EXPECT_EQ(zero.estimate, 0.0);
  EXPECT_EQ(zero.std_error, 0.0);
  const Instance edge = PathInstance({1, 0}, 1.0, {2.0}, DeterministicPmf(5));
  const auto mc = RolloutCostMonteCarlo(ProtectionSet(2, {1}), edge.initial, edge, 50, 1);
  EXPECT_EQ(mc.estimate, 8.0);
  EXPECT_EQ(mc.std_error, 0.0);
}

TEST(RolloutCostTest, ExactMatchesMonteCarlo) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Instance instance =
        RandomSmallInstance(seed, {.min_nodes = 10, .max_nodes = 10, .max_ground = 10});
    const int n = instance.graph.num_nodes();
    RandomStream pick(seed, 4);
    const ProtectionSet p(n, RandomSubset(pick, n));
    const double exact = RolloutCostExact(p, instance.initial, instance);
    const auto mc = RolloutCostMonteCarlo(p, instance.initial, instance, 20000, seed);
    EXPECT_NEAR(exact, mc.estimate, 4.0 * mc.std_error + 1e-12) << "seed " << seed;
  }
}

// Protecting every susceptible node leaves only infected durations: each
// edge contributes c E|T_i - T_j| with T = 0 on susceptible endpoints.
TEST(RolloutCostTest, ProtectAllUsesInfectedDurationsOnly) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Instance instance = RandomSmallInstance(seed);
    const EpidemicState& x = instance.initial;
    const ProtectionSet all = ProtectionSet::AllSusceptible(x);
    double direct = 0.0;
    for (int e = 0; e < instance.graph.num_edges(); ++e) {
      const Edge& edge = instance.graph.edge(e);
      auto duration = [&](int i) {
        return x.is_infected(i)
                   ? DurationDistribution::CurrentInfected(instance.chain, x.label(i))
                   : DurationDistribution::PointMassAtZero();
      };
      direct += instance.params.cost[e] *
                ExpectedAbsDiff(duration(edge.u), duration(edge.v));
    }
    EXPECT_NEAR(RolloutCostExact(all, x, instance), direct, 1e-12);
    const auto mc = RolloutCostMonteCarlo(all, x, instance, 20000, seed + 100);
    EXPECT_NEAR(direct, mc.estimate, 4.0 * mc.std_error + 1e-12);
  }
}

// Q is not monotone in protection: a protected neighbour stays susceptible
// while i is infected, so the discordant time d - 1 exceeds the single step
// left when j is infected alongside i.
TEST(RolloutCostTest, ProtectionCanRaiseFutureCost) {
  const Instance edge = PathInstance({1, 0}, 1.0, {1.0}, DeterministicPmf(5));
  EXPECT_GT(RolloutCostExact(ProtectionSet(2, {1}), edge.initial, edge),
            RolloutCostExact(ProtectionSet::Empty(2), edge.initial, edge));
}

TEST(GroundSetTest, Examples) {
  const Graph path(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_TRUE(GroundSet(EpidemicState(4), path).empty());
  EXPECT_EQ(GroundSet(EpidemicState(std::vector<int>{1, 0, 0, 0}), path),
            (std::vector<int>{1}));
  const Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_EQ(GroundSet(EpidemicState(std::vector<int>{2, 0, 0, 0, 0}), star),
            (std::vector<int>{1, 2, 3, 4}));
}

TEST(ObjectiveContextTest, TableAndProbabilityInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance instance = RandomSmallInstance(seed);
    const ObjectiveContext ctx(instance, instance.initial, {.mu = 0.5});
    for (int e = 0; e < instance.graph.num_edges(); ++e) {
      for (double v : ctx.edge_table(e)) ASSERT_GE(v, 0.0);
    }
    const std::vector<int> ground = ctx.ground();
    for (int i = 0; i < instance.graph.num_nodes(); ++i) {
      const double p = ctx.infection_probability(i);
      ASSERT_GE(p, 0.0);
      ASSERT_LE(p, 1.0);
      const bool boundary = std::binary_search(ground.begin(), ground.end(), i);
      if (instance.initial.is_susceptible(i) && !boundary) {
        ASSERT_EQ(p, 0.0);
      }
    }
  }
}

// The table path against the unoptimised StageCost + RolloutCostExact path
// over every subset of the ground set.
TEST(ObjectiveContextTest, MatchesIndependentPath) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance instance = RandomSmallInstance(seed, {.max_ground = 8});
    const int n = instance.graph.num_nodes();
    const EpidemicState& x = instance.initial;
    const std::vector<int> ground = GroundSet(x, instance.graph);
    for (double mu : {0.0, 0.85, 1.0}) {
      const ObjectiveContext ctx(instance, x, {.mu = mu});
      for (std::uint64_t bits = 0; bits < (1ULL << ground.size()); ++bits) {
        const ProtectionSet p = FromGroundMask(ground, MaskFromBits(bits, ground.size()), n);
        const double stage = StageCost(p, x, instance);
        const double rollout = RolloutCostExact(p, x, instance);
        const double h = ctx.Evaluate(p);
        if (mu == 1.0) {
          ASSERT_EQ(h, stage);
        } else if (mu == 0.0) {
          ASSERT_NEAR(h, rollout, 1e-12 * std::max(1.0, rollout));
        } else {
          ASSERT_NEAR(h, mu * stage + (1 - mu) * rollout, 1e-9);
        }
      }
    }
  }
}

TEST(ObjectiveContextTest, InteriorAndInfectedNodesAreIndifferent) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance instance = RandomSmallInstance(seed);
    const int n = instance.graph.num_nodes();
    const ObjectiveContext ctx(instance, instance.initial, {.mu = 0.3});
    const std::vector<int> ground = ctx.ground();
    RandomStream pick(seed, 5);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<bool> mask(n);
      for (int g : ground) mask[g] = pick.Uniform01() < 0.5;
      const double base = ctx.Evaluate(mask);
      for (int i = 0; i < n; ++i) {
        if (std::binary_search(ground.begin(), ground.end(), i) || mask[i]) continue;
        std::vector<bool> with = mask;
        with[i] = true;
        ASSERT_EQ(ctx.Evaluate(with), base) << "seed " << seed << " node " << i;
      }
    }
  }
}

TEST(NormalizedObjectiveTest, ZeroAtEmptyAndOffset) {
  const Instance instance = RandomSmallInstance(3);
  const ObjectiveContext ctx(instance, instance.initial, {.mu = 0.7});
  const NormalizedObjective g(ctx);
  EXPECT_EQ(g.Evaluate(std::vector<bool>(g.size())), 0.0);
  EXPECT_DOUBLE_EQ(g.offset(), ctx.Evaluate(ProtectionSet::Empty(instance.graph.num_nodes())));
  EXPECT_EQ(g.ground(), ctx.ground());
}

TEST(NormalizedObjectiveTest, FastMarginalsMatchPrefixDifferences) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance instance = RandomSmallInstance(seed);
    const ObjectiveContext ctx(instance, instance.initial, {.mu = 0.6});
    const NormalizedObjective g(ctx);
    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    RandomStream rng(seed, 6);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> fast(g.size());
    g.ChainMarginals(order, fast);
    std::vector<bool> members(g.size());
    double previous = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      members[order[k]] = true;
      const double value = g.Evaluate(members);
      ASSERT_NEAR(fast[k], value - previous, 1e-9) << "seed " << seed << " k " << k;
      previous = value;
    }
  }
}

TEST(NormalizedObjectiveTest, SubmodularOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance instance = RandomSmallInstance(seed, {.max_ground = 8});
    for (double mu : {0.0, 0.5, 0.9}) {
      const ObjectiveContext ctx(instance, instance.initial, {.mu = mu});
      const SubmodularityReport report = CheckSubmodular(NormalizedObjective(ctx));
      EXPECT_TRUE(report.ok()) << "seed " << seed << " mu " << mu << " worst "
                               << report.worst_excess;
    }
  }
}

}  // namespace
}  // namespace episfm
