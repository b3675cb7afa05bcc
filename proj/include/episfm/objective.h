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

// Costs of a protection set P at state X:
//
//   C(P|X)  stage cost: sum over protected susceptible i and infected
//           neighbors j of c_ij.
//   Q(P|X)  rollout cost: expected sum over tau >= 1 and edges {i,j} of
//           c_ij * [exactly one of i, j susceptible at tau], when P is
//           protected now and every susceptible node is protected afterwards.
//   h(P)    mu * C + (1 - mu) * Q.
//
// Under the rollout nobody is infected after relative time 1, so node i is
// infected exactly at relative times 1..T_i with the T_i independent, and
// each edge contributes c_ij * E|T_i - T_j| to Q.

#ifndef EPISFM_OBJECTIVE_H_
#define EPISFM_OBJECTIVE_H_

#include <array>
#include <cstdint>
#include <vector>

#include "episfm/instance.h"
#include "episfm/phase_type.h"
#include "episfm/sfm.h"
#include "episfm/state.h"

namespace episfm {

double StageCost(const ProtectionSet& protect, const EpidemicState& x,
                 const Instance& instance);

// 1 - prod over infected neighbors j of (1 - beta_ij); 0 for infected nodes.
double InfectionProbability(int node, const EpidemicState& x,
                            const Instance& instance);

// Law of the number of future steps `node` spends infected under the rollout
// measure induced by protecting `protect` now.
DurationDistribution NodeDuration(int node, const EpidemicState& x,
                                  const ProtectionSet& protect,
                                  const Instance& instance);

// Direct per-edge evaluation of Q without any caching.
double RolloutCostExact(const ProtectionSet& protect, const EpidemicState& x,
                        const Instance& instance, double tail_tol = 1e-12);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Averages the realized rollout cost over n_samples simulated rollouts;
// sample s uses the streams StepStream(seed, s, t).
MonteCarloEstimate RolloutCostMonteCarlo(const ProtectionSet& protect,
                                         const EpidemicState& x,
                                         const Instance& instance,
                                         std::int64_t n_samples,
                                         std::uint64_t seed);

// Susceptible nodes with at least one infected neighbor, ascending. Adding
// any other susceptible node to P leaves h unchanged.
std::vector<int> GroundSet(const EpidemicState& x, const Graph& graph);

struct ObjectiveOptions {
  double mu = 0.5;
  double tail_tol = 1e-12;
  // Mutation hook for the verification suite: flips the sign of Q.
  bool negate_rollout = false;
};

// Precomputed evaluator for h at a fixed state. Each edge stores its Q
// contribution for the four (endpoint protected?) combinations, so an
// evaluation is O(|E|). Keeps references to `instance`.
class ObjectiveContext {
 public:
  ObjectiveContext(const Instance& instance, EpidemicState x,
                   ObjectiveOptions options);

  const Instance& instance() const { return *instance_; }
  const EpidemicState& state() const { return state_; }
  double mu() const { return options_.mu; }
  const std::vector<int>& ground() const { return ground_; }

  // Protection status only matters for susceptible nodes; entries for other
  // nodes are ignored. mask has one entry per node.
  double StageCost(const std::vector<bool>& mask) const;
  double RolloutCost(const std::vector<bool>& mask) const;
  double Evaluate(const std::vector<bool>& mask) const;
  double Evaluate(const ProtectionSet& protect) const;

  // Stage-cost weight of protecting `node`.
  double stage_weight(int node) const { return stage_weight_[node]; }
  const std::array<double, 4>& edge_table(int edge) const { return table_[edge]; }
  double infection_probability(int node) const { return infection_prob_[node]; }

 private:
  static int Index(bool u_protected, bool v_protected) {
    return (u_protected ? 2 : 0) + (v_protected ? 1 : 0);
  }
  bool EffectivelyProtected(int node, const std::vector<bool>& mask) const {
    return state_.is_susceptible(node) && mask[node];
  }

  friend class NormalizedObjective;

  const Instance* instance_;
  EpidemicState state_;
  ObjectiveOptions options_;
  std::vector<int> ground_;
  std::vector<double> stage_weight_;
  std::vector<double> infection_prob_;
  std::vector<std::array<double, 4>> table_;  // already scaled by c_ij
};

// g(W) = h(W) - h(empty) over the context's ground set, with O(|E|) greedy
// marginals.
class NormalizedObjective : public SetFunction {
 public:
  explicit NormalizedObjective(const ObjectiveContext& context);

  double Evaluate(const std::vector<bool>& members) const override;
  void ChainMarginals(std::span<const std::size_t> order,
                      std::span<double> out) const override;

  double offset() const { return empty_value_; }
  // Node-level protection mask for a subset of ground positions.
  std::vector<bool> NodeMask(const std::vector<bool>& members) const;

 private:
  const ObjectiveContext* context_;
  double empty_value_;
};

}  // namespace episfm

#endif  // EPISFM_OBJECTIVE_H_
