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

#include <cmath>

#include "episfm/dynamics.h"
#include "episfm/error.h"

namespace episfm {
namespace {

double InfectedNeighborCost(int node, const EpidemicState& x, const Instance& instance) {
  double total = 0.0;
  for (const Neighbor& nb : instance.graph.neighbors(node)) {
    if (x.is_infected(nb.node)) total += instance.params.cost[nb.edge];
  }
  return total;
}

double XorCost(const EpidemicState& x, const Instance& instance) {
  double total = 0.0;
  for (int e = 0; e < instance.graph.num_edges(); ++e) {
    const Edge& edge = instance.graph.edge(e);
    if (x.is_susceptible(edge.u) != x.is_susceptible(edge.v)) {
      total += instance.params.cost[e];
    }
  }
  return total;
}

EpidemicState StepProtectingAll(const EpidemicState& x, const Instance& instance,
                                RandomStream& rng) {
  return Step(x, ProtectionSet::AllSusceptible(x), instance, rng);
}

}  // namespace

double StageCost(const ProtectionSet& protect, const EpidemicState& x,
                 const Instance& instance) {
  double total = 0.0;
  for (int i : protect.members()) {
    if (x.is_susceptible(i)) total += InfectedNeighborCost(i, x, instance);
  }
  return total;
}

double InfectionProbability(int node, const EpidemicState& x,
                            const Instance& instance) {
  if (x.is_infected(node)) return 0.0;
  double escape = 1.0;
  for (const Neighbor& nb : instance.graph.neighbors(node)) {
    if (x.is_infected(nb.node)) escape *= 1.0 - instance.params.beta[nb.edge];
  }
  return 1.0 - escape;
}

DurationDistribution NodeDuration(int node, const EpidemicState& x,
                                  const ProtectionSet& protect,
                                  const Instance& instance) {
  if (x.is_infected(node)) {
    return DurationDistribution::CurrentInfected(instance.chain, x.label(node));
  }
  if (protect.contains(node)) return DurationDistribution::PointMassAtZero();
  return DurationDistribution::NewlyInfected(
      instance.chain, InfectionProbability(node, x, instance));
}

double RolloutCostExact(const ProtectionSet& protect, const EpidemicState& x,
                        const Instance& instance, double tail_tol) {
  double total = 0.0;
  for (int e = 0; e < instance.graph.num_edges(); ++e) {
    const Edge& edge = instance.graph.edge(e);
    const DurationDistribution du = NodeDuration(edge.u, x, protect, instance);
    const DurationDistribution dv = NodeDuration(edge.v, x, protect, instance);
    total += instance.params.cost[e] * ExpectedAbsDiff(du, dv, tail_tol);
  }
  return total;
}

MonteCarloEstimate RolloutCostMonteCarlo(const ProtectionSet& protect,
                                         const EpidemicState& x,
                                         const Instance& instance,
                                         std::int64_t n_samples,
                                         std::uint64_t seed) {
  if (n_samples < 1) throw ParameterError("n_samples must be >= 1");
  if (IsExtinct(x)) return {};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t s = 0; s < n_samples; ++s) {
    const auto run = static_cast<std::uint64_t>(s);
    RandomStream first = StepStream(seed, run, 0);
    EpidemicState current = Step(x, protect, instance, first);
    double cost = 0.0;
    for (std::uint64_t t = 1;; ++t) {
      cost += XorCost(current, instance);
      if (IsExtinct(current)) break;
      RandomStream rng = StepStream(seed, run, t);
      current = StepProtectingAll(current, instance, rng);
    }
    sum += cost;
    sum_sq += cost * cost;
  }
  const auto count = static_cast<double>(n_samples);
  const double mean = sum / count;
  double std_error = 0.0;
  if (n_samples > 1) {
    const double variance =
        std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
    std_error = std::sqrt(variance / count);
  }
  return {mean, std_error};
}

std::vector<int> GroundSet(const EpidemicState& x, const Graph& graph) {
  std::vector<int> ground;
  for (int i = 0; i < x.num_nodes(); ++i) {
    if (!x.is_susceptible(i)) continue;
    for (const Neighbor& nb : graph.neighbors(i)) {
      if (x.is_infected(nb.node)) {
        ground.push_back(i);
        break;
      }
    }
  }
  return ground;
}

ObjectiveContext::ObjectiveContext(const Instance& instance, EpidemicState x,
                                   ObjectiveOptions options)
    : instance_(&instance), state_(std::move(x)), options_(options) {
  if (!(options_.mu >= 0.0 && options_.mu <= 1.0)) {
    throw ParameterError("mu must lie in [0, 1]");
  }
  if (!(options_.tail_tol > 0.0)) throw ParameterError("tail_tol must be positive");
  const int n = instance.graph.num_nodes();
  if (state_.num_nodes() != n) {
    throw ParameterError("state size does not match the graph");
  }
  ground_ = GroundSet(state_, instance.graph);

  stage_weight_.assign(n, 0.0);
  infection_prob_.assign(n, 0.0);
  // durations[i][protected?]
  std::vector<std::array<DurationDistribution, 2>> durations(n);
  const ProtectionSet none = ProtectionSet::Empty(n);
  for (int i = 0; i < n; ++i) {
    durations[i][0] = NodeDuration(i, state_, none, instance);
    if (state_.is_susceptible(i)) {
      stage_weight_[i] = InfectedNeighborCost(i, state_, instance);
      infection_prob_[i] = InfectionProbability(i, state_, instance);
      durations[i][1] = DurationDistribution::PointMassAtZero();
    } else {
      durations[i][1] = durations[i][0];
    }
  }

  table_.resize(instance.graph.num_edges());
  for (int e = 0; e < instance.graph.num_edges(); ++e) {
    const Edge& edge = instance.graph.edge(e);
    const double c = instance.params.cost[e];
    // Protection changes a node's duration only if it is a boundary node.
    const bool u_varies = infection_prob_[edge.u] > 0.0;
    const bool v_varies = infection_prob_[edge.v] > 0.0;
    for (int pu = 0; pu < 2; ++pu) {
      for (int pv = 0; pv < 2; ++pv) {
        if ((pu && !u_varies) || (pv && !v_varies)) {
          table_[e][Index(pu, pv)] = table_[e][Index(pu && u_varies, pv && v_varies)];
          continue;
        }
        table_[e][Index(pu, pv)] =
            c == 0.0 ? 0.0
                     : c * ExpectedAbsDiff(durations[edge.u][pu],
                                           durations[edge.v][pv], options_.tail_tol);
      }
    }
  }
}

double ObjectiveContext::StageCost(const std::vector<bool>& mask) const {
  double total = 0.0;
  for (int i : ground_) {
    if (mask[i]) total += stage_weight_[i];
  }
  return total;
}

double ObjectiveContext::RolloutCost(const std::vector<bool>& mask) const {
  double total = 0.0;
  const Graph& graph = instance_->graph;
  for (int e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    total += table_[e][Index(EffectivelyProtected(edge.u, mask),
                             EffectivelyProtected(edge.v, mask))];
  }
  return options_.negate_rollout ? -total : total;
}

double ObjectiveContext::Evaluate(const std::vector<bool>& mask) const {
  if (static_cast<int>(mask.size()) != state_.num_nodes()) {
    throw ParameterError("protection mask size does not match the graph");
  }
  return options_.mu * StageCost(mask) + (1.0 - options_.mu) * RolloutCost(mask);
}

double ObjectiveContext::Evaluate(const ProtectionSet& protect) const {
  std::vector<bool> mask(state_.num_nodes(), false);
  for (int i : protect.members()) mask[i] = true;
  return Evaluate(mask);
}

NormalizedObjective::NormalizedObjective(const ObjectiveContext& context)
    : SetFunction(context.ground()),
      context_(&context),
      empty_value_(context.Evaluate(
          std::vector<bool>(context.state().num_nodes(), false))) {}

std::vector<bool> NormalizedObjective::NodeMask(
    const std::vector<bool>& members) const {
  std::vector<bool> mask(context_->state().num_nodes(), false);
  for (std::size_t k = 0; k < size(); ++k) {
    if (members[k]) mask[ground()[k]] = true;
  }
  return mask;
}

double NormalizedObjective::Evaluate(const std::vector<bool>& members) const {
  return context_->Evaluate(NodeMask(members)) - empty_value_;
}

void NormalizedObjective::ChainMarginals(std::span<const std::size_t> order,
                                         std::span<double> out) const {
  const ObjectiveContext& ctx = *context_;
  const Graph& graph = ctx.instance().graph;
  const double mu = ctx.mu();
  const double q_weight = (1.0 - mu) * (ctx.options_.negate_rollout ? -1.0 : 1.0);
  std::vector<bool> mask(ctx.state().num_nodes(), false);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int node = ground()[order[k]];
    double delta_q = 0.0;
    for (const Neighbor& nb : graph.neighbors(node)) {
      const Edge& edge = graph.edge(nb.edge);
      const bool other = ctx.EffectivelyProtected(nb.node, mask);
      const auto& row = ctx.table_[nb.edge];
      if (edge.u == node) {
        delta_q += row[ObjectiveContext::Index(true, other)] -
                   row[ObjectiveContext::Index(false, other)];
      } else {
        delta_q += row[ObjectiveContext::Index(other, true)] -
                   row[ObjectiveContext::Index(other, false)];
      }
    }
    out[k] = mu * ctx.stage_weight_[node] + q_weight * delta_q;
    mask[node] = true;
  }
}

}  // namespace episfm
