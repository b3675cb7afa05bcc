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

#include "episfm/controller.h"

#include "episfm/dynamics.h"
#include "episfm/error.h"
#include "episfm/objective.h"
#include "episfm/sfm.h"

namespace episfm {
namespace {

struct Action {
  ProtectionSet protect;
  double objective = 0.0;
  std::int64_t iterations = 0;
};

TrajectoryRecord RunLoop(const Instance& instance, const ControllerConfig& config,
                         std::uint64_t seed,
                         const std::function<Action(const EpidemicState&)>& act) {
  config.Validate();
  TrajectoryRecord record;
  EpidemicState x = instance.initial;
  for (int t = 0;; ++t) {
    if (config.record_states) record.states.push_back(x);
    StepRecord row;
    row.t = t;
    row.infected = InfectedCount(x);
    if (row.infected == 0) {
      record.steps.push_back(row);
      record.terminal = Terminal::kExtinct;
      return record;
    }
    Action action = act(x);
    row.protected_count = static_cast<int>(action.protect.size());
    row.stage_cost = StageCost(action.protect, x, instance);
    if (config.record_savings) {
      row.protect_all_cost =
          StageCost(ProtectionSet::AllSusceptible(x), x, instance);
    }
    row.objective = action.objective;
    row.solver_iterations = action.iterations;
    record.steps.push_back(row);
    if (t >= config.max_steps) {
      record.terminal = Terminal::kMaxSteps;
      return record;
    }
    RandomStream rng = StepStream(seed, 0, static_cast<std::uint64_t>(t));
    x = Step(x, action.protect, instance, rng);
  }
}

}  // namespace

void ControllerConfig::Validate() const {
  if (!(mu >= 0.0 && mu <= 1.0)) throw ParameterError("mu must lie in [0, 1]");
  if (!(solver_tol > 0.0)) throw ParameterError("solver_tol must be positive");
  if (!(tail_tol > 0.0)) throw ParameterError("tail_tol must be positive");
  if (max_steps < 0) throw ParameterError("max_steps must be >= 0");
}

Selection SelectProtection(const EpidemicState& x, const Instance& instance,
                           const ControllerConfig& config) {
  config.Validate();
  const ObjectiveContext context(instance, x,
                                 {.mu = config.mu, .tail_tol = config.tail_tol});
  Selection selection;
  selection.diagnostics.ground_size = static_cast<int>(context.ground().size());
  const ProtectionSet none = ProtectionSet::Empty(x.num_nodes());
  selection.diagnostics.empty_objective = context.Evaluate(none);
  if (context.ground().empty()) {
    selection.protect = none;
    selection.diagnostics.objective = selection.diagnostics.empty_objective;
    return selection;
  }
  const NormalizedObjective g(context);
  const MinNormResult result = MinNormPoint(g, {.tol = config.solver_tol});
  selection.protect = ProtectionSet(x.num_nodes(), result.minimal_minimizer);
  selection.diagnostics.iterations = result.iterations;
  selection.diagnostics.objective = result.min_value + g.offset();
  selection.diagnostics.certified_gap = result.certified_gap;
  return selection;
}

TrajectoryRecord RunClosedLoop(const Instance& instance,
                               const ControllerConfig& config, std::uint64_t seed) {
  return RunLoop(instance, config, seed, [&](const EpidemicState& x) {
    Selection s = SelectProtection(x, instance, config);
    return Action{std::move(s.protect), s.diagnostics.objective,
                  s.diagnostics.iterations};
  });
}

TrajectoryRecord RunWithPolicy(const Instance& instance,
                               const ControllerConfig& config, std::uint64_t seed,
                               const Policy& policy) {
  return RunLoop(instance, config, seed, [&](const EpidemicState& x) {
    return Action{policy(x), 0.0, 0};
  });
}

}  // namespace episfm
