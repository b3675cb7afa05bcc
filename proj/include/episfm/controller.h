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

// Receding-horizon protection controller: at every step, minimize h over the
// boundary susceptible nodes and apply the minimal minimizer.

#ifndef EPISFM_CONTROLLER_H_
#define EPISFM_CONTROLLER_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "episfm/instance.h"
#include "episfm/state.h"

namespace episfm {

struct ControllerConfig {
  double mu = 0.85;
  double solver_tol = 1e-9;
  double tail_tol = 1e-12;
  int max_steps = 200;
  // Compute the protect-all comparator cost per step.
  bool record_savings = true;
  // Keep X(0), X(1), ... in the trajectory record.
  bool record_states = false;

  void Validate() const;
};

struct SelectionDiagnostics {
  int ground_size = 0;
  std::int64_t iterations = 0;
  double objective = 0.0;        // h(P*)
  double empty_objective = 0.0;  // h(empty)
  double certified_gap = 0.0;
};

struct Selection {
  ProtectionSet protect;
  SelectionDiagnostics diagnostics;
};

// Minimal minimizer of h over GroundSet(x). Returns the empty set without
// running the solver when the ground set is empty. Solver failures propagate
// as MinNormFailure.
Selection SelectProtection(const EpidemicState& x, const Instance& instance,
                           const ControllerConfig& config);

struct StepRecord {
  int t = 0;
  int infected = 0;
  int protected_count = 0;
  double stage_cost = 0.0;
  double protect_all_cost = 0.0;
  double objective = 0.0;
  std::int64_t solver_iterations = 0;
};

enum class Terminal { kExtinct, kMaxSteps };

struct TrajectoryRecord {
  std::vector<StepRecord> steps;
  Terminal terminal = Terminal::kExtinct;
  std::vector<EpidemicState> states;  // only with record_states
};

// Repeats observe / select / step from instance.initial until extinction or
// until max_steps transitions have been taken. Row t describes X(t) and the
// action chosen there; the extinct row carries zero costs. Transition t uses
// StepStream(seed, 0, t).
TrajectoryRecord RunClosedLoop(const Instance& instance,
                               const ControllerConfig& config, std::uint64_t seed);

// Same loop with an arbitrary policy in place of SelectProtection; the
// objective column is left at zero.
using Policy = std::function<ProtectionSet(const EpidemicState&)>;
TrajectoryRecord RunWithPolicy(const Instance& instance,
                               const ControllerConfig& config, std::uint64_t seed,
                               const Policy& policy);

}  // namespace episfm

#endif  // EPISFM_CONTROLLER_H_
