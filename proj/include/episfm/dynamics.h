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

// Stochastic transition law of the generalized SIS process under a protection
// set, and the protect-everyone-afterwards rollout used to define the
// look-ahead cost.

#ifndef EPISFM_DYNAMICS_H_
#define EPISFM_DYNAMICS_H_

#include <cstdint>
#include <vector>

#include "episfm/instance.h"
#include "episfm/random.h"
#include "episfm/state.h"

namespace episfm {

// One synchronous transition. Draw order is fixed: nodes ascending; a
// susceptible node draws one uniform per infected neighbor (ascending
// neighbor id) whether or not it is protected, and an infected node draws one
// uniform for its phase move. All draws read the time-t state.
EpidemicState Step(const EpidemicState& x, const ProtectionSet& protect,
                   const Instance& instance, RandomStream& rng);

// Stream used for transition t of run `run` under master seed `seed`.
inline RandomStream StepStream(std::uint64_t seed, std::uint64_t run,
                               std::uint64_t t) {
  return RandomStream(seed, run, t);
}

// States X(0), X(1), ... where the first transition protects `first` and every
// later transition protects all susceptible nodes. Stops after the first
// extinct state or once max_t transitions have been taken.
std::vector<EpidemicState> RolloutTrajectory(const EpidemicState& x,
                                             const ProtectionSet& first,
                                             const Instance& instance,
                                             std::uint64_t seed,
                                             std::uint64_t run, int max_t);

}  // namespace episfm

#endif  // EPISFM_DYNAMICS_H_
