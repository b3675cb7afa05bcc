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

#include "episfm/dynamics.h"

#include "episfm/error.h"

namespace episfm {

EpidemicState Step(const EpidemicState& x, const ProtectionSet& protect,
                   const Instance& instance, RandomStream& rng) {
  const Graph& graph = instance.graph;
  if (x.num_nodes() != graph.num_nodes()) {
    throw ParameterError("state size does not match the graph");
  }
  EpidemicState next = x;
  for (int i = 0; i < x.num_nodes(); ++i) {
    if (x.is_susceptible(i)) {
      bool hit = false;
      for (const Neighbor& nb : graph.neighbors(i)) {
        if (x.is_infected(nb.node) &&
            rng.Uniform01() < instance.params.beta[nb.edge]) {
          hit = true;
        }
      }
      if (hit && !protect.contains(i)) next.set_label(i, 1);
    } else {
      next.set_label(i, instance.chain.SampleNext(x.label(i), rng.Uniform01()));
    }
  }
  return next;
}

std::vector<EpidemicState> RolloutTrajectory(const EpidemicState& x,
                                             const ProtectionSet& first,
                                             const Instance& instance,
                                             std::uint64_t seed,
                                             std::uint64_t run, int max_t) {
  if (max_t < 1) throw ParameterError("max_t must be >= 1");
  std::vector<EpidemicState> path{x};
  for (int t = 0; t < max_t && !IsExtinct(path.back()); ++t) {
    RandomStream rng = StepStream(seed, run, t);
    const ProtectionSet protect =
        t == 0 ? first : ProtectionSet::AllSusceptible(path.back());
    path.push_back(Step(path.back(), protect, instance, rng));
  }
  return path;
}

}  // namespace episfm
