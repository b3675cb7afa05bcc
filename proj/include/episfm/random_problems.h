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

// Seeded generators of small problems for property checks.

#ifndef EPISFM_RANDOM_PROBLEMS_H_
#define EPISFM_RANDOM_PROBLEMS_H_

#include <cstdint>
#include <memory>

#include "episfm/instance.h"
#include "episfm/random.h"
#include "episfm/sfm.h"

namespace episfm {

// Either a hazard chain for a random pmf or a dense sub-stochastic matrix
// whose rows all absorb with probability >= 0.05.
PhaseTypeChain RandomChain(RandomStream& rng, int max_phases);

struct SmallInstanceOptions {
  int min_nodes = 4;
  int max_nodes = 12;
  int max_phases = 6;
  int max_ground = 10;
  int min_ground = 1;
};

// Random graph, beta ~ U[0, 1), integer costs in {0..3}, random chain and a
// random mixed state whose boundary set size lies in [min_ground,
// max_ground].
Instance RandomSmallInstance(std::uint64_t seed,
                             const SmallInstanceOptions& options = {});

// Weighted cut function plus a modular term plus a concave function of
// cardinality; submodular with f(empty) = 0.
std::unique_ptr<SetFunction> RandomCutPlusModular(std::uint64_t seed, int size);

// f(W) = A [a not in W] xor B [b not in W] on ground {0..size-1}. Note
// f(empty) = A xor B, so normalize before minimizing when A != B.
std::unique_ptr<SetFunction> XorFunction(int size, int a, int b, bool A, bool B);

}  // namespace episfm

#endif  // EPISFM_RANDOM_PROBLEMS_H_
