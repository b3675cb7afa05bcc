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


// Small builders and hand-rolled generators shared by the unit tests.

#ifndef EPISFM_TESTS_TEST_UTIL_H_
#define EPISFM_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "episfm/instance.h"
#include "episfm/random.h"
#include "episfm/sfm.h"
#include "episfm/state.h"

namespace episfm::testing {

// Uniform{lo..hi} recovery pmf over durations 1..hi.
inline std::vector<double> UniformPmf(int lo, int hi) {
  std::vector<double> pmf(hi, 0.0);
  for (int d = lo; d <= hi; ++d) pmf[d - 1] = 1.0 / (hi - lo + 1);
  return pmf;
}

// Recovery exactly d steps after infection.
inline std::vector<double> DeterministicPmf(int d) {
  std::vector<double> pmf(d, 0.0);
  pmf[d - 1] = 1.0;
  return pmf;
}

// Path 0 - 1 - ... - (n-1) with shared beta and per-edge costs.
inline Instance PathInstance(std::vector<int> labels, double beta,
                             std::vector<double> costs,
                             const std::vector<double>& pmf) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.push_back({i, i + 1});
  Instance instance;
  instance.graph = Graph(n, pairs);
  instance.params.beta.assign(n - 1, beta);
  instance.params.cost = std::move(costs);
  instance.chain = PhaseTypeChain::FromPmf(pmf);
  instance.initial = EpidemicState(std::move(labels));
  return instance;
}

inline std::vector<bool> MaskFromBits(std::uint64_t bits, std::size_t n) {
  std::vector<bool> mask(n);
  for (std::size_t e = 0; e < n; ++e) mask[e] = (bits >> e) & 1U;
  return mask;
}

inline std::vector<int> RandomSubset(RandomStream& rng, int n, double p = 0.5) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (rng.Uniform01() < p) out.push_back(i);
  }
  return out;
}

}  // namespace episfm::testing

#endif  // EPISFM_TESTS_TEST_UTIL_H_
