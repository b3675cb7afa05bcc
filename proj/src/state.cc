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

#include "episfm/state.h"

#include <algorithm>
#include <string>

#include "episfm/error.h"

namespace episfm {

std::vector<int> SusceptibleSet(const EpidemicState& x) {
  std::vector<int> out;
  for (int i = 0; i < x.num_nodes(); ++i) {
    if (x.is_susceptible(i)) out.push_back(i);
  }
  return out;
}

std::vector<int> InfectedSet(const EpidemicState& x) {
  std::vector<int> out;
  for (int i = 0; i < x.num_nodes(); ++i) {
    if (x.is_infected(i)) out.push_back(i);
  }
  return out;
}

int InfectedCount(const EpidemicState& x) {
  return static_cast<int>(std::count_if(x.labels().begin(), x.labels().end(),
                                        [](int l) { return l != 0; }));
}

bool IsExtinct(const EpidemicState& x) { return InfectedCount(x) == 0; }

ProtectionSet::ProtectionSet(int num_nodes, std::vector<int> members)
    : members_(std::move(members)), mask_(num_nodes, false) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (int m : members_) {
    if (m < 0 || m >= num_nodes) {
      throw ParameterError("protected node " + std::to_string(m) +
                           " is not in the graph");
    }
    mask_[m] = true;
  }
}

ProtectionSet ProtectionSet::AllSusceptible(const EpidemicState& x) {
  return ProtectionSet(x.num_nodes(), SusceptibleSet(x));
}

}  // namespace episfm
