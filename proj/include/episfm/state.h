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

#ifndef EPISFM_STATE_H_
#define EPISFM_STATE_H_

#include <cstddef>
#include <utility>
#include <vector>

namespace episfm {

// Compartment label per node: 0 is S, k >= 1 is I_k. A single label per node
// makes the one-compartment-at-a-time invariant structural.
class EpidemicState {
 public:
  static constexpr int kSusceptible = 0;

  EpidemicState() = default;
  explicit EpidemicState(int num_nodes) : labels_(num_nodes, kSusceptible) {}
  explicit EpidemicState(std::vector<int> labels) : labels_(std::move(labels)) {}

  int num_nodes() const { return static_cast<int>(labels_.size()); }
  int label(int node) const { return labels_[node]; }
  void set_label(int node, int label) { labels_[node] = label; }
  bool is_susceptible(int node) const { return labels_[node] == kSusceptible; }
  bool is_infected(int node) const { return labels_[node] != kSusceptible; }
  const std::vector<int>& labels() const { return labels_; }

  bool operator==(const EpidemicState&) const = default;

 private:
  std::vector<int> labels_;
};

std::vector<int> SusceptibleSet(const EpidemicState& x);
std::vector<int> InfectedSet(const EpidemicState& x);
int InfectedCount(const EpidemicState& x);
bool IsExtinct(const EpidemicState& x);

// Nodes shielded for one step. Members are kept sorted and unique.
class ProtectionSet {
 public:
  ProtectionSet() = default;
  // Throws ParameterError if a member lies outside [0, num_nodes).
  ProtectionSet(int num_nodes, std::vector<int> members);

  static ProtectionSet Empty(int num_nodes) { return ProtectionSet(num_nodes, {}); }
  static ProtectionSet AllSusceptible(const EpidemicState& x);

  bool contains(int node) const {
    return node < static_cast<int>(mask_.size()) && mask_[node];
  }
  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool operator==(const ProtectionSet& other) const {
    return members_ == other.members_;
  }

 private:
  std::vector<int> members_;
  std::vector<bool> mask_;
};

}  // namespace episfm

#endif  // EPISFM_STATE_H_
