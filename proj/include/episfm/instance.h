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

// Problem instances: contact graph, per-edge spreading parameters, recovery
// chain and initial condition, plus their random generation and the on-disk
// instance document.

#ifndef EPISFM_INSTANCE_H_
#define EPISFM_INSTANCE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "episfm/phase_type.h"
#include "episfm/random.h"
#include "episfm/state.h"

namespace episfm {

struct Edge {
  int u = 0;  // u < v
  int v = 0;
  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

struct Neighbor {
  int node = 0;
  int edge = 0;  // index into Graph::edges()
};

// Undirected simple graph. Edges are stored once with u < v, sorted
// lexicographically; an edge's position in that list is its id.
class Graph {
 public:
  Graph() = default;
  // Accepts pairs in either orientation. Throws ParameterError on self-loops,
  // duplicates, or out-of-range endpoints.
  Graph(int num_nodes, std::vector<std::pair<int, int>> edges);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }
  // Sorted by neighbor id.
  const std::vector<Neighbor>& neighbors(int node) const {
    return adjacency_[node];
  }
  bool HasEdge(int a, int b) const;

  bool operator==(const Graph& other) const {
    return num_nodes_ == other.num_nodes_ && edges_ == other.edges_;
  }

 private:
  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// Per-edge infection probability and protection cost, indexed by edge id.
struct SpreadParams {
  std::vector<double> beta;
  std::vector<double> cost;

  // Throws ParameterError unless both vectors cover exactly the graph's edges
  // with beta in [0, 1] and cost >= 0.
  void Validate(const Graph& graph) const;
  bool operator==(const SpreadParams&) const = default;
};

struct Instance {
  Graph graph;
  SpreadParams params;
  PhaseTypeChain chain = PhaseTypeChain::FromPmf(std::vector<double>{1.0});
  EpidemicState initial;
  std::uint64_t seed = 0;

  // Throws ParameterError/InvariantError on any inconsistency.
  void Validate() const;
  bool operator==(const Instance& other) const {
    return graph == other.graph && params == other.params &&
           chain == other.chain && initial == other.initial &&
           seed == other.seed;
  }
};

// Generative parameters for random instances.
struct InstanceSpec {
  int n = 200;
  double edge_prob = 0.01;
  std::vector<int> cost_support = {1, 2, 3};
  // Mass at durations 1..m.
  std::vector<double> recovery_pmf = {0, 0, 0, 0, 0, 0, 0.25, 0.25, 0.25, 0.25};
  double init_infected_frac = 0.1;
  std::uint64_t seed = 1;

  void Validate() const;
};

// Each unordered pair {i, j}, i < j, in lexicographic order, is kept when a
// uniform draw falls below p.
Graph BuildErGraph(int n, double p, RandomStream& rng);

// beta ~ U[0, 1), cost uniform over cost_support, drawn per edge in id order.
SpreadParams SampleParams(const Graph& graph, const std::vector<int>& cost_support,
                          RandomStream& rng);

// round(frac * n) distinct nodes chosen uniformly, all placed in I_1.
EpidemicState SampleInitialState(int n, double init_infected_frac,
                                 RandomStream& rng);

// Bit-identical output for identical specs.
Instance GenerateInstance(const InstanceSpec& spec);

// Versioned JSON document; see docs/instance_format.md.
void SaveInstance(const Instance& instance, std::ostream& out);
std::string SaveInstanceToString(const Instance& instance);
// Throws ParseError (with byte offset for syntax errors) on malformed input.
Instance LoadInstance(std::istream& in);
Instance LoadInstanceFromString(const std::string& text);
Instance LoadInstanceFile(const std::string& path);
void SaveInstanceFile(const Instance& instance, const std::string& path);

}  // namespace episfm

#endif  // EPISFM_INSTANCE_H_
