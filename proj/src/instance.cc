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

#include "episfm/instance.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "episfm/error.h"

namespace episfm {
namespace {

constexpr const char* kFormatName = "episfm-instance";
constexpr int kFormatVersion = 1;

using Json = nlohmann::json;

}  // namespace

Graph::Graph(int num_nodes, std::vector<std::pair<int, int>> edges)
    : num_nodes_(num_nodes), adjacency_(std::max(num_nodes, 0)) {
  if (num_nodes < 0) throw ParameterError("node count must be >= 0");
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_nodes || b >= num_nodes) {
      throw ParameterError("edge {" + std::to_string(a) + "," +
                           std::to_string(b) + "} has an endpoint out of range");
    }
    if (a == b) {
      throw ParameterError("self-loop at node " + std::to_string(a));
    }
    edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end());
      dup != edges_.end()) {
    throw ParameterError("duplicate edge {" + std::to_string(dup->u) + "," +
                         std::to_string(dup->v) + "}");
  }
  for (int id = 0; id < num_edges(); ++id) {
    adjacency_[edges_[id].u].push_back({edges_[id].v, id});
    adjacency_[edges_[id].v].push_back({edges_[id].u, id});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

bool Graph::HasEdge(int a, int b) const {
  const Edge key{std::min(a, b), std::max(a, b)};
  return std::binary_search(edges_.begin(), edges_.end(), key);
}

void SpreadParams::Validate(const Graph& graph) const {
  const auto m = static_cast<std::size_t>(graph.num_edges());
  if (beta.size() != m || cost.size() != m) {
    throw ParameterError("spreading parameters must cover exactly the edges");
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (!(beta[e] >= 0.0 && beta[e] <= 1.0)) {
      throw ParameterError("beta on edge " + std::to_string(e) +
                           " is outside [0, 1]");
    }
    if (!(cost[e] >= 0.0) || !std::isfinite(cost[e])) {
      throw ParameterError("cost on edge " + std::to_string(e) +
                           " must be finite and >= 0");
    }
  }
}

void Instance::Validate() const {
  params.Validate(graph);
  if (!chain.absorption_certain()) {
    throw InvariantError("recovery chain does not absorb with certainty");
  }
  if (initial.num_nodes() != graph.num_nodes()) {
    throw ParameterError("initial state size does not match the graph");
  }
  for (int label : initial.labels()) {
    if (label < 0 || label > chain.num_phases()) {
      throw ParameterError("initial state label " + std::to_string(label) +
                           " is not a compartment");
    }
  }
}

void InstanceSpec::Validate() const {
  if (n < 1) throw ParameterError("n must be >= 1");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw ParameterError("edge_prob must lie in [0, 1]");
  }
  if (!(init_infected_frac >= 0.0 && init_infected_frac <= 1.0)) {
    throw ParameterError("init_infected_frac must lie in [0, 1]");
  }
  if (cost_support.empty()) throw ParameterError("cost_support is empty");
  for (int c : cost_support) {
    if (c < 0) throw ParameterError("cost_support entries must be >= 0");
  }
  // Throws on a bad pmf.
  PhaseTypeChain::FromPmf(recovery_pmf);
}

Graph BuildErGraph(int n, double p, RandomStream& rng) {
  if (n < 1) throw ParameterError("n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("edge probability must lie in [0, 1]");
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.Uniform01() < p) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

SpreadParams SampleParams(const Graph& graph, const std::vector<int>& cost_support,
                          RandomStream& rng) {
  if (cost_support.empty()) throw ParameterError("cost_support is empty");
  for (int c : cost_support) {
    if (c < 0) throw ParameterError("cost_support entries must be >= 0");
  }
  SpreadParams params;
  params.beta.reserve(graph.num_edges());
  params.cost.reserve(graph.num_edges());
  for (int e = 0; e < graph.num_edges(); ++e) {
    params.beta.push_back(rng.Uniform01());
    params.cost.push_back(cost_support[rng.UniformIndex(cost_support.size())]);
  }
  return params;
}

EpidemicState SampleInitialState(int n, double init_infected_frac,
                                 RandomStream& rng) {
  if (!(init_infected_frac >= 0.0 && init_infected_frac <= 1.0)) {
    throw ParameterError("init_infected_frac must lie in [0, 1]");
  }
  const auto k = static_cast<int>(std::llround(init_infected_frac * n));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Partial Fisher-Yates.
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.UniformIndex(n - i));
    std::swap(order[i], order[j]);
  }
  EpidemicState state(n);
  for (int i = 0; i < k; ++i) state.set_label(order[i], 1);
  return state;
}

Instance GenerateInstance(const InstanceSpec& spec) {
  spec.Validate();
  RandomStream graph_rng(spec.seed, 0);
  RandomStream param_rng(spec.seed, 1);
  RandomStream state_rng(spec.seed, 2);
  Instance instance;
  instance.graph = BuildErGraph(spec.n, spec.edge_prob, graph_rng);
  instance.params = SampleParams(instance.graph, spec.cost_support, param_rng);
  instance.chain = PhaseTypeChain::FromPmf(spec.recovery_pmf);
  instance.initial = SampleInitialState(spec.n, spec.init_infected_frac, state_rng);
  instance.seed = spec.seed;
  return instance;
}

void SaveInstance(const Instance& instance, std::ostream& out) {
  const auto dump = [](const Json& j) { return j.dump(); };
  out << "{\n";
  out << "  \"format\": " << dump(kFormatName) << ",\n";
  out << "  \"version\": " << kFormatVersion << ",\n";
  out << "  \"seed\": " << dump(instance.seed) << ",\n";
  out << "  \"num_nodes\": " << instance.graph.num_nodes() << ",\n";
  out << "  \"edges\": [";
  for (int e = 0; e < instance.graph.num_edges(); ++e) {
    const Edge& edge = instance.graph.edge(e);
    out << (e == 0 ? "\n" : ",\n") << "    "
        << dump(Json::array({edge.u, edge.v, instance.params.beta[e],
                             instance.params.cost[e]}));
  }
  out << (instance.graph.num_edges() > 0 ? "\n  ],\n" : "],\n");
  out << "  \"recovery_chain\": [";
  const Eigen::MatrixXd& m = instance.chain.transitions();
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    Json row = Json::array();
    for (Eigen::Index l = 0; l < m.cols(); ++l) row.push_back(m(k, l));
    out << (k == 0 ? "\n" : ",\n") << "    " << dump(row);
  }
  out << "\n  ],\n";
  out << "  \"initial_state\": " << dump(instance.initial.labels()) << "\n";
  out << "}\n";
}

std::string SaveInstanceToString(const Instance& instance) {
  std::ostringstream out;
  SaveInstance(instance, out);
  return out.str();
}

Instance LoadInstanceFromString(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what(),
                     e.byte);
  }

  try {
    if (!doc.is_object() || doc.value("format", "") != kFormatName) {
      throw ParseError("not an episfm instance document", std::nullopt);
    }
    const int version = doc.at("version").get<int>();
    if (version != kFormatVersion) {
      throw ParseError("unsupported instance version " + std::to_string(version),
                       std::nullopt);
    }
    Instance instance;
    instance.seed = doc.at("seed").get<std::uint64_t>();
    const int n = doc.at("num_nodes").get<int>();

    const Json& edges = doc.at("edges");
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::pair<double, double>> values;
    for (const Json& row : edges) {
      if (!row.is_array() || row.size() != 4) {
        throw ParseError("edge entries must be [u, v, beta, cost]", std::nullopt);
      }
      pairs.emplace_back(row[0].get<int>(), row[1].get<int>());
      values.emplace_back(row[2].get<double>(), row[3].get<double>());
    }
    instance.graph = Graph(n, pairs);
    instance.params.beta.assign(pairs.size(), 0.0);
    instance.params.cost.assign(pairs.size(), 0.0);
    const auto& sorted = instance.graph.edges();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const Edge key{std::min(pairs[k].first, pairs[k].second),
                     std::max(pairs[k].first, pairs[k].second)};
      const auto id = std::lower_bound(sorted.begin(), sorted.end(), key) -
                      sorted.begin();
      instance.params.beta[id] = values[k].first;
      instance.params.cost[id] = values[k].second;
    }

    const Json& chain = doc.at("recovery_chain");
    const auto p = static_cast<Eigen::Index>(chain.size());
    Eigen::MatrixXd m(p, p);
    for (Eigen::Index k = 0; k < p; ++k) {
      const Json& row = chain.at(k);
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != p) {
        throw ParseError("recovery_chain must be a square matrix", std::nullopt);
      }
      for (Eigen::Index l = 0; l < p; ++l) m(k, l) = row.at(l).get<double>();
    }
    instance.chain = PhaseTypeChain(std::move(m));
    instance.initial = EpidemicState(doc.at("initial_state").get<std::vector<int>>());
    instance.Validate();
    return instance;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid instance document: ") + e.what(),
                     std::nullopt);
  } catch (const ParameterError& e) {
    throw ParseError(std::string("invalid instance document: ") + e.what(),
                     std::nullopt);
  } catch (const InvariantError& e) {
    throw ParseError(std::string("invalid instance document: ") + e.what(),
                     std::nullopt);
  }
}

Instance LoadInstance(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  return LoadInstanceFromString(text);
}

Instance LoadInstanceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open instance file " + path);
  return LoadInstance(in);
}

void SaveInstanceFile(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write instance file " + path);
  SaveInstance(instance, out);
  if (!out) throw IoError("error writing instance file " + path);
}

}  // namespace episfm
