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

#include "episfm/random_problems.h"

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "episfm/error.h"
#include "episfm/objective.h"

namespace episfm {

PhaseTypeChain RandomChain(RandomStream& rng, int max_phases) {
  const int p = 1 + static_cast<int>(rng.UniformIndex(max_phases));
  if (rng.Uniform01() < 0.5) {
    std::vector<double> pmf(p);
    double total = 0.0;
    for (double& m : pmf) {
      m = rng.Uniform01() < 0.3 ? 0.0 : rng.Uniform01();
      total += m;
    }
    if (total == 0.0) {
      pmf.back() = 1.0;
      total = 1.0;
    }
    for (double& m : pmf) m /= total;
    // Renormalizing can leave the sum a few ulps off one.
    pmf.back() += 1.0 - std::accumulate(pmf.begin(), pmf.end(), 0.0);
    if (pmf.back() < 0.0) pmf.back() = 0.0;
    return PhaseTypeChain::FromPmf(pmf);
  }
  Eigen::MatrixXd m(p, p);
  for (int k = 0; k < p; ++k) {
    std::vector<double> w(p + 1);
    double total = 0.0;
    for (double& x : w) {
      x = rng.Uniform01();
      total += x;
    }
    const double absorb = 0.05 + 0.95 * w[p] / total;
    for (int l = 0; l < p; ++l) m(k, l) = (1.0 - absorb) * w[l] / (total - w[p]);
  }
  return PhaseTypeChain(std::move(m));
}

Instance RandomSmallInstance(std::uint64_t seed,
                             const SmallInstanceOptions& options) {
  if (options.min_nodes < 2 || options.max_nodes < options.min_nodes) {
    throw ParameterError("bad node range");
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    RandomStream rng(seed, 0x51, attempt);
    const int n = options.min_nodes +
                  static_cast<int>(rng.UniformIndex(options.max_nodes -
                                                    options.min_nodes + 1));
    const double edge_prob = 0.2 + 0.4 * rng.Uniform01();
    Instance instance;
    instance.graph = BuildErGraph(n, edge_prob, rng);
    instance.params = SampleParams(instance.graph, {0, 1, 2, 3}, rng);
    instance.chain = RandomChain(rng, options.max_phases);
    const int p = instance.chain.num_phases();
    EpidemicState x(n);
    const double infected_frac = 0.15 + 0.4 * rng.Uniform01();
    for (int i = 0; i < n; ++i) {
      if (rng.Uniform01() < infected_frac) {
        x.set_label(i, 1 + static_cast<int>(rng.UniformIndex(p)));
      }
    }
    instance.initial = x;
    instance.seed = seed;
    const auto ground = GroundSet(x, instance.graph).size();
    if (static_cast<int>(ground) >= options.min_ground &&
        static_cast<int>(ground) <= options.max_ground) {
      return instance;
    }
  }
}

std::unique_ptr<SetFunction> RandomCutPlusModular(std::uint64_t seed, int size) {
  RandomStream rng(seed, 0xc7);
  std::vector<std::pair<std::pair<int, int>, double>> cut;
  for (int a = 0; a < size; ++a) {
    for (int b = a + 1; b < size; ++b) {
      if (rng.Uniform01() < 0.4) cut.push_back({{a, b}, 3.0 * rng.Uniform01()});
    }
  }
  std::vector<double> modular(size);
  for (double& w : modular) w = 6.0 * rng.Uniform01() - 4.0;
  const double concave = 2.0 * rng.Uniform01();
  std::vector<int> ground(size);
  std::iota(ground.begin(), ground.end(), 0);
  return std::make_unique<LambdaSetFunction>(
      std::move(ground), [cut, modular, concave](const std::vector<bool>& w) {
        double value = 0.0;
        int count = 0;
        for (std::size_t e = 0; e < modular.size(); ++e) {
          if (w[e]) {
            value += modular[e];
            ++count;
          }
        }
        for (const auto& [edge, weight] : cut) {
          if (w[edge.first] != w[edge.second]) value += weight;
        }
        return value + concave * std::sqrt(static_cast<double>(count));
      });
}

std::unique_ptr<SetFunction> XorFunction(int size, int a, int b, bool A, bool B) {
  std::vector<int> ground(size);
  std::iota(ground.begin(), ground.end(), 0);
  return std::make_unique<LambdaSetFunction>(
      std::move(ground), [a, b, A, B](const std::vector<bool>& w) {
        const bool left = A && !w[a];
        const bool right = B && !w[b];
        return (left != right) ? 1.0 : 0.0;
      });
}

}  // namespace episfm
