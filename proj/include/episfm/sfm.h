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

// Submodular function minimization.
//
// MinNormPoint runs Wolfe's nearest-point algorithm over the base polytope
// B(f) = {x : x(W) <= f(W) for all W, x(V) = f(V)}, using Edmonds' greedy
// rule as the linear oracle. For the min-norm point x*, {x* < 0} is the
// minimal minimizer of f and {x* <= 0} the maximal one.
//
// Subsets are passed as membership masks indexed by ground position; results
// report subsets as element labels in ground order.

#ifndef EPISFM_SFM_H_
#define EPISFM_SFM_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace episfm {

class SetFunction {
 public:
  explicit SetFunction(std::vector<int> ground) : ground_(std::move(ground)) {}
  virtual ~SetFunction() = default;

  std::size_t size() const { return ground_.size(); }
  const std::vector<int>& ground() const { return ground_; }

  // Must be deterministic and return 0 on the empty set.
  virtual double Evaluate(const std::vector<bool>& members) const = 0;

  // out[k] = f(order[0..k]) - f(order[0..k-1]). The default evaluates every
  // prefix; subclasses with cheap marginals should override.
  virtual void ChainMarginals(std::span<const std::size_t> order,
                              std::span<double> out) const;

  std::vector<int> Labels(const std::vector<bool>& members) const;

 private:
  std::vector<int> ground_;
};

class LambdaSetFunction : public SetFunction {
 public:
  using Fn = std::function<double(const std::vector<bool>&)>;
  LambdaSetFunction(std::vector<int> ground, Fn fn)
      : SetFunction(std::move(ground)), fn_(std::move(fn)) {}
  double Evaluate(const std::vector<bool>& members) const override {
    return fn_(members);
  }

 private:
  Fn fn_;
};

// Extreme point of B(f) generated by `order` (a permutation of positions).
std::vector<double> GreedyVertex(const SetFunction& f,
                                 std::span<const std::size_t> order);

struct MinNormOptions {
  double tol = 1e-9;
  // 0 means 100 * |ground|^2 major cycles.
  std::int64_t max_major_cycles = 0;
  // Order for the starting vertex; ascending positions when unset.
  std::optional<std::vector<std::size_t>> initial_order;
};

struct MinNormResult {
  std::vector<double> x_star;  // by ground position
  double min_value = 0.0;
  std::vector<int> minimal_minimizer;
  std::vector<int> maximal_minimizer;
  std::int64_t iterations = 0;
  // f(minimal_minimizer) - sum_e min(x_e, 0); the second term lower-bounds
  // min f, so this bounds the suboptimality of the returned set.
  double certified_gap = 0.0;
};

// Thrown when the major-cycle cap is hit; carries the best iterate.
class MinNormFailure : public std::runtime_error {
 public:
  MinNormFailure(const std::string& what, MinNormResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const MinNormResult& partial() const { return partial_; }

 private:
  MinNormResult partial_;
};

MinNormResult MinNormPoint(const SetFunction& f,
                           const MinNormOptions& options = {});

struct BruteForceResult {
  double value = 0.0;
  std::vector<int> minimizer;
};

// Exhaustive minimum. Ties (within 1e-9 relative) go to the smaller set, then
// to the lexicographically first list of positions. Refuses grounds larger
// than 24 with ParameterError.
BruteForceResult BruteForceMin(const SetFunction& f);

// Every subset value, indexed by bitmask over ground positions. Refuses
// grounds larger than 24.
std::vector<double> EvaluateAllSubsets(const SetFunction& f);

struct SubmodularityViolation {
  std::vector<int> y;  // element labels
  std::vector<int> z;
  int element = 0;
  // [f(Z+e) - f(Z)] - [f(Y+e) - f(Y)], positive when violated.
  double magnitude = 0.0;
};

struct SubmodularityReport {
  std::int64_t checks = 0;
  std::int64_t violation_count = 0;
  // Largest observed [f(Z+e) - f(Z)] - [f(Y+e) - f(Y)] over all checks.
  double worst_excess = 0.0;
  // Capped at max_recorded entries; violation_count is exact.
  std::vector<SubmodularityViolation> violations;

  bool ok() const { return violation_count == 0; }
};

struct SubmodularityCheckOptions {
  enum class Mode { kExhaustive, kSampled };
  Mode mode = Mode::kExhaustive;
  std::int64_t trials = 10000;  // sampled mode
  std::uint64_t seed = 0;       // sampled mode
  double slack = 1e-9;
  std::size_t max_recorded = 1000;
};

// Checks f(Z+e) - f(Z) <= f(Y+e) - f(Y) for Y a proper subset of Z and e not
// in Z. Exhaustive mode covers every triple and requires |ground| <= 12;
// sampled mode draws `trials` random triples.
SubmodularityReport CheckSubmodular(const SetFunction& f,
                                    const SubmodularityCheckOptions& options = {});

}  // namespace episfm

#endif  // EPISFM_SFM_H_
