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

#include "episfm/verify.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "episfm/dynamics.h"
#include "episfm/objective.h"
#include "episfm/phase_type.h"
#include "episfm/random.h"
#include "episfm/random_problems.h"
#include "episfm/sfm.h"

namespace episfm {
namespace {

constexpr double kMuGrid[] = {0.0, 0.25, 0.5, 0.85, 1.0};

// Two-node instance: node 0 infected in I_1 with recovery time exactly d,
// node 1 susceptible, one edge with the given beta and cost.
Instance SingleEdge(int d, double beta, double cost, bool infected) {
  std::vector<double> pmf(d, 0.0);
  pmf[d - 1] = 1.0;
  Instance instance;
  instance.graph = Graph(2, {{0, 1}});
  instance.params = {{beta}, {cost}};
  instance.chain = PhaseTypeChain::FromPmf(pmf);
  instance.initial = EpidemicState(std::vector<int>{infected ? 1 : 0, 0});
  return instance;
}

void Fold(SuiteResult& suite, bool ok, double worst) {
  ++suite.checks;
  if (!ok) ++suite.failures;
  suite.worst = std::max(suite.worst, worst);
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.passed(); });
}

SuiteResult VerifyXorSubmodularity() {
  SuiteResult suite{.name = "xor_submodularity"};
  suite.worst = -std::numeric_limits<double>::infinity();
  std::int64_t triples = 0;
  for (int size = 2; size <= 6; ++size) {
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        for (int bits = 0; bits < 4; ++bits) {
          const auto f = XorFunction(size, a, b, bits & 1, bits & 2);
          const SubmodularityReport report = CheckSubmodular(*f);
          triples += report.checks;
          Fold(suite, report.ok(), report.worst_excess);
        }
      }
    }
  }
  suite.detail = fmt::format("{} functions, {} triples", suite.checks, triples);
  return suite;
}

SuiteResult VerifyObjectiveSubmodularity(int instances, std::uint64_t seed,
                                         bool negate_rollout) {
  SuiteResult suite{.name = "objective_submodularity"};
  suite.worst = -std::numeric_limits<double>::infinity();
  std::int64_t triples = 0;
  std::int64_t violations = 0;
  for (int k = 0; k < instances; ++k) {
    const Instance instance = RandomSmallInstance(HashSeed(seed, 0x7e, k));
    for (double mu : kMuGrid) {
      const ObjectiveContext context(
          instance, instance.initial,
          {.mu = mu, .tail_tol = 1e-12, .negate_rollout = negate_rollout});
      const NormalizedObjective g(context);
      const SubmodularityReport report = CheckSubmodular(g);
      triples += report.checks;
      violations += report.violation_count;
      Fold(suite, report.ok(), report.worst_excess);
    }
  }
  suite.detail = fmt::format("{} instances x {} mu, {} triples, {} violated",
                             instances, std::size(kMuGrid), triples, violations);
  return suite;
}

SuiteResult VerifyRolloutCost(int instances, int sets_per_instance,
                              std::int64_t samples, std::uint64_t seed) {
  SuiteResult suite{.name = "rollout_cost_mc"};

  // Hand-derived single-edge values (d = 5, c = 2).
  const int d = 5;
  const double c = 2.0;
  struct Case {
    Instance instance;
    bool protect_j;
    double expected;
  };
  const Case cases[] = {
      {SingleEdge(d, 1.0, c, false), false, 0.0},
      {SingleEdge(d, 1.0, c, true), true, c * (d - 1)},
      {SingleEdge(d, 1.0, c, true), false, c * 1.0},
  };
  for (const Case& tc : cases) {
    const ProtectionSet p(2, tc.protect_j ? std::vector<int>{1} : std::vector<int>{});
    const double exact = RolloutCostExact(p, tc.instance.initial, tc.instance);
    const MonteCarloEstimate mc =
        RolloutCostMonteCarlo(p, tc.instance.initial, tc.instance, 100, seed);
    const double err = std::max(std::abs(exact - tc.expected),
                                std::abs(mc.estimate - tc.expected));
    Fold(suite, err <= 1e-12 && mc.std_error == 0.0, 0.0);
  }

  // Random instances: |exact - mc| <= 4 standard errors. worst is the largest
  // observed z-score.
  for (int k = 0; k < instances; ++k) {
    const Instance instance = RandomSmallInstance(
        HashSeed(seed, 0x9c, k), {.min_nodes = 4, .max_nodes = 15, .max_ground = 15});
    const int n = instance.graph.num_nodes();
    RandomStream rng(seed, 0x9d, k);
    for (int s = 0; s < sets_per_instance; ++s) {
      std::vector<int> members;
      for (int i = 0; i < n; ++i) {
        if (rng.Uniform01() < 0.5) members.push_back(i);
      }
      const ProtectionSet p(n, members);
      const double exact = RolloutCostExact(p, instance.initial, instance);
      const MonteCarloEstimate mc = RolloutCostMonteCarlo(
          p, instance.initial, instance, samples, HashSeed(seed, k, s));
      const double diff = std::abs(exact - mc.estimate);
      const double z = mc.std_error > 0.0 ? diff / mc.std_error : (diff > 1e-9 ? 1e9 : 0.0);
      Fold(suite, diff <= 4.0 * mc.std_error + 1e-9, z);
    }
  }
  suite.detail = fmt::format("3 single-edge cases + {} instances x {} sets, {} samples",
                             instances, sets_per_instance, samples);
  return suite;
}

SuiteResult VerifyMinNormAgainstBruteForce(int instances, std::uint64_t seed) {
  SuiteResult suite{.name = "min_norm_vs_brute_force"};
  auto compare = [&suite](const SetFunction& f) {
    const MinNormResult mnp = MinNormPoint(f);
    const BruteForceResult bf = BruteForceMin(f);
    std::vector<bool> minimal(f.size()), maximal(f.size());
    for (std::size_t e = 0; e < f.size(); ++e) {
      const int label = f.ground()[e];
      minimal[e] = std::count(mnp.minimal_minimizer.begin(),
                              mnp.minimal_minimizer.end(), label) > 0;
      maximal[e] = std::count(mnp.maximal_minimizer.begin(),
                              mnp.maximal_minimizer.end(), label) > 0;
    }
    const double err = std::max({std::abs(mnp.min_value - bf.value),
                                 std::abs(f.Evaluate(minimal) - bf.value),
                                 std::abs(f.Evaluate(maximal) - bf.value)});
    Fold(suite, err <= 1e-6, err);
  };

  for (int k = 0; k < instances; ++k) {
    RandomStream rng(seed, 0xb1, k);
    if (k % 2 == 0) {
      const int size = 1 + static_cast<int>(rng.UniformIndex(14));
      compare(*RandomCutPlusModular(HashSeed(seed, 0xb2, k), size));
    } else {
      const Instance instance = RandomSmallInstance(
          HashSeed(seed, 0xb3, k),
          {.min_nodes = 6, .max_nodes = 18, .max_ground = 14, .min_ground = 2});
      const double mu = kMuGrid[rng.UniformIndex(std::size(kMuGrid))];
      const ObjectiveContext context(instance, instance.initial, {.mu = mu});
      compare(NormalizedObjective(context));
    }
  }

  // XOR with A = B = 1 on {a, b}: minimum 0 at both the empty and full set.
  const auto xor_f = XorFunction(2, 0, 1, true, true);
  const MinNormResult r = MinNormPoint(*xor_f);
  const bool ok = std::abs(r.min_value) <= 1e-9 && r.minimal_minimizer.empty() &&
                  r.maximal_minimizer == std::vector<int>{0, 1};
  Fold(suite, ok, std::abs(r.min_value));
  suite.detail = fmt::format("{} random instances + xor(A=B=1)", instances);
  return suite;
}

SuiteResult VerifyPhaseType(std::int64_t runs, std::uint64_t seed) {
  SuiteResult suite{.name = "phase_type"};
  const std::vector<double> pmf = {0, 0, 0, 0, 0, 0, 0.25, 0.25, 0.25, 0.25};
  const PhaseTypeChain chain = PhaseTypeChain::FromPmf(pmf);
  const std::vector<double> recomputed = AbsorptionPmf(chain, 1, 12);
  double pmf_err = 0.0;
  for (std::size_t t = 0; t < recomputed.size(); ++t) {
    pmf_err = std::max(pmf_err,
                       std::abs(recomputed[t] - (t < pmf.size() ? pmf[t] : 0.0)));
  }
  Fold(suite, pmf_err <= 1e-12, pmf_err);

  // Empirical recovery times of an isolated node that starts in I_1.
  Instance instance;
  instance.graph = Graph(1, {});
  instance.params = {};
  instance.chain = chain;
  instance.initial = EpidemicState(std::vector<int>{1});
  const ProtectionSet none = ProtectionSet::Empty(1);
  std::vector<double> counts(pmf.size() + 2, 0.0);
  for (std::int64_t r = 0; r < runs; ++r) {
    EpidemicState x = instance.initial;
    int t = 0;
    while (!IsExtinct(x) && t <= static_cast<int>(pmf.size())) {
      RandomStream rng = StepStream(seed, static_cast<std::uint64_t>(r), t);
      x = Step(x, none, instance, rng);
      ++t;
    }
    counts[std::min<std::size_t>(t, counts.size() - 1)] += 1.0;
  }
  double tv = 0.0;
  for (std::size_t t = 1; t < counts.size(); ++t) {
    const double expected = t <= pmf.size() ? pmf[t - 1] : 0.0;
    tv += std::abs(counts[t] / static_cast<double>(runs) - expected);
  }
  tv *= 0.5;
  Fold(suite, tv <= 0.01, tv);
  suite.detail = fmt::format("pmf identity err {:.3g}, TV distance {:.4f} over {} runs",
                             pmf_err, tv, runs);
  return suite;
}

VerifyReport RunVerify(const VerifyOptions& options) {
  const bool full = options.level == VerifyLevel::kFull;
  VerifyReport report;
  report.suites.push_back(VerifyXorSubmodularity());
  report.suites.push_back(VerifyObjectiveSubmodularity(
      full ? 50 : 10, options.seed, options.negate_rollout));
  report.suites.push_back(full ? VerifyRolloutCost(30, 5, 100000, options.seed)
                               : VerifyRolloutCost(3, 2, 20000, options.seed));
  report.suites.push_back(VerifyMinNormAgainstBruteForce(full ? 50 : 16, options.seed));
  report.suites.push_back(VerifyPhaseType(100000, options.seed));
  return report;
}

void PrintReport(const VerifyReport& report, std::ostream& out) {
  for (const SuiteResult& s : report.suites) {
    fmt::print(out, "{:<26} {:>8} checks {:>6} failed  worst {:<12.6g} {}  ({})\n",
               s.name, s.checks, s.failures, s.worst, s.passed() ? "PASS" : "FAIL",
               s.detail);
  }
  fmt::print(out, "{}\n", report.passed() ? "ALL SUITES PASSED" : "VERIFICATION FAILED");
}

}  // namespace episfm
