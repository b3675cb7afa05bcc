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


// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "episfm/controller.h"
#include "episfm/experiments.h"
#include "episfm/instance.h"
#include "episfm/random_problems.h"
#include "episfm/verify.h"

namespace {

using namespace episfm;  // NOLINT

constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string Describe(const SuiteResult& s) {
  return fmt::format("{} checks, {} failed, worst {:.4g}; {}", s.checks, s.failures,
                     s.worst, s.detail);
}

Outcome XorSubmodularity() {
  const auto start = std::chrono::steady_clock::now();
  const SuiteResult s = VerifyXorSubmodularity();
  const double secs = Seconds(start);
  return {s.passed() && secs < 1.0,
          fmt::format("{}; {:.3f} s (limit 1 s)", Describe(s), secs)};
}

Outcome ObjectiveSubmodular() {
  const auto start = std::chrono::steady_clock::now();
  const SuiteResult s = VerifyObjectiveSubmodularity(50, kSeed, false);
  const double secs = Seconds(start);
  return {s.passed() && secs < 300.0,
          fmt::format("{}; {:.2f} s (limit 300 s)", Describe(s), secs)};
}

Outcome RolloutCrossValidation() {
  const SuiteResult s = VerifyRolloutCost(30, 5, 100000, kSeed);
  return {s.passed(), Describe(s) + "; worst is the largest z-score, limit 4"};
}

Outcome SolverVsBruteForce() {
  const SuiteResult s = VerifyMinNormAgainstBruteForce(50, kSeed);
  return {s.passed(), Describe(s) + "; worst is |error|, limit 1e-6"};
}

Outcome PhaseTypeFidelity() {
  const SuiteResult s = VerifyPhaseType(100000, kSeed);
  return {s.passed(), s.detail + "; limits 1e-12 and 0.01"};
}

Outcome MuOneIsUncontrolled() {
  int runs = 0;
  int protected_steps = 0;
  int mismatches = 0;
  auto check = [&](const Instance& instance, std::uint64_t seed) {
    ControllerConfig config;
    config.mu = 1.0;
    config.record_states = true;
    const TrajectoryRecord controlled = RunClosedLoop(instance, config, seed);
    const TrajectoryRecord uncontrolled =
        RunWithPolicy(instance, config, seed, [](const EpidemicState& x) {
          return ProtectionSet::Empty(x.num_nodes());
        });
    ++runs;
    for (const StepRecord& row : controlled.steps) {
      if (row.protected_count != 0) ++protected_steps;
    }
    if (controlled.states != uncontrolled.states) ++mismatches;
  };
  const Instance large = GenerateInstance(InstanceSpec{});
  for (std::uint64_t r = 0; r < 20; ++r) check(large, RunSeed(kSeed, 0, r));
  for (std::uint64_t k = 0; k < 30; ++k) check(RandomSmallInstance(HashSeed(kSeed, 3, k)), k);
  return {protected_steps == 0 && mismatches == 0,
          fmt::format("{} runs, {} steps with P nonempty, {} trajectory mismatches", runs,
                      protected_steps, mismatches)};
}

double MeanExtinctionTime(const std::vector<TrajectoryRecord>& runs) {
  double total = 0.0;
  for (const TrajectoryRecord& run : runs) total += run.steps.back().t;
  return total / static_cast<double>(runs.size());
}

Outcome LargeInstanceSweep() {
  const auto start = std::chrono::steady_clock::now();
  SweepSpec spec;  // n = 200, p = 0.01, 100 runs, default grid, max_steps 200
  spec.mu_values.push_back(0.85);
  const Instance instance = GenerateInstance(spec.instance);
  const SweepResult sweep = RunSweep(spec, instance);
  const std::vector<TrajectoryRecord>& at85 = sweep.runs.back();

  int extinct = 0;
  int negative_savings = 0;
  double savings_sum = 0.0;
  int infected_steps = 0;
  for (const TrajectoryRecord& run : at85) {
    if (run.terminal == Terminal::kExtinct && run.steps.back().t <= 200) ++extinct;
    for (const StepRecord& row : run.steps) {
      const double savings = row.protect_all_cost - row.stage_cost;
      if (savings < 0.0) ++negative_savings;
      if (row.infected > 0) {
        savings_sum += savings;
        ++infected_steps;
      }
    }
  }
  const double extinct_frac = static_cast<double>(extinct) / at85.size();
  const double mean_savings = infected_steps > 0 ? savings_sum / infected_steps : 0.0;
  const bool part_a = extinct_frac >= 0.95 && negative_savings == 0 && mean_savings > 0.0;

  std::string times;
  for (std::size_t m = 0; m + 1 < sweep.mu_values.size(); ++m) {
    times += fmt::format(" {:.2f}:{:.1f}", sweep.mu_values[m],
                         MeanExtinctionTime(sweep.runs[m]));
  }
  const double t70 = MeanExtinctionTime(sweep.runs.front());
  const double t95 = MeanExtinctionTime(sweep.runs[sweep.mu_values.size() - 2]);
  const bool part_b = t95 > t70;
  return {part_a && part_b,
          fmt::format("(a) mu=0.85: extinct {:.0f}% (need >= 95%), negative-savings "
                      "steps {}, mean savings while infected {:.3f} -> {}; "
                      "(b) mean extinction time{} -> {}; {:.0f} s",
                      100.0 * extinct_frac, negative_savings, mean_savings,
                      part_a ? "pass" : "FAIL", times, part_b ? "pass" : "FAIL",
                      Seconds(start))};
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Outcome SweepDeterminism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "episfm_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  SweepSpec spec;
  spec.mu_values = {0.70, 0.85, 0.95};
  spec.runs_per_mu = 10;
  const Instance instance = GenerateInstance(spec.instance);
  std::vector<std::string> raw;
  std::vector<std::string> stats;
  for (int jobs : {1, 1, 3}) {
    spec.jobs = jobs;
    spec.output_prefix = (dir / fmt::format("run{}", raw.size())).string();
    RunSweepToFiles(spec, instance);
    const SweepFiles files = SweepFilesFor(spec.output_prefix);
    raw.push_back(Slurp(files.raw_path));
    stats.push_back(Slurp(files.stats_path));
  }
  fs::remove_all(dir);
  const bool same = !raw[0].empty() && raw[0] == raw[1] && raw[0] == raw[2] &&
                    stats[0] == stats[1] && stats[0] == stats[2];
  return {same, fmt::format("3 sweeps (jobs 1, 1, 3): raw {} bytes, stats {} bytes, {}",
                            raw[0].size(), stats[0].size(),
                            same ? "identical" : "DIFFER")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"xor-submodularity-exhaustive", XorSubmodularity},
      {"objective-submodular", ObjectiveSubmodular},
      {"rollout-cost-cross-validation", RolloutCrossValidation},
      {"min-norm-vs-brute-force", SolverVsBruteForce},
      {"phase-type-fidelity", PhaseTypeFidelity},
      {"mu-one-protects-nothing", MuOneIsUncontrolled},
      {"large-instance-qualitative", LargeInstanceSweep},
      {"sweep-determinism", SweepDeterminism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << fmt::format("[{}] {:<32} {}\n", outcome.pass ? "PASS" : "FAIL", name,
                             outcome.detail)
              << std::flush;
  }
  std::cout << fmt::format("{} of {} acceptance criteria passed\n",
                           criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
