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

// Property suites runnable from the command line (`episfm verify`).

#ifndef EPISFM_VERIFY_H_
#define EPISFM_VERIFY_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace episfm {

enum class VerifyLevel { kQuick, kFull };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::kQuick;
  std::uint64_t seed = 20260101;
  // Mutation check: evaluate the objective suites with Q negated.
  bool negate_rollout = false;
};

struct SuiteResult {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  // Suite-specific worst case (largest excess, error or distance).
  double worst = 0.0;
  std::string detail;

  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

// Individual suites, also used by the acceptance tests.
SuiteResult VerifyXorSubmodularity();
SuiteResult VerifyObjectiveSubmodularity(int instances, std::uint64_t seed,
                                         bool negate_rollout);
SuiteResult VerifyRolloutCost(int instances, int sets_per_instance,
                              std::int64_t samples, std::uint64_t seed);
SuiteResult VerifyMinNormAgainstBruteForce(int instances, std::uint64_t seed);
SuiteResult VerifyPhaseType(std::int64_t runs, std::uint64_t seed);

VerifyReport RunVerify(const VerifyOptions& options);
void PrintReport(const VerifyReport& report, std::ostream& out);

}  // namespace episfm

#endif  // EPISFM_VERIFY_H_
