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

// Discrete phase-type recovery model. An infected node walks a Markov chain
// over compartments I_1..I_p until it is absorbed into S; the number of steps
// until absorption is its recovery time.

#ifndef EPISFM_PHASE_TYPE_H_
#define EPISFM_PHASE_TYPE_H_

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace episfm {

// Certificate that ||M^block||_inf <= ratio < 1, used to bound series tails.
struct Contraction {
  int block = 1;
  double ratio = 0.0;
};

class PhaseTypeChain {
 public:
  // transitions(k, l) is the probability of moving I_{k+1} -> I_{l+1} in one
  // step; the remaining row mass is the absorption probability. Throws
  // ParameterError on negative entries, row sums above one, or p == 0.
  explicit PhaseTypeChain(Eigen::MatrixXd transitions);

  // Linear chain with deterministic advance whose absorption time from stage
  // 1 has law pmf[t-1] at t = 1..m. Trailing zero masses are trimmed.
  static PhaseTypeChain FromPmf(std::span<const double> pmf);

  int num_phases() const { return static_cast<int>(transitions_.rows()); }
  const Eigen::MatrixXd& transitions() const { return transitions_; }
  const Eigen::VectorXd& absorb() const { return absorb_; }

  // Present iff absorption is certain from every phase.
  const std::optional<Contraction>& contraction() const { return contraction_; }
  bool absorption_certain() const { return contraction_.has_value(); }

  // Next label for a node in phase k (1-based) given u ~ U[0,1):
  // 0 for S, l in 1..p for I_l.
  int SampleNext(int phase, double u) const;

  bool operator==(const PhaseTypeChain& other) const {
    return transitions_ == other.transitions_;
  }

 private:
  Eigen::MatrixXd transitions_;
  Eigen::VectorXd absorb_;
  Eigen::MatrixXd cumulative_;  // row k: running sums of [M_k., absorb_k]
  std::optional<Contraction> contraction_;
};

// P(absorbed exactly at step t | start phase), t = 1..horizon. start is
// 1-based.
std::vector<double> AbsorptionPmf(const PhaseTypeChain& chain, int start,
                                  int horizon);

// Law of the number T >= 0 of future steps (relative times 1, 2, ...) at
// which a node is infected.
struct DurationDistribution {
  enum class Offset {
    // Node already infected: it may be absorbed on the very next transition,
    // so P(T >= t) = alpha M^t 1.
    kCurrentInfected,
    // Node infected on the coming transition, hence infected at relative
    // time 1: P(T >= t) = alpha M^(t-1) 1.
    kNewlyInfected,
  };

  double weight = 1.0;     // P(T = 0) contributed outside the chain
  Eigen::VectorXd alpha;   // initial phase masses, sums to 1 - weight
  const PhaseTypeChain* chain = nullptr;
  Offset offset = Offset::kCurrentInfected;

  static DurationDistribution PointMassAtZero();
  static DurationDistribution CurrentInfected(const PhaseTypeChain& chain,
                                              int phase);
  static DurationDistribution NewlyInfected(const PhaseTypeChain& chain,
                                            double probability);

  bool is_point_mass_at_zero() const;
};

// P(T >= t), t >= 1.
double Survival(const DurationDistribution& dist, int t);

// E|T1 - T2| for independent T1 ~ d1, T2 ~ d2, summed as
// sum_t S1(t) + S2(t) - 2 S1(t) S2(t) until a geometric bound certifies that
// the remaining tail is below tail_tol. Throws InvariantError if a chain
// lacks a contraction certificate.
double ExpectedAbsDiff(const DurationDistribution& d1,
                       const DurationDistribution& d2, double tail_tol = 1e-12);

}  // namespace episfm

#endif  // EPISFM_PHASE_TYPE_H_
