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

#include "episfm/phase_type.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "episfm/error.h"

namespace episfm {
namespace {

constexpr double kRowSumSlack = 1e-12;
constexpr double kPmfSumSlack = 1e-12;
constexpr int kMaxSquarings = 62;
constexpr long kMaxSeriesTerms = 100'000'000;

double MaxRowSum(const Eigen::MatrixXd& m) {
  return m.rowwise().sum().maxCoeff();
}

// Smallest power-of-two block with ||M^block||_inf <= 1/2.
std::optional<Contraction> FindContraction(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd power = m;
  long block = 1;
  for (int j = 0; j <= kMaxSquarings; ++j) {
    const double ratio = MaxRowSum(power);
    if (!std::isfinite(ratio)) return std::nullopt;
    if (ratio <= 0.5) {
      if (block > std::numeric_limits<int>::max()) return std::nullopt;
      return Contraction{static_cast<int>(block), ratio};
    }
    power = power * power;
    block *= 2;
  }
  return std::nullopt;
}

Eigen::RowVectorXd StartVector(const DurationDistribution& d) {
  Eigen::RowVectorXd v = d.alpha.transpose();
  if (d.offset == DurationDistribution::Offset::kCurrentInfected) {
    v = v * d.chain->transitions();
  }
  return v;
}

double TailFactor(const DurationDistribution& d) {
  const Contraction& c = *d.chain->contraction();
  return static_cast<double>(c.block) / (1.0 - c.ratio);
}

}  // namespace

PhaseTypeChain::PhaseTypeChain(Eigen::MatrixXd transitions)
    : transitions_(std::move(transitions)) {
  const Eigen::Index p = transitions_.rows();
  if (p == 0 || transitions_.cols() != p) {
    throw ParameterError("phase-type chain needs a non-empty square matrix");
  }
  if (!transitions_.allFinite() || transitions_.minCoeff() < 0.0) {
    throw ParameterError("phase-type transitions must be finite and >= 0");
  }
  absorb_.resize(p);
  cumulative_.resize(p, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    const double row = transitions_.row(k).sum();
    if (row > 1.0 + kRowSumSlack) {
      throw ParameterError("phase-type row " + std::to_string(k + 1) +
                           " sums to more than one");
    }
    absorb_(k) = std::max(0.0, 1.0 - row);
    double running = 0.0;
    for (Eigen::Index l = 0; l < p; ++l) {
      running += transitions_(k, l);
      cumulative_(k, l) = running;
    }
  }
  contraction_ = FindContraction(transitions_);
}

PhaseTypeChain PhaseTypeChain::FromPmf(std::span<const double> pmf) {
  double total = 0.0;
  for (double mass : pmf) {
    if (!std::isfinite(mass) || mass < 0.0) {
      throw ParameterError("recovery pmf masses must be finite and >= 0");
    }
    total += mass;
  }
  if (total <= 0.0) throw ParameterError("recovery pmf has zero mass");
  if (std::abs(total - 1.0) > kPmfSumSlack) {
    throw ParameterError("recovery pmf must sum to one");
  }
  std::size_t m = pmf.size();
  while (m > 0 && pmf[m - 1] == 0.0) --m;

  // Suffix sums give the hazard denominators without cancellation.
  std::vector<double> tail(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) tail[k] = tail[k + 1] + pmf[k];

  Eigen::MatrixXd transitions = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double hazard = pmf[k] / tail[k];
    transitions(k, k + 1) = 1.0 - hazard;
  }
  return PhaseTypeChain(std::move(transitions));
}

int PhaseTypeChain::SampleNext(int phase, double u) const {
  const auto row = static_cast<Eigen::Index>(phase - 1);
  for (Eigen::Index l = 0; l < cumulative_.cols(); ++l) {
    if (u < cumulative_(row, l)) return static_cast<int>(l + 1);
  }
  return 0;
}

std::vector<double> AbsorptionPmf(const PhaseTypeChain& chain, int start,
                                  int horizon) {
  if (start < 1 || start > chain.num_phases()) {
    throw ParameterError("start phase out of range");
  }
  if (horizon < 1) throw ParameterError("horizon must be >= 1");
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(chain.num_phases());
  v(start - 1) = 1.0;
  std::vector<double> pmf(horizon);
  for (int t = 0; t < horizon; ++t) {
    pmf[t] = v.dot(chain.absorb());
    v = v * chain.transitions();
  }
  return pmf;
}

DurationDistribution DurationDistribution::PointMassAtZero() { return {}; }

DurationDistribution DurationDistribution::CurrentInfected(
    const PhaseTypeChain& chain, int phase) {
  if (phase < 1 || phase > chain.num_phases()) {
    throw ParameterError("phase out of range");
  }
  DurationDistribution d;
  d.weight = 0.0;
  d.alpha = Eigen::VectorXd::Zero(chain.num_phases());
  d.alpha(phase - 1) = 1.0;
  d.chain = &chain;
  d.offset = Offset::kCurrentInfected;
  return d;
}

DurationDistribution DurationDistribution::NewlyInfected(
    const PhaseTypeChain& chain, double probability) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw ParameterError("infection probability must lie in [0, 1]");
  }
  if (probability == 0.0) return PointMassAtZero();
  DurationDistribution d;
  d.weight = 1.0 - probability;
  d.alpha = Eigen::VectorXd::Zero(chain.num_phases());
  d.alpha(0) = probability;
  d.chain = &chain;
  d.offset = Offset::kNewlyInfected;
  return d;
}

bool DurationDistribution::is_point_mass_at_zero() const {
  return chain == nullptr || alpha.size() == 0 || alpha.sum() == 0.0;
}

double Survival(const DurationDistribution& dist, int t) {
  if (t < 1) throw ParameterError("survival index must be >= 1");
  if (dist.is_point_mass_at_zero()) return 0.0;
  Eigen::RowVectorXd v = StartVector(dist);
  for (int s = 1; s < t; ++s) v = v * dist.chain->transitions();
  return v.sum();
}

double ExpectedAbsDiff(const DurationDistribution& d1,
                       const DurationDistribution& d2, double tail_tol) {
  if (!(tail_tol > 0.0)) throw ParameterError("tail_tol must be positive");
  const bool zero1 = d1.is_point_mass_at_zero();
  const bool zero2 = d2.is_point_mass_at_zero();
  if (zero1 && zero2) return 0.0;
  for (const DurationDistribution* d : {&d1, &d2}) {
    if (!d->is_point_mass_at_zero() && !d->chain->absorption_certain()) {
      throw InvariantError(
          "phase-type chain is not contracting; absorption is not certain");
    }
  }

  Eigen::RowVectorXd v1, v2;
  double factor1 = 0.0, factor2 = 0.0;
  if (!zero1) {
    v1 = StartVector(d1);
    factor1 = TailFactor(d1);
  }
  if (!zero2) {
    v2 = StartVector(d2);
    factor2 = TailFactor(d2);
  }

  double total = 0.0;
  for (long t = 1; t <= kMaxSeriesTerms; ++t) {
    const double s1 = zero1 ? 0.0 : v1.sum();
    const double s2 = zero2 ? 0.0 : v2.sum();
    total += s1 + s2 - 2.0 * s1 * s2;
    // sum_{u > t} S(u) <= block * S(t) / (1 - ratio).
    if (factor1 * s1 + factor2 * s2 < tail_tol) return total;
    if (!zero1) v1 = v1 * d1.chain->transitions();
    if (!zero2) v2 = v2 * d2.chain->transitions();
  }
  throw InvariantError("expected |T1 - T2| series did not converge");
}

}  // namespace episfm
