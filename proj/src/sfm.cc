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

#include "episfm/sfm.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "episfm/error.h"
#include "episfm/random.h"

namespace episfm {
namespace {

// Affine coefficients at or below this are treated as zero and their
// vertices leave the corral.
constexpr double kDropThreshold = 1e-12;
constexpr std::size_t kMaxBruteForce = 24;
constexpr std::size_t kMaxExhaustiveCheck = 12;

std::vector<bool> MaskFromBits(std::uint64_t bits, std::size_t n) {
  std::vector<bool> members(n);
  for (std::size_t e = 0; e < n; ++e) members[e] = (bits >> e) & 1U;
  return members;
}

std::vector<int> LabelsFromBits(const SetFunction& f, std::uint64_t bits) {
  return f.Labels(MaskFromBits(bits, f.size()));
}

// Positions sorted by ascending x, ties by position.
std::vector<std::size_t> AscendingOrder(const Eigen::VectorXd& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&x](std::size_t a, std::size_t b) { return x(a) < x(b); });
  return order;
}

Eigen::VectorXd Vertex(const SetFunction& f, std::span<const std::size_t> order) {
  std::vector<double> v = GreedyVertex(f, order);
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Coefficients mu (summing to one) of the point of minimum norm in the affine
// hull of the corral. Solved as the least-squares problem
// min ||s_0 + sum_i w_i (s_i - s_0)||, which stays well posed when the corral
// is numerically affinely dependent.
std::vector<double> AffineMinimizer(const std::vector<Eigen::VectorXd>& corral) {
  const std::size_t k = corral.size();
  if (k == 1) return {1.0};
  const Eigen::Index n = corral[0].size();
  Eigen::MatrixXd directions(n, static_cast<Eigen::Index>(k - 1));
  for (std::size_t i = 1; i < k; ++i) {
    directions.col(static_cast<Eigen::Index>(i - 1)) = corral[i] - corral[0];
  }
  const Eigen::VectorXd w =
      directions.completeOrthogonalDecomposition().solve(-corral[0]);
  std::vector<double> mu(k);
  mu[0] = 1.0 - w.sum();
  for (std::size_t i = 1; i < k; ++i) mu[i] = w(static_cast<Eigen::Index>(i - 1));
  return mu;
}

Eigen::VectorXd Combine(const std::vector<Eigen::VectorXd>& corral,
                        const std::vector<double>& lambda) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(corral[0].size());
  for (std::size_t i = 0; i < corral.size(); ++i) x += lambda[i] * corral[i];
  return x;
}

MinNormResult Extract(const SetFunction& f, const Eigen::VectorXd& x, double tol,
                      std::int64_t iterations) {
  const std::size_t n = f.size();
  MinNormResult result;
  result.x_star.assign(x.data(), x.data() + x.size());
  result.iterations = iterations;
  std::vector<bool> minimal(n), maximal(n);
  double lower_bound = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    minimal[e] = x(e) < -tol;
    maximal[e] = x(e) <= tol;
    lower_bound += std::min(x(e), 0.0);
  }
  result.minimal_minimizer = f.Labels(minimal);
  result.maximal_minimizer = f.Labels(maximal);
  result.min_value = f.Evaluate(minimal);
  result.certified_gap = result.min_value - lower_bound;
  return result;
}

}  // namespace

void SetFunction::ChainMarginals(std::span<const std::size_t> order,
                                 std::span<double> out) const {
  std::vector<bool> members(size(), false);
  double previous = Evaluate(members);
  for (std::size_t k = 0; k < order.size(); ++k) {
    members[order[k]] = true;
    const double current = Evaluate(members);
    out[k] = current - previous;
    previous = current;
  }
}

std::vector<int> SetFunction::Labels(const std::vector<bool>& members) const {
  std::vector<int> labels;
  for (std::size_t e = 0; e < ground_.size(); ++e) {
    if (members[e]) labels.push_back(ground_[e]);
  }
  return labels;
}

std::vector<double> GreedyVertex(const SetFunction& f,
                                 std::span<const std::size_t> order) {
  const std::size_t n = f.size();
  if (order.size() != n) throw ParameterError("order must be a permutation");
  std::vector<bool> seen(n, false);
  for (std::size_t e : order) {
    if (e >= n || seen[e]) throw ParameterError("order must be a permutation");
    seen[e] = true;
  }
  std::vector<double> marginals(n);
  f.ChainMarginals(order, marginals);
  std::vector<double> vertex(n);
  for (std::size_t k = 0; k < n; ++k) vertex[order[k]] = marginals[k];
  return vertex;
}

MinNormResult MinNormPoint(const SetFunction& f, const MinNormOptions& options) {
  if (!(options.tol > 0.0)) throw ParameterError("tol must be positive");
  const std::size_t n = f.size();
  if (n == 0) return MinNormResult{};
  const std::int64_t cap = options.max_major_cycles > 0
                               ? options.max_major_cycles
                               : 100 * static_cast<std::int64_t>(n * n);

  std::vector<std::size_t> start(n);
  std::iota(start.begin(), start.end(), 0);
  if (options.initial_order) start = *options.initial_order;

  std::vector<Eigen::VectorXd> corral{Vertex(f, start)};
  std::vector<double> lambda{1.0};
  Eigen::VectorXd x = corral[0];
  double scale = std::max(1.0, x.squaredNorm());
  const double tol_sq = options.tol * options.tol;

  std::int64_t iterations = 0;
  while (true) {
    if (iterations >= cap) {
      throw MinNormFailure("min-norm-point exceeded its major-cycle cap",
                           Extract(f, x, options.tol, iterations));
    }
    ++iterations;

    const Eigen::VectorXd q = Vertex(f, AscendingOrder(x));
    scale = std::max(scale, q.squaredNorm());
    const double norm_sq = x.squaredNorm();
    // Wolfe's criterion, relative to the squared vertex norms.
    if (x.dot(q) >= norm_sq - tol_sq * scale) break;
    // A vertex already in the corral cannot improve on its affine minimizer;
    // this only happens when rounding hides convergence.
    const double same = 1e-12 * std::sqrt(scale);
    if (std::any_of(corral.begin(), corral.end(), [&](const Eigen::VectorXd& s) {
          return (s - q).lpNorm<Eigen::Infinity>() <= same;
        })) {
      break;
    }

    corral.push_back(q);
    lambda.push_back(0.0);
    while (true) {
      const std::vector<double> mu = AffineMinimizer(corral);
      if (*std::min_element(mu.begin(), mu.end()) > kDropThreshold) {
        lambda = mu;
        break;
      }
      // Step from lambda toward mu until the first coefficient hits zero.
      double theta = std::numeric_limits<double>::infinity();
      std::size_t leaving = 0;
      for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] > kDropThreshold) continue;
        const double denom = lambda[i] - mu[i];
        const double ratio = denom > 0.0 ? lambda[i] / denom : 0.0;
        if (ratio < theta) {
          theta = ratio;
          leaving = i;
        }
      }
      theta = std::min(theta, 1.0);
      for (std::size_t i = 0; i < mu.size(); ++i) {
        lambda[i] = theta * mu[i] + (1.0 - theta) * lambda[i];
      }
      lambda[leaving] = 0.0;
      std::size_t kept = 0;
      double total = 0.0;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (lambda[i] > kDropThreshold) {
          corral[kept] = std::move(corral[i]);
          lambda[kept] = lambda[i];
          total += lambda[i];
          ++kept;
        }
      }
      corral.resize(kept);
      lambda.resize(kept);
      for (double& l : lambda) l /= total;
    }

    const Eigen::VectorXd next = Combine(corral, lambda);
    const double next_norm_sq = next.squaredNorm();
    const bool stalled = next_norm_sq >= norm_sq - 1e-15 * scale;
    if (next_norm_sq <= norm_sq) x = next;
    if (stalled) break;
  }
  return Extract(f, x, options.tol, iterations);
}

std::vector<double> EvaluateAllSubsets(const SetFunction& f) {
  const std::size_t n = f.size();
  if (n > kMaxBruteForce) {
    throw ParameterError("ground set too large for enumeration (" +
                         std::to_string(n) + " > 24)");
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> values(count);
  std::vector<bool> members(n, false);
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    for (std::size_t e = 0; e < n; ++e) members[e] = (bits >> e) & 1U;
    values[bits] = f.Evaluate(members);
  }
  return values;
}

BruteForceResult BruteForceMin(const SetFunction& f) {
  const std::vector<double> values = EvaluateAllSubsets(f);
  std::uint64_t best = 0;
  for (std::uint64_t bits = 1; bits < values.size(); ++bits) {
    const double tie = 1e-9 * std::max(1.0, std::abs(values[best]));
    if (values[bits] < values[best] - tie) {
      best = bits;
    } else if (values[bits] <= values[best] + tie) {
      const int size_a = std::popcount(bits);
      const int size_b = std::popcount(best);
      // Equal sizes: the set holding the lowest differing position is
      // lexicographically first.
      const std::uint64_t diff = bits ^ best;
      const bool lex_first = (bits & diff & (~diff + 1)) != 0;
      if (size_a < size_b || (size_a == size_b && lex_first)) best = bits;
    }
  }
  return BruteForceResult{values[best], LabelsFromBits(f, best)};
}

SubmodularityReport CheckSubmodular(const SetFunction& f,
                                    const SubmodularityCheckOptions& options) {
  const std::size_t n = f.size();
  SubmodularityReport report;
  report.worst_excess = -std::numeric_limits<double>::infinity();
  auto record = [&](std::uint64_t y, std::uint64_t z, std::size_t e,
                    double excess) {
    ++report.checks;
    report.worst_excess = std::max(report.worst_excess, excess);
    if (excess > options.slack) {
      ++report.violation_count;
      if (report.violations.size() < options.max_recorded) {
        report.violations.push_back(
            {LabelsFromBits(f, y), LabelsFromBits(f, z), f.ground()[e], excess});
      }
    }
  };

  if (options.mode == SubmodularityCheckOptions::Mode::kExhaustive) {
    if (n > kMaxExhaustiveCheck) {
      throw ParameterError("exhaustive submodularity check needs |ground| <= 12");
    }
    const std::vector<double> v = EvaluateAllSubsets(f);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t z = 1; z <= full; ++z) {
      for (std::uint64_t y = (z - 1) & z;; y = (y - 1) & z) {
        for (std::size_t e = 0; e < n; ++e) {
          const std::uint64_t bit = std::uint64_t{1} << e;
          if (z & bit) continue;
          record(y, z, e, (v[z | bit] - v[z]) - (v[y | bit] - v[y]));
        }
        if (y == 0) break;
      }
    }
  } else {
    if (n < 2 || n > 64) {
      throw ParameterError("sampled submodularity check needs 2 <= |ground| <= 64");
    }
    RandomStream rng(options.seed, 0x5b);
    const auto eval = [&](std::uint64_t bits) {
      return f.Evaluate(MaskFromBits(bits, n));
    };
    for (std::int64_t trial = 0; trial < options.trials; ++trial) {
      const auto e = static_cast<std::size_t>(rng.UniformIndex(n));
      std::uint64_t z = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i != e && rng.Uniform01() < 0.5) z |= std::uint64_t{1} << i;
      }
      if (z == 0) {
        std::size_t i = rng.UniformIndex(n - 1);
        if (i >= e) ++i;
        z = std::uint64_t{1} << i;
      }
      std::uint64_t y = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (((z >> i) & 1U) && rng.Uniform01() < 0.5) y |= std::uint64_t{1} << i;
      }
      if (y == z) y &= y - 1;  // drop the lowest member to keep Y proper
      const std::uint64_t bit = std::uint64_t{1} << e;
      record(y, z, e, (eval(z | bit) - eval(z)) - (eval(y | bit) - eval(y)));
    }
  }
  if (report.checks == 0) report.worst_excess = 0.0;
  return report;
}

}  // namespace episfm
