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

// Ensembles of closed-loop runs over a grid of mu values, percentile bands,
// and the CSV files they are published as.
//
//   raw:   mu,run_id,t,infected,protected,stage_cost,protect_all_cost,objective
//   stats: mu,t,series,mean,p01,p10,p90,p99   (series: infected | savings)

#ifndef EPISFM_EXPERIMENTS_H_
#define EPISFM_EXPERIMENTS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "episfm/controller.h"
#include "episfm/instance.h"

namespace episfm {

inline const std::vector<double>& DefaultMuGrid() {
  static const std::vector<double> grid = {0.70, 0.75, 0.80, 0.82, 0.84,
                                           0.86, 0.88, 0.90, 0.95};
  return grid;
}

struct SweepSpec {
  std::vector<double> mu_values = DefaultMuGrid();
  int runs_per_mu = 100;
  InstanceSpec instance;
  ControllerConfig controller;
  std::string output_prefix = "sweep";
  int jobs = 1;

  void Validate() const;
};

// Seed of run `run_index` at grid position `mu_index`.
std::uint64_t RunSeed(std::uint64_t master_seed, std::size_t mu_index,
                      std::size_t run_index);

struct SweepResult {
  std::vector<double> mu_values;
  std::vector<std::vector<TrajectoryRecord>> runs;  // [mu index][run id]
};

// Runs every (mu, run) pair, up to spec.jobs at a time. The result does not
// depend on the job count. Master seed is instance.seed.
SweepResult RunSweep(const SweepSpec& spec, const Instance& instance);

struct Band {
  int t = 0;
  double mean = 0.0;
  std::vector<double> percentiles;  // one per requested level
};

// Linear interpolation between order statistics: position (N - 1) * level /
// 100 in the sorted sample. values need not be sorted.
double Percentile(std::vector<double> values, double level);

// series[r] is the time series of run r. Shorter series are right-padded with
// zeros to the longest length. Levels must lie in (0, 100).
std::vector<Band> PercentileBands(const std::vector<std::vector<double>>& series,
                                  const std::vector<double>& levels);

struct StatsRow {
  double mu = 0.0;
  std::string series;  // "infected" or "savings"
  Band band;
};

struct EnsembleStats {
  std::vector<double> levels;
  std::vector<StatsRow> rows;  // ordered by mu, series, t
};

inline const std::vector<double>& DefaultBandLevels() {
  static const std::vector<double> levels = {1.0, 10.0, 90.0, 99.0};
  return levels;
}

EnsembleStats ComputeEnsembleStats(
    const SweepResult& sweep,
    const std::vector<double>& levels = DefaultBandLevels());

void WriteRawCsv(const SweepResult& sweep, std::ostream& out);
// Requires the default band levels, which the header names.
void WriteStatsCsv(const EnsembleStats& stats, std::ostream& out);

struct SweepFiles {
  std::string raw_path;
  std::string stats_path;
};

inline SweepFiles SweepFilesFor(const std::string& prefix) {
  return {prefix + "_raw.csv", prefix + "_stats.csv"};
}

// Opens both outputs before simulating (IoError if either cannot be
// created), then runs the sweep and writes the CSVs.
SweepResult RunSweepToFiles(const SweepSpec& spec, const Instance& instance);

}  // namespace episfm

#endif  // EPISFM_EXPERIMENTS_H_
