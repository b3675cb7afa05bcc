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

#include "episfm/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "episfm/error.h"
#include "episfm/random.h"

namespace episfm {
namespace {

std::vector<std::vector<double>> Series(const std::vector<TrajectoryRecord>& runs,
                                        bool savings) {
  std::vector<std::vector<double>> out;
  out.reserve(runs.size());
  for (const TrajectoryRecord& run : runs) {
    std::vector<double> values;
    values.reserve(run.steps.size());
    for (const StepRecord& row : run.steps) {
      values.push_back(savings ? row.protect_all_cost - row.stage_cost
                               : static_cast<double>(row.infected));
    }
    out.push_back(std::move(values));
  }
  return out;
}

}  // namespace

void SweepSpec::Validate() const {
  if (mu_values.empty()) throw ParameterError("mu_values is empty");
  for (double mu : mu_values) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw ParameterError("mu value " + fmt::format("{}", mu) +
                           " is outside [0, 1]");
    }
  }
  if (runs_per_mu < 1) throw ParameterError("runs_per_mu must be >= 1");
  if (jobs < 1) throw ParameterError("jobs must be >= 1");
  controller.Validate();
}

std::uint64_t RunSeed(std::uint64_t master_seed, std::size_t mu_index,
                      std::size_t run_index) {
  return HashSeed(master_seed, mu_index, run_index);
}

SweepResult RunSweep(const SweepSpec& spec, const Instance& instance) {
  spec.Validate();
  instance.Validate();
  const std::size_t num_mu = spec.mu_values.size();
  const auto runs = static_cast<std::size_t>(spec.runs_per_mu);
  SweepResult result;
  result.mu_values = spec.mu_values;
  result.runs.assign(num_mu, std::vector<TrajectoryRecord>(runs));

  const std::size_t total = num_mu * runs;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const std::size_t m = task / runs;
      const std::size_t r = task % runs;
      ControllerConfig config = spec.controller;
      config.mu = spec.mu_values[m];
      try {
        result.runs[m][r] =
            RunClosedLoop(instance, config, RunSeed(instance.seed, m, r));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  const auto workers = std::min<std::size_t>(spec.jobs, total);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

double Percentile(std::vector<double> values, double level) {
  if (values.empty()) throw ParameterError("percentile of an empty sample");
  if (!(level >= 0.0 && level <= 100.0)) {
    throw ParameterError("percentile level must lie in [0, 100]");
  }
  std::sort(values.begin(), values.end());
  const double position = (static_cast<double>(values.size()) - 1.0) * level / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(position));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = position - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<Band> PercentileBands(const std::vector<std::vector<double>>& series,
                                  const std::vector<double>& levels) {
  if (series.empty()) throw ParameterError("need at least one run");
  for (double level : levels) {
    if (!(level > 0.0 && level < 100.0)) {
      throw ParameterError("band levels must lie in (0, 100)");
    }
  }
  std::size_t horizon = 0;
  for (const auto& s : series) horizon = std::max(horizon, s.size());

  std::vector<Band> bands;
  bands.reserve(horizon);
  std::vector<double> column(series.size());
  for (std::size_t t = 0; t < horizon; ++t) {
    double sum = 0.0;
    for (std::size_t r = 0; r < series.size(); ++r) {
      column[r] = t < series[r].size() ? series[r][t] : 0.0;
      sum += column[r];
    }
    Band band;
    band.t = static_cast<int>(t);
    band.mean = sum / static_cast<double>(series.size());
    std::vector<double> sorted = column;
    std::sort(sorted.begin(), sorted.end());
    for (double level : levels) band.percentiles.push_back(Percentile(sorted, level));
    bands.push_back(std::move(band));
  }
  return bands;
}

EnsembleStats ComputeEnsembleStats(const SweepResult& sweep,
                                   const std::vector<double>& levels) {
  EnsembleStats stats;
  stats.levels = levels;
  for (std::size_t m = 0; m < sweep.mu_values.size(); ++m) {
    for (const bool savings : {false, true}) {
      for (Band& band : PercentileBands(Series(sweep.runs[m], savings), levels)) {
        stats.rows.push_back(
            {sweep.mu_values[m], savings ? "savings" : "infected", std::move(band)});
      }
    }
  }
  return stats;
}

void WriteRawCsv(const SweepResult& sweep, std::ostream& out) {
  out << "mu,run_id,t,infected,protected,stage_cost,protect_all_cost,objective\n";
  for (std::size_t m = 0; m < sweep.mu_values.size(); ++m) {
    for (std::size_t r = 0; r < sweep.runs[m].size(); ++r) {
      for (const StepRecord& row : sweep.runs[m][r].steps) {
        fmt::print(out, "{},{},{},{},{},{},{},{}\n", sweep.mu_values[m], r, row.t,
                   row.infected, row.protected_count, row.stage_cost,
                   row.protect_all_cost, row.objective);
      }
    }
  }
}

void WriteStatsCsv(const EnsembleStats& stats, std::ostream& out) {
  if (stats.levels != DefaultBandLevels()) {
    throw ParameterError("stats CSV expects band levels 1, 10, 90, 99");
  }
  out << "mu,t,series,mean,p01,p10,p90,p99\n";
  for (const StatsRow& row : stats.rows) {
    const Band& b = row.band;
    fmt::print(out, "{},{},{},{},{},{},{},{}\n", row.mu, b.t, row.series, b.mean,
               b.percentiles[0], b.percentiles[1], b.percentiles[2],
               b.percentiles[3]);
  }
}

SweepResult RunSweepToFiles(const SweepSpec& spec, const Instance& instance) {
  spec.Validate();
  const SweepFiles files = SweepFilesFor(spec.output_prefix);
  std::ofstream raw(files.raw_path, std::ios::binary | std::ios::trunc);
  if (!raw) throw IoError("cannot open " + files.raw_path + " for writing");
  std::ofstream stats(files.stats_path, std::ios::binary | std::ios::trunc);
  if (!stats) throw IoError("cannot open " + files.stats_path + " for writing");

  SweepResult sweep = RunSweep(spec, instance);
  WriteRawCsv(sweep, raw);
  WriteStatsCsv(ComputeEnsembleStats(sweep), stats);
  raw.flush();
  stats.flush();
  if (!raw || !stats) throw IoError("error writing sweep CSV files");
  return sweep;
}

}  // namespace episfm
