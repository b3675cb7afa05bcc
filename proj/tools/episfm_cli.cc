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

// episfm command-line front end.
//
//   episfm gen      --n 200 --seed 7 --out instance.json
//   episfm simulate --instance instance.json --mu 0.85 --out run.csv
//   episfm sweep    --seed 7 --runs-per-mu 100 --out results/sweep --jobs 4
//   episfm verify   --level full
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
// 3 I/O or parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "episfm/controller.h"
#include "episfm/error.h"
#include "episfm/experiments.h"
#include "episfm/instance.h"
#include "episfm/verify.h"
#include "json.hpp"

namespace {

using episfm::ControllerConfig;
using episfm::InstanceSpec;
using episfm::SweepSpec;
using json = nlohmann::json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void RejectUnknownKeys(const json& object, const std::set<std::string>& known,
                       const std::string& where) {
  if (!object.is_object()) throw episfm::ParameterError(where + " must be an object");
  for (const auto& item : object.items()) {
    if (!known.contains(item.key())) {
      throw episfm::ParameterError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

// Overlays a --config document onto `spec`. Keys mirror the SweepSpec,
// InstanceSpec and ControllerConfig field names.
void ApplyConfig(const std::string& path, SweepSpec& spec) {
  std::ifstream in(path);
  if (!in) throw episfm::IoError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw episfm::ParseError(path + ": " + e.what(), e.byte);
  }
  try {
    RejectUnknownKeys(doc,
                      {"instance", "controller", "mu_values", "runs_per_mu",
                       "output_prefix", "jobs"},
                      "config");
    if (doc.contains("instance")) {
      const json& i = doc["instance"];
      RejectUnknownKeys(i,
                        {"n", "edge_prob", "cost_support", "recovery_pmf",
                         "init_infected_frac", "seed"},
                        "instance");
      InstanceSpec& s = spec.instance;
      s.n = i.value("n", s.n);
      s.edge_prob = i.value("edge_prob", s.edge_prob);
      s.cost_support = i.value("cost_support", s.cost_support);
      s.recovery_pmf = i.value("recovery_pmf", s.recovery_pmf);
      s.init_infected_frac = i.value("init_infected_frac", s.init_infected_frac);
      s.seed = i.value("seed", s.seed);
    }
    if (doc.contains("controller")) {
      const json& c = doc["controller"];
      RejectUnknownKeys(c, {"mu", "solver_tol", "tail_tol", "max_steps"},
                        "controller");
      ControllerConfig& k = spec.controller;
      k.mu = c.value("mu", k.mu);
      k.solver_tol = c.value("solver_tol", k.solver_tol);
      k.tail_tol = c.value("tail_tol", k.tail_tol);
      k.max_steps = c.value("max_steps", k.max_steps);
    }
    spec.mu_values = doc.value("mu_values", spec.mu_values);
    spec.runs_per_mu = doc.value("runs_per_mu", spec.runs_per_mu);
    spec.output_prefix = doc.value("output_prefix", spec.output_prefix);
    spec.jobs = doc.value("jobs", spec.jobs);
  } catch (const json::exception& e) {
    throw episfm::ParseError(path + ": " + e.what(), std::nullopt);
  }
}

// Raw command-line values; only options the user actually passed override
// the config document.
struct Flags {
  SweepSpec spec;
  std::string config_path;
  std::string instance_path;
  std::string out;
  std::uint64_t run_seed = 0;
  std::string level = "quick";
  std::uint64_t verify_seed = episfm::VerifyOptions{}.seed;
  bool negate_q = false;
};

struct InstanceOptions {
  CLI::Option* n;
  CLI::Option* edge_prob;
  CLI::Option* cost_support;
  CLI::Option* recovery_pmf;
  CLI::Option* init_infected_frac;
  CLI::Option* seed;
};

struct ControllerOptions {
  CLI::Option* max_steps = nullptr;
  CLI::Option* solver_tol = nullptr;
  CLI::Option* tail_tol = nullptr;
  CLI::Option* mu = nullptr;
};

InstanceOptions AddInstanceFlags(CLI::App* app, InstanceSpec& s) {
  return {
      app->add_option("--n", s.n, "Number of nodes")->capture_default_str(),
      app->add_option("--edge-prob", s.edge_prob, "Erdos-Renyi edge probability")
          ->capture_default_str(),
      app->add_option("--cost-support", s.cost_support,
                      "Edge costs are drawn uniformly from these integers")
          ->delimiter(','),
      app->add_option("--recovery-pmf", s.recovery_pmf,
                      "Recovery-time pmf over durations 1..m")
          ->delimiter(','),
      app->add_option("--init-infected-frac", s.init_infected_frac,
                      "Fraction of nodes infected at t = 0")
          ->capture_default_str(),
      app->add_option("--seed", s.seed, "Master seed")->capture_default_str(),
  };
}

ControllerOptions AddControllerFlags(CLI::App* app, ControllerConfig& c) {
  return {
      app->add_option("--max-steps", c.max_steps, "Step cap per run")
          ->capture_default_str(),
      app->add_option("--solver-tol", c.solver_tol, "Min-norm-point tolerance")
          ->capture_default_str(),
      app->add_option("--tail-tol", c.tail_tol, "Duration series tail tolerance")
          ->capture_default_str(),
  };
}

// Re-applies explicitly passed flags on top of a config document.
void ResolveSpec(Flags& flags, const InstanceOptions& io, const ControllerOptions& co,
                 CLI::Option* mu_values, CLI::Option* runs, CLI::Option* jobs,
                 CLI::Option* out) {
  if (flags.config_path.empty()) return;
  const SweepSpec cli = flags.spec;
  ApplyConfig(flags.config_path, flags.spec);
  SweepSpec& s = flags.spec;
  if (io.n->count()) s.instance.n = cli.instance.n;
  if (io.edge_prob->count()) s.instance.edge_prob = cli.instance.edge_prob;
  if (io.cost_support->count()) s.instance.cost_support = cli.instance.cost_support;
  if (io.recovery_pmf->count()) s.instance.recovery_pmf = cli.instance.recovery_pmf;
  if (io.init_infected_frac->count()) {
    s.instance.init_infected_frac = cli.instance.init_infected_frac;
  }
  if (io.seed->count()) s.instance.seed = cli.instance.seed;
  auto passed = [](const CLI::Option* o) { return o != nullptr && o->count() > 0; };
  if (passed(co.max_steps)) s.controller.max_steps = cli.controller.max_steps;
  if (passed(co.solver_tol)) s.controller.solver_tol = cli.controller.solver_tol;
  if (passed(co.tail_tol)) s.controller.tail_tol = cli.controller.tail_tol;
  if (passed(co.mu)) s.controller.mu = cli.controller.mu;
  if (passed(mu_values)) s.mu_values = cli.mu_values;
  if (passed(runs)) s.runs_per_mu = cli.runs_per_mu;
  if (passed(jobs)) s.jobs = cli.jobs;
  if (passed(out)) s.output_prefix = cli.output_prefix;
}

episfm::Instance ObtainInstance(const Flags& flags) {
  if (!flags.instance_path.empty()) return episfm::LoadInstanceFile(flags.instance_path);
  flags.spec.instance.Validate();
  return episfm::GenerateInstance(flags.spec.instance);
}

int RunGen(const Flags& flags) {
  const episfm::Instance instance = ObtainInstance(flags);
  if (flags.out.empty() || flags.out == "-") {
    episfm::SaveInstance(instance, std::cout);
  } else {
    episfm::SaveInstanceFile(instance, flags.out);
  }
  return 0;
}

int RunSimulate(const Flags& flags) {
  const episfm::Instance instance = ObtainInstance(flags);
  const ControllerConfig& config = flags.spec.controller;
  std::ofstream file;
  if (!flags.out.empty() && flags.out != "-") {
    file.open(flags.out, std::ios::binary | std::ios::trunc);
    if (!file) throw episfm::IoError("cannot open " + flags.out + " for writing");
  }
  const episfm::TrajectoryRecord record =
      episfm::RunClosedLoop(instance, config, flags.run_seed);
  episfm::SweepResult single{{config.mu}, {{record}}};
  episfm::WriteRawCsv(single, file.is_open() ? file : std::cout);
  if (file.is_open()) {
    file.flush();
    if (!file) throw episfm::IoError("error writing " + flags.out);
  }
  std::cerr << fmt::format(
      "{} after {} steps\n",
      record.terminal == episfm::Terminal::kExtinct ? "extinct" : "step cap reached",
      record.steps.back().t);
  return 0;
}

int RunSweepCommand(const Flags& flags) {
  flags.spec.Validate();
  const episfm::Instance instance = ObtainInstance(flags);
  const episfm::SweepResult sweep = episfm::RunSweepToFiles(flags.spec, instance);
  const episfm::SweepFiles files = episfm::SweepFilesFor(flags.spec.output_prefix);
  std::size_t capped = 0;
  std::size_t total = 0;
  for (const auto& runs : sweep.runs) {
    for (const auto& run : runs) {
      ++total;
      if (run.terminal == episfm::Terminal::kMaxSteps) ++capped;
    }
  }
  std::cerr << fmt::format("{} runs ({} hit the step cap); wrote {} and {}\n", total,
                           capped, files.raw_path, files.stats_path);
  return 0;
}

int RunVerifyCommand(const Flags& flags) {
  episfm::VerifyOptions options;
  options.level =
      flags.level == "full" ? episfm::VerifyLevel::kFull : episfm::VerifyLevel::kQuick;
  options.seed = flags.verify_seed;
  options.negate_rollout = flags.negate_q;
  const episfm::VerifyReport report = episfm::RunVerify(options);
  episfm::PrintReport(report, std::cout);
  return report.passed() ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop epidemic control by submodular minimization"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance file");
  const InstanceOptions gen_io = AddInstanceFlags(gen, flags.spec.instance);
  gen->add_option("--config", flags.config_path, "JSON settings document");
  gen->add_option("--out", flags.out, "Output path (default stdout)");

  CLI::App* sim = app.add_subcommand("simulate", "Run one closed-loop trajectory");
  const InstanceOptions sim_io = AddInstanceFlags(sim, flags.spec.instance);
  ControllerOptions sim_co = AddControllerFlags(sim, flags.spec.controller);
  sim->add_option("--instance", flags.instance_path, "Instance file");
  sim->add_option("--config", flags.config_path, "JSON settings document");
  sim_co.mu = sim->add_option("--mu", flags.spec.controller.mu,
                              "Weight of the stage cost against the future cost")
                  ->capture_default_str();
  sim->add_option("--run-seed", flags.run_seed, "Seed of the dynamics")
      ->capture_default_str();
  sim->add_option("--out", flags.out, "Raw CSV path (default stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a mu sweep and write CSVs");
  const InstanceOptions sweep_io = AddInstanceFlags(sweep, flags.spec.instance);
  const ControllerOptions sweep_co = AddControllerFlags(sweep, flags.spec.controller);
  sweep->add_option("--instance", flags.instance_path, "Instance file");
  sweep->add_option("--config", flags.config_path, "JSON settings document");
  CLI::Option* mu_values =
      sweep->add_option("--mu-values", flags.spec.mu_values, "Comma-separated mu grid")
          ->delimiter(',');
  CLI::Option* runs =
      sweep->add_option("--runs-per-mu", flags.spec.runs_per_mu, "Runs per mu value")
          ->capture_default_str();
  CLI::Option* jobs =
      sweep->add_option("--jobs", flags.spec.jobs, "Concurrent runs")
          ->capture_default_str();
  CLI::Option* out =
      sweep->add_option("--out", flags.spec.output_prefix,
                        "Output prefix; writes PREFIX_raw.csv and PREFIX_stats.csv")
          ->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--level", flags.level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  verify->add_option("--seed", flags.verify_seed, "Suite seed")->capture_default_str();
  verify->add_flag("--corrupt-negate-q", flags.negate_q,
                   "Negate the rollout cost (mutation check)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      ResolveSpec(flags, gen_io, {}, nullptr, nullptr,
                  nullptr, nullptr);
      return RunGen(flags);
    }
    if (sim->parsed()) {
      ResolveSpec(flags, sim_io, sim_co, nullptr, nullptr, nullptr, nullptr);
      return RunSimulate(flags);
    }
    if (sweep->parsed()) {
      ResolveSpec(flags, sweep_io, sweep_co, mu_values, runs, jobs, out);
      return RunSweepCommand(flags);
    }
    return RunVerifyCommand(flags);
  } catch (const episfm::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const episfm::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const episfm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
