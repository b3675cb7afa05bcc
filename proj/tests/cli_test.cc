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


// Runs the episfm binary end to end and checks exit codes and outputs.

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "episfm/instance.h"

namespace {

namespace fs = std::filesystem;

int RunCli(const std::string& args) {
  const std::string command =
      std::string(EPISFM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("episfm_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenWritesLoadableInstance) {
  ASSERT_EQ(RunCli("gen --n 40 --edge-prob 0.1 --seed 3 --out " + Path("i.json")), 0);
  const episfm::Instance instance = episfm::LoadInstanceFile(Path("i.json"));
  EXPECT_EQ(instance.graph.num_nodes(), 40);
  EXPECT_EQ(instance.seed, 3U);
}

TEST_F(CliTest, SimulateFromInstanceFile) {
  ASSERT_EQ(RunCli("gen --n 40 --edge-prob 0.1 --out " + Path("i.json")), 0);
  ASSERT_EQ(RunCli("simulate --instance " + Path("i.json") + " --mu 0.5 --out " +
                Path("run.csv")),
            0);
  const std::string csv = ReadFile(Path("run.csv"));
  EXPECT_EQ(csv.rfind("mu,run_id,t,infected,protected,stage_cost,protect_all_cost,"
                      "objective\n",
                      0),
            0U);
}

TEST_F(CliTest, SweepIsByteIdenticalAcrossInvocations) {
  const std::string common =
      "sweep --n 40 --edge-prob 0.1 --mu-values 0.5,0.9 --runs-per-mu 3 "
      "--max-steps 50 --seed 5 --out ";
  ASSERT_EQ(RunCli(common + Path("a")), 0);
  ASSERT_EQ(RunCli(common + Path("b") + " --jobs 2"), 0);
  EXPECT_EQ(ReadFile(Path("a_raw.csv")), ReadFile(Path("b_raw.csv")));
  EXPECT_EQ(ReadFile(Path("a_stats.csv")), ReadFile(Path("b_stats.csv")));
  EXPECT_FALSE(ReadFile(Path("a_stats.csv")).empty());
}

TEST_F(CliTest, ConfigDocumentAndFlagOverride) {
  std::ofstream(Path("spec.json"))
      << R"({"instance": {"n": 30, "edge_prob": 0.1, "seed": 9},
             "controller": {"max_steps": 40},
             "mu_values": [0.6], "runs_per_mu": 2})";
  ASSERT_EQ(RunCli("sweep --config " + Path("spec.json") + " --runs-per-mu 3 --out " +
                Path("s")),
            0);
  std::ifstream raw(Path("s_raw.csv"));
  std::string line;
  std::getline(raw, line);
  int max_run = -1;
  while (std::getline(raw, line)) {
    const auto first = line.find(',');
    max_run = std::max(max_run, std::stoi(line.substr(first + 1)));
    EXPECT_EQ(line.rfind("0.6,", 0), 0U);
  }
  EXPECT_EQ(max_run, 2);
}

TEST_F(CliTest, VerifyQuickPassesAndMutationFails) {
  EXPECT_EQ(RunCli("verify --level quick"), 0);
  EXPECT_EQ(RunCli("verify --level quick --corrupt-negate-q"), 1);
}

TEST_F(CliTest, UsageAndParameterErrorsExitTwo) {
  EXPECT_EQ(RunCli(""), 2);
  EXPECT_EQ(RunCli("frobnicate"), 2);
  EXPECT_EQ(RunCli("verify --level extreme"), 2);
  EXPECT_EQ(RunCli("gen --edge-prob 1.5"), 2);
  EXPECT_EQ(RunCli("sweep --mu-values 1.5 --out " + Path("x")), 2);
  std::ofstream(Path("bad.json")) << R"({"runs_per_mu": 2, "unknown": 1})";
  EXPECT_EQ(RunCli("sweep --config " + Path("bad.json") + " --out " + Path("x")), 2);
}

TEST_F(CliTest, IoErrorsExitThree) {
  EXPECT_EQ(RunCli("simulate --instance " + Path("missing.json")), 3);
  EXPECT_EQ(RunCli("sweep --n 20 --out /nonexistent/dir/sweep"), 3);
  std::ofstream(Path("broken.json")) << "{\"format\": ";
  EXPECT_EQ(RunCli("simulate --instance " + Path("broken.json")), 3);
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(RunCli("--help"), 0); }

}  // namespace
