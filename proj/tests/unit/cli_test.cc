// Copyright 2026 The ptnas Authors.
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

#include <algorithm>
#include <cstdlib>
#include <iterator>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <nlohmann/json.hpp>
#include <gtest/gtest.h>

#include "commands.h"
#include "ptnas/error.h"
#include "ptnas/serialization.h"
#include "run_config.h"

namespace ptnas::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ptnas_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunConfig Base() const {
    RunConfig c;
    c.Set("out", dir_.string());
    c.Set("dataset", (dir_ / "dataset.jsonl").string());
    c.Set("checkpoint", (dir_ / "predictor.ckpt").string());
    c.Set("n_samples", "60");
    c.Set("train.epochs", "2");
    c.Set("search.population", "10");
    c.Set("search.sample_size", "3");
    c.Set("search.rounds", "15");
    c.Set("search.budget", "25");
    return c;
  }

  int RunBinary(const std::string& args) const {
    const std::string cmd = std::string(PTNAS_CLI_PATH) + " " + args + " >" +
                            (dir_ / "stdout").string() + " 2>" + (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

TEST(RunConfigTest, DefaultsAndOverrides) {
  RunConfig c;
  EXPECT_EQ(c.GetInt("seed"), 0);
  EXPECT_EQ(c.Get("predictor.mode"), "dense_sparse");
  EXPECT_EQ(c.GetInt("profile.points"), 12300);
  c.SetAssignment("train.lr=0.01");
  EXPECT_DOUBLE_EQ(c.GetDouble("train.lr"), 0.01);
  c.LoadText("# comment\n\n  seed = 7  \nsearch.beta=0.25\n", "inline");
  EXPECT_EQ(c.GetU64("seed"), 7u);
  EXPECT_DOUBLE_EQ(c.GetDouble("search.beta"), 0.25);
  EXPECT_NE(c.Resolved().find("seed = 7\n"), std::string::npos);
}

TEST(RunConfigTest, Errors) {
  RunConfig c;
  EXPECT_THROW(c.Set("no.such.key", "1"), Error);
  EXPECT_THROW(c.SetAssignment("seed"), Error);
  c.Set("seed", "abc");
  EXPECT_THROW(c.GetU64("seed"), Error);
  c.Set("train.lr", "0.1x");
  EXPECT_THROW(c.GetDouble("train.lr"), Error);
  try {
    c.LoadText("seed = 1\nbogus = 2\n", "run.cfg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("run.cfg:2"), std::string::npos) << e.what();
  }
}

TEST_F(CliTest, FullPipeline) {
  const RunConfig c = Base();
  const Json gen = Json::parse(RunCommand("gen-dataset", c));
  EXPECT_EQ(gen["command"], "gen-dataset");
  EXPECT_EQ(gen["samples"], 60);
  EXPECT_TRUE(fs::exists(dir_ / "oracle.json"));
  EXPECT_TRUE(fs::exists(dir_ / "gen-dataset.config"));

  const Json train = Json::parse(RunCommand("train-predictor", c));
  EXPECT_EQ(train["train"], 48);
  EXPECT_EQ(train["val"], 12);
  EXPECT_TRUE(train.contains("val_metrics"));
  EXPECT_TRUE(fs::exists(dir_ / "predictor.ckpt"));
  const std::string curve = ReadFile(dir_ / "loss_curve.csv");
  EXPECT_EQ(std::count(curve.begin(), curve.end(), '\n'), 3);

  const Json eval = Json::parse(RunCommand("eval-predictor", c));
  EXPECT_EQ(eval["samples"], 12);
  EXPECT_NEAR(eval["kendall_tau"].get<double>(), train["val_metrics"]["kendall_tau"].get<double>(), 1e-6);

  const Json search = Json::parse(RunCommand("search", c));
  EXPECT_EQ(search["evaluations"], 25);
  const Genotype best = GenotypeFromJson(ReadFile(dir_ / "best_genotype.json"));
  EXPECT_TRUE(IsValid(best, DefaultSpace()));
  EXPECT_EQ(search["cost"]["macs"], search["best"]["macs"]);

  const Json random = Json::parse(RunCommand("random-search", c));
  EXPECT_EQ(random["evaluations"], 25);
  std::ifstream top(dir_ / "top.jsonl");
  int lines = 0;
  for (std::string line; std::getline(top, line);) {
    Json::parse(line);
    ++lines;
  }
  EXPECT_EQ(lines, 5);
}

TEST_F(CliTest, CostDispositionForward) {
  RunConfig c = Base();
  const Json cost = Json::parse(RunCommand("cost", c));
  EXPECT_EQ(cost["params"], 1878216);
  c.Set("genotype", "handcrafted_second");
  EXPECT_EQ(Json::parse(RunCommand("cost", c))["params"], 1880568);

  c.Set("kernel", "icosa");
  const Json disp = Json::parse(RunCommand("disposition", c));
  EXPECT_EQ(disp["points"], 13);
  std::ifstream csv(dir_ / "disposition_icosa.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "index,x,y,z");

  c.Set("cloud", "synthetic:300");
  const Json fwd = Json::parse(RunCommand("forward", c));
  EXPECT_EQ(fwd["points"], 300);
  EXPECT_EQ(fwd["classes"], 19);
  EXPECT_EQ(fs::file_size(dir_ / "logits.bin") % 4, 0u);
  EXPECT_THROW(RunCommand("nonsense", c), Error);
}

TEST_F(CliTest, ExitCodes) {
  const std::string out = " --out " + dir_.string();
  EXPECT_EQ(RunBinary("cost" + out), 0);
  const Json line = Json::parse(ReadFile(dir_ / "stdout"));
  EXPECT_EQ(line["command"], "cost");
  EXPECT_EQ(RunBinary("cost --set bogus=1" + out), 2);
  EXPECT_NE(ReadFile(dir_ / "stderr").find("error: "), std::string::npos);
  WriteFile(dir_ / "bad.json", "{ not json");
  EXPECT_EQ(RunBinary("cost --set genotype=" + (dir_ / "bad.json").string() + out), 3);
  Genotype g = RandomGenotype(DefaultSpace(), 1);
  Json j = Json::parse(GenotypeToJson(g));
  j["stages"][4]["width"] = 41;
  WriteFile(dir_ / "off.json", j.dump());
  EXPECT_EQ(RunBinary("cost --set genotype=" + (dir_ / "off.json").string() + out), 4);
  EXPECT_NE(ReadFile(dir_ / "stderr").find("stage 5 width"), std::string::npos);
  EXPECT_EQ(RunBinary("search --set checkpoint=" + (dir_ / "none.ckpt").string() + out), 5);
}

TEST_F(CliTest, SeedFlagIsByteReproducible) {
  const std::string a = (dir_ / "a").string(), b = (dir_ / "b").string();
  const std::string common = " --seed 3 --set n_samples=40";
  ASSERT_EQ(RunBinary("gen-dataset --out " + a + common), 0);
  ASSERT_EQ(RunBinary("gen-dataset --out " + b + common), 0);
  EXPECT_EQ(ReadFile(dir_ / "a" / "dataset.jsonl"), ReadFile(dir_ / "b" / "dataset.jsonl"));
  ASSERT_EQ(RunBinary("gen-dataset --out " + b + " --seed 4 --set n_samples=40"), 0);
  EXPECT_NE(ReadFile(dir_ / "a" / "dataset.jsonl"), ReadFile(dir_ / "b" / "dataset.jsonl"));
}

}  // namespace
}  // namespace ptnas::cli
