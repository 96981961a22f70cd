// Copyright 2026 The isocut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace isocut::cli {
namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "isocut");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("isocut_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  std::string dumbbell() {
    return write("dumbbell.hgr", "7 6\n1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n3 4\n");
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, MincutVerifyMatches) {
  const Outcome o = run_cli({"mincut", dumbbell(), "--verify", "--seed", "5"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["min_cut_value"], 1);
  EXPECT_EQ(j["side"], nlohmann::json::array({1, 2, 3}));
  EXPECT_EQ(j["verification"]["status"], "match");
  for (const char* key : {"n", "m", "p", "flow_calls", "blackbox_calls", "seed", "trials",
                          "oracle_queries", "repetitions", "k_schedule"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["n"], 6);
  EXPECT_EQ(j["m"], 7);
  EXPECT_EQ(j["p"], 14);
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["flow_calls"], j["blackbox_calls"]);
  EXPECT_FALSE(j.contains("wall_time_ms"));
}

TEST_F(CliTest, MincutJsonInputAndText) {
  const std::string file = write(
      "g.json", R"({"n": 3, "edges": [{"verts": [1, 2, 3], "w": 5}]})");
  const Outcome o = run_cli({"mincut", file, "--text"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("min cut value: 5"), std::string::npos);
  EXPECT_NE(o.out.find("side: {1}"), std::string::npos);
}

TEST_F(CliTest, MincutMalformedFile) {
  const Outcome o = run_cli({"mincut", write("bad.hgr", "3 3\n1 2\n2 3\n")});
  EXPECT_EQ(o.code, kExitInput);
  EXPECT_NE(o.err.find("line 4"), std::string::npos);
  EXPECT_EQ(run_cli({"mincut", (dir_ / "missing.hgr").string()}).code, kExitInput);
}

TEST_F(CliTest, MincutVerifySkippedAboveCap) {
  const Outcome gen = run_cli({"gen", "--n", "30", "--m", "60", "--max-rank", "4", "--seed", "2"});
  ASSERT_EQ(gen.code, kExitOk);
  const Outcome o = run_cli({"mincut", write("big.hgr", gen.out), "--verify", "--reps", "3"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.err.find("verification skipped"), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(o.out)["verification"]["status"], "skipped");
}

TEST_F(CliTest, MincutIsDeterministicAndHonorsEnvSeed) {
  const std::string file = dumbbell();
  EXPECT_EQ(run_cli({"mincut", file, "--seed", "9"}).out, run_cli({"mincut", file, "--seed", "9"}).out);
  ::setenv("ISOCUT_SEED", "9", 1);
  const Outcome env = run_cli({"mincut", file});
  ::unsetenv("ISOCUT_SEED");
  EXPECT_EQ(nlohmann::json::parse(env.out)["seed"], 9);
  EXPECT_EQ(env.out, run_cli({"mincut", file, "--seed", "9"}).out);
}

TEST_F(CliTest, TimingFlagAddsWallTime) {
  const Outcome o = run_cli({"mincut", dumbbell(), "--timing"});
  EXPECT_TRUE(nlohmann::json::parse(o.out).contains("wall_time_ms"));
}

TEST_F(CliTest, IsolateStar) {
  const std::string star = write("star.hgr", "3 4\n1 2\n1 3\n1 4\n");
  const Outcome o = run_cli({"isolate", star, "--terminals", "2,3"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  ASSERT_EQ(j["terminals"].size(), 2u);
  for (const auto& row : j["terminals"]) EXPECT_EQ(row["value"], 1);
  EXPECT_EQ(j["step1_calls"], 1);
  EXPECT_EQ(j["step2_calls"], 2);
  EXPECT_LE(j["cell_size_total"].get<int>(), 4);

  const Outcome text = run_cli({"isolate", star, "--terminals", "2,3", "--text"});
  EXPECT_NE(text.out.find("step 1 calls: 1, step 2 calls: 2"), std::string::npos);
}

TEST_F(CliTest, IsolateAllVertices) {
  const std::string star = write("star.hgr", "3 4\n1 2\n1 3\n1 4\n");
  const auto j = nlohmann::json::parse(run_cli({"isolate", star, "--terminals", "1,2,3,4"}).out);
  for (const auto& row : j["terminals"]) {
    EXPECT_EQ(row["isolating_set"], nlohmann::json::array({row["terminal"]}));
  }
}

TEST_F(CliTest, IsolateUsageErrors) {
  const std::string star = write("star.hgr", "3 4\n1 2\n1 3\n1 4\n");
  EXPECT_EQ(run_cli({"isolate", star, "--terminals", "2,2"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"isolate", star, "--terminals", "2"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"isolate", star, "--terminals", "2,9"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"isolate", star, "--terminals", "2,x"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"isolate", star}).code, kExitUsage);
}

TEST_F(CliTest, GenPlantedAndDeterministic) {
  const std::vector<std::string> args{"gen", "--model", "planted", "--n", "12", "--m", "30",
                                      "--max-rank", "4", "--max-weight", "6", "--seed", "4"};
  const Outcome a = run_cli(args);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, run_cli(args).out);
  const auto pos = a.out.find("% planted cut value = ");
  ASSERT_NE(pos, std::string::npos);
  const Value planted = std::stoll(a.out.substr(pos + 22));
  const Hypergraph h = parse_hypergraph(a.out);
  EXPECT_EQ(h.vertex_count(), 12u);
  EXPECT_EQ(cut_value(h, ElementSubset(12, {0, 1, 2, 3})), planted);
}

TEST_F(CliTest, GenUsageErrors) {
  EXPECT_EQ(run_cli({"gen", "--max-rank", "1"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"gen", "--model", "bogus"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"gen", "--n", "1"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"gen", "--m", "0"}).code, kExitUsage);
}

TEST_F(CliTest, SfmDemos) {
  const auto concave = nlohmann::json::parse(run_cli({"sfm", "--demo", "concave:8"}).out);
  EXPECT_EQ(concave["min_value"], 1);
  EXPECT_EQ(concave["side"].size(), 1u);
  EXPECT_GT(concave["oracle_queries"].get<int>(), 0);

  const auto builtin = nlohmann::json::parse(run_cli({"sfm", "--demo", "cut:dumbbell"}).out);
  EXPECT_EQ(builtin["min_value"], 1);
  const auto file = nlohmann::json::parse(run_cli({"sfm", "--demo", "cut:" + dumbbell()}).out);
  EXPECT_EQ(file["min_value"], 1);

  EXPECT_EQ(run_cli({"sfm", "--demo", "concave:1"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"sfm", "--demo", "linear:4"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"sfm", "--demo", "concave"}).code, kExitUsage);
}

TEST_F(CliTest, NoSubcommandIsUsageError) {
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace isocut::cli
