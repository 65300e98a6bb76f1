// Copyright 2026 The iotplace Authors
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
#include "../tools/commands.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <sstream>

#include "iotplace/io.hpp"
#include "test_support.hpp"

namespace iotplace::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "iotplace");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("iotplace_cli_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    write_file(dir_ / name, text);
    return path(name);
  }

  std::string mini_path() const { return iotplace::testing::data_path("mini.json"); }

  fs::path dir_;
};

TEST_F(CliTest, Validate) {
  Result r = run_cli({"validate", mini_path()});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "ok\n");

  std::string text = read_file(mini_path());
  const auto pos = text.find("\"parent\": \"edge1\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 17, "\"parent\": null");
  r = run_cli({"validate", write("orphan.json", text)});
  EXPECT_EQ(r.code, kInvalidInput);
  EXPECT_NE(r.out.find("missing parent"), std::string::npos);

  EXPECT_EQ(run_cli({"validate", path("missing.json")}).code, kInvalidInput);
}

TEST_F(CliTest, SolveExact) {
  const Result r = run_cli({"solve", mini_path(), "--solver", "exact", "--out", path("s.json")});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(load_placement(path("s.json")), iotplace::testing::p1());
  for (const char* kind : {"greedy", "anneal"}) {
    const Result h = run_cli({"solve", mini_path(), "--solver", kind});
    EXPECT_EQ(h.code, kOk);
    EXPECT_EQ(parse_placement(h.out), iotplace::testing::p1());
  }
}

TEST_F(CliTest, SolveInfeasibleAndLimits) {
  EXPECT_EQ(run_cli({"solve", mini_path(), "--budget", "0.1"}).code, kInfeasible);
  EXPECT_EQ(run_cli({"solve", mini_path(), "--max-states", "5"}).code, kSearchLimit);
  EXPECT_EQ(run_cli({"solve", mini_path(), "--solver", "tabu"}).code, kInvalidInput);
  EXPECT_EQ(run_cli({"solve", path("missing.json")}).code, kInvalidInput);
}

TEST_F(CliTest, SimulateAgreesWithEvaluate) {
  const std::string placement = write("p1.json", dump_placement(iotplace::testing::p1()));
  const Result r = run_cli({"simulate", mini_path(), placement, "--csv", path("slots.csv")});
  EXPECT_EQ(r.code, kOk) << r.err;
  const Bundle b = iotplace::testing::mini();
  const CostReport expected = evaluate(b.topology, b.spec, iotplace::testing::p1());
  const auto summary = nlohmann::json::parse(r.out);
  EXPECT_TRUE(iotplace::testing::rel_close(summary["total_cost"], expected.total_cost));
  EXPECT_TRUE(iotplace::testing::rel_close(summary["network_cost"], expected.network_cost));
  EXPECT_EQ(summary["mean_latency_ms"], 92.0);
  EXPECT_EQ(summary["feasible"], true);
  EXPECT_NE(read_file(path("slots.csv")).find("1,cam1,3.672,0.8,0.0108,0,92"),
            std::string::npos);
}

TEST_F(CliTest, SimulateOverloadAndUnknownNode) {
  Bundle b = iotplace::testing::mini();
  b.spec.scenario.source_rate_mbps = 20.0;  // 4 CPU units on a 2-unit gateway
  const std::string bundle = write("hot.json", dump_bundle(b));
  const std::string placement = write("p1.json", dump_placement(iotplace::testing::p1()));
  const Result r = run_cli({"simulate", bundle, placement});
  EXPECT_EQ(r.code, kInfeasible);
  EXPECT_NE(r.out.find("\"gw1\""), std::string::npos);

  Placement ghost = iotplace::testing::p1();
  ghost.agg_node = "dc9";
  EXPECT_EQ(run_cli({"simulate", mini_path(), write("ghost.json", dump_placement(ghost))}).code,
            kInvalidInput);
}

TEST_F(CliTest, Sweep) {
  const Result r = run_cli({"sweep", mini_path(), "--budgets", "0.1,2.0,5.0"});
  EXPECT_EQ(r.code, kOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, row1, row2, row3, extra;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  std::getline(lines, row3);
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_EQ(header + "\n", sweep_csv_header());
  EXPECT_EQ(row1, "0.1,false,,,,,,");
  EXPECT_EQ(row2.rfind("2,true,92,1.9716", 0), 0u) << row2;
  EXPECT_EQ(row3.rfind("5,true,92,1.9716", 0), 0u) << row3;

  const Result one = run_cli({"sweep", mini_path(), "--budgets", "3"});
  EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 2);
}

TEST_F(CliTest, Gen) {
  const std::vector<std::string> args = {"gen", "--devices", "8", "--slots", "10", "--seed", "1"};
  auto with_out = [&](const std::string& out) {
    auto a = args;
    a.insert(a.end(), {"--out", out});
    return a;
  };
  EXPECT_EQ(run_cli(with_out(path("a.json"))).code, kOk);
  EXPECT_EQ(run_cli(with_out(path("b.json"))).code, kOk);
  EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  EXPECT_EQ(run_cli({"validate", path("a.json")}).code, kOk);

  EXPECT_EQ(run_cli({"gen", "--devices", "1", "--out", path("one.json")}).code, kOk);
  EXPECT_EQ(run_cli({"validate", path("one.json")}).code, kOk);
  EXPECT_EQ(load_bundle(path("one.json")).topology.ids_on(Layer::Device).size(), 1u);

  EXPECT_EQ(run_cli({"gen", "--devices", "0"}).code, kInvalidInput);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kInvalidInput);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kInvalidInput);
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
}

}  // namespace
}  // namespace iotplace::cli
