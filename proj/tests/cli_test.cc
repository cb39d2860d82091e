// Copyright 2026 The phasegbs Authors
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


// Runs the phasegbs binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

using Json = nlohmann::json;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun Exec(const std::string& args) {
  std::string cmd = std::string(PHASEGBS_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string WriteFile(const std::string& name, const std::string& body) {
  std::string path = ::testing::TempDir() + "/" + name;
  std::ofstream(path) << body;
  return path;
}

const char* kPer22 = R"({"m": 2, "tag": "HpsdB", "re": [[2, 1], [1, 2]], "im": [[0, 0], [0, 0]]})";
const char* kCircuit = R"({"modes": [{"r": 0.4, "n": 0.1}, {"r": 0.25}], "eta": 0.8,
  "unitary": {"haar_seed": 4}, "pattern": [1, 1]})";

TEST(Cli, EstimatePerOracleCheck) {
  std::string f = WriteFile("per22.json", kPer22);
  CliRun r = Exec("estimate-per " + f + " --oracle-check");
  ASSERT_EQ(r.code, 0) << r.out;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["tool"], "phasegbs");
  EXPECT_EQ(j["seed"], 0);
  EXPECT_FALSE(j["version"].get<std::string>().empty());
  EXPECT_DOUBLE_EQ(j["oracle"]["value"].get<double>(), 5.0);
  double est = j["result"]["estimate"];
  double budget = j["result"]["error_budget"];
  EXPECT_LE(std::abs(est - 5.0), budget);
  EXPECT_TRUE(j["oracle"]["within"].get<bool>());
  EXPECT_EQ(j["result"]["formula_id"], "per2");
}

TEST(Cli, CheckFprasRatioTwoBoundary) {
  CliRun r = Exec("check-fpras --family permanent --lambdas 0.4,0.8");
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["result"]["holds"].get<bool>());
  EXPECT_EQ(j["result"]["margin"].get<double>(), 0.0);
  EXPECT_EQ(j["result"]["formula_id"], "per_ratio");
}

TEST(Cli, ConditionFailureExitsTwo) {
  CliRun r = Exec("check-fpras --family permanent --lambdas 0.3,0.8");
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(Json::parse(r.out)["result"]["holds"].get<bool>());
  // ratio 3: not log-concave
  std::string f = WriteFile("per22m.json", kPer22);
  EXPECT_EQ(Exec("estimate-per " + f + " --method multiplicative").code, 2);
}

TEST(Cli, InputErrorsExitOne) {
  std::string f = WriteFile("per22e.json", kPer22);
  EXPECT_EQ(Exec("estimate-per " + f + " --no-such-flag").code, 1);
  EXPECT_EQ(Exec("estimate-per /nonexistent.json").code, 1);
  std::string bad = WriteFile("bad.json", R"({"modes": [{"r": 0.1}], "eta": 2})");
  EXPECT_EQ(Exec("estimate-prob " + bad).code, 1);
  EXPECT_EQ(Exec("estimate-tor " + f).code, 1);  // tag does not match command
  EXPECT_EQ(Exec("").code, 1);
}

TEST(Cli, ReportsAreByteIdentical) {
  std::string c = WriteFile("circ.json", kCircuit);
  CliRun a = Exec("estimate-prob " + c + " --seed 3");
  CliRun b = Exec("estimate-prob " + c + " --seed 3");
  CliRun s = Exec("estimate-prob " + c + " --seed 3 --threads 1");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, s.out);
  EXPECT_EQ(Json::parse(a.out)["seed"], 3);
  EXPECT_NE(a.out, Exec("estimate-prob " + c + " --seed 4").out);
}

TEST(Cli, EstimateProbWithinRadius) {
  std::string c = WriteFile("circ2.json", kCircuit);
  CliRun r = Exec("estimate-prob " + c + " --oracle-check --n-samples 200000");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(Json::parse(r.out)["oracle"]["within"].get<bool>());
}

TEST(Cli, ConvergenceCsv) {
  std::string c = WriteFile("circ3.json", kCircuit);
  CliRun r = Exec("convergence " + c + " --points 5 --n-samples 5000 --oracle-check");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_NE(line.find("seed=0"), std::string::npos);
  std::getline(in, line);
  EXPECT_EQ(line, "n,running_mean,running_radius,oracle_value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Cli, BoundsAndOracle) {
  std::string f = WriteFile("per22b.json", kPer22);
  CliRun b = Exec("bounds " + f);
  ASSERT_EQ(b.code, 0);
  Json j = Json::parse(b.out);
  EXPECT_EQ(j["budget"]["formula_id"], "per2");
  EXPECT_TRUE(j["bounds"].contains("lower"));
  CliRun o = Exec("oracle " + f);
  ASSERT_EQ(o.code, 0);
  EXPECT_DOUBLE_EQ(Json::parse(o.out)["value"].get<double>(), 5.0);
  std::string r = WriteFile("r.json", R"({"tag": "ComplexSymmetricR", "re": [[0.3, 0.1], [0.1, 0.2]]})");
  EXPECT_EQ(Exec("bounds " + r).code, 2);  // no bounds exist for |Haf(R)|^2
}

TEST(Cli, OutputFlagWritesFile) {
  std::string f = WriteFile("per22o.json", kPer22);
  std::string out = ::testing::TempDir() + "/report.json";
  CliRun r = Exec("oracle " + f + " --output " + out);
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  Json j = Json::parse(in);
  EXPECT_EQ(j["command"], "oracle");
}

TEST(Cli, AcceptanceSingleCriterion) {
  CliRun r = Exec("acceptance --only 10");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("PASS [10]", 0), 0u) << r.out;
}

}  // namespace
