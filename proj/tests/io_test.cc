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


#include "phasegbs/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace phasegbs {
namespace {

std::string PointerOf(const std::string& text,
                      const std::function<void(const Json&)>& parse) {
  try {
    parse(ParseJsonText(text));
  } catch (const SchemaError& e) {
    return e.pointer();
  }
  ADD_FAILURE() << "expected a SchemaError for " << text;
  return "";
}

auto kCircuit = [](const Json& j) { ParseCircuit(j); };
auto kMatrix = [](const Json& j) { ParseMatrix(j); };

TEST(ParseCircuit, MinimalSingleMode) {
  CircuitSpec c = ParseCircuit(ParseJsonText(R"({"modes": [{"r": 0.3}]})"));
  ASSERT_EQ(c.num_modes(), 1);
  EXPECT_DOUBLE_EQ(c.modes[0].r, 0.3);
  EXPECT_DOUBLE_EQ(c.modes[0].n, 0.0);
  EXPECT_DOUBLE_EQ(c.eta, 1.0);
  ASSERT_EQ(c.pattern.size(), 1u);
  EXPECT_EQ(c.pattern[0], MeasurementOutcome::Marginal());
}

TEST(ParseCircuit, FullSchema) {
  CircuitSpec c = ParseCircuit(ParseJsonText(R"({
    "modes": [{"r": 0.3, "n": 0.1}, {"r": 0.0, "n": 0.2}],
    "eta": 0.9, "n_th": 0.05,
    "unitary": {"re": [[0, 1], [1, 0]], "im": [[0, 0], [0, 0]]},
    "pattern": [2, "click"]})"));
  EXPECT_DOUBLE_EQ(c.eta, 0.9);
  EXPECT_DOUBLE_EQ(c.n_th, 0.05);
  EXPECT_EQ(c.pattern[0], MeasurementOutcome::PhotonNumber(2));
  EXPECT_EQ(c.pattern[1], MeasurementOutcome::Click());
  EXPECT_NEAR(std::abs(c.unitary.transfer()(0, 1) - Complex(1, 0)), 0.0, 1e-15);
}

TEST(ParseCircuit, SchemaErrorsCarryPointers) {
  EXPECT_EQ(PointerOf(R"({"modes": [{"r": 0.3}], "eta": 1.5})", kCircuit), "/eta");
  EXPECT_EQ(PointerOf(R"({"modes": [{"r": 0.3}], "colour": 1})", kCircuit), "/colour");
  EXPECT_EQ(PointerOf(R"({"modes": [{"r": 0.3, "q": 1}]})", kCircuit), "/modes/0/q");
  EXPECT_EQ(PointerOf(R"({"modes": [{"r": "x"}]})", kCircuit), "/modes/0/r");
  EXPECT_EQ(PointerOf(R"({"modes": [{"r": 0.1}], "pattern": [-1]})", kCircuit), "/pattern/0");
  EXPECT_EQ(PointerOf(R"({"modes": [{"r": 0.1}], "pattern": ["on"]})", kCircuit), "/pattern/0");
  EXPECT_EQ(PointerOf(R"({"modes": [{"r": 0.1}], "unitary": {"re": [[2]]}})", kCircuit),
            "/unitary");
  EXPECT_EQ(PointerOf(R"({"modes": [{"r": 0.1}], "unitary": {"haar_seed": -2}})", kCircuit),
            "/unitary/haar_seed");
  EXPECT_EQ(PointerOf("{not json", kCircuit), "/");
}

TEST(ParseCircuit, HaarSeedIsDeterministic) {
  const char* text = R"({"modes": [{"r": 0.1}, {"r": 0.2}, {"r": 0.3}],
                         "unitary": {"haar_seed": 12}})";
  CircuitSpec a = ParseCircuit(ParseJsonText(text));
  CircuitSpec b = ParseCircuit(ParseJsonText(text));
  EXPECT_EQ((a.unitary.u - b.unitary.u).norm(), 0.0);
  EXPECT_EQ(DumpJson(CircuitJson(a)), DumpJson(CircuitJson(b)));
}

TEST(CircuitJson, RoundTrip) {
  CircuitSpec a = ParseCircuit(ParseJsonText(R"({
    "modes": [{"r": 0.3, "n": 0.1}, {"r": 0.2}], "eta": 0.7,
    "unitary": {"haar_seed": 3}, "pattern": [1, "noclick"]})"));
  CircuitSpec b = ParseCircuit(CircuitJson(a));
  EXPECT_LT((a.unitary.u - b.unitary.u).norm(), 1e-15);
  EXPECT_EQ(b.pattern[1], MeasurementOutcome::NoClick());
  EXPECT_DOUBLE_EQ(b.eta, 0.7);
}

TEST(ParseMatrix, TagsAndDimension) {
  MatrixClass m = ParseMatrix(ParseJsonText(
      R"({"m": 2, "tag": "HpsdB", "re": [[2, 1], [1, 2]], "im": [[0, 0], [0, 0]]})"));
  EXPECT_EQ(m.tag(), MatrixTag::kHpsdB);
  EXPECT_DOUBLE_EQ(m.scale(), 1.001);
  EXPECT_NEAR(m.decomposition().lambda[0], 3.0, 1e-12);
  EXPECT_EQ(PointerOf(R"({"m": 3, "tag": "HpsdB", "re": [[2, 1], [1, 2]]})", kMatrix), "/m");
  EXPECT_EQ(PointerOf(R"({"tag": "Nope", "re": [[1]]})", kMatrix), "/tag");
  EXPECT_EQ(PointerOf(R"({"re": [[1]]})", kMatrix), "/tag");
  EXPECT_EQ(PointerOf(R"({"tag": "HpsdB", "re": [[1, 2]]})", kMatrix), "/re/0");
  EXPECT_EQ(PointerOf(R"({"tag": "HpsdB", "re": [[1, 0], [0, -1]]})", kMatrix), "/re");
  // Block tags accept the mode count as "m".
  MatrixClass b = ParseMatrix(ParseJsonText(
      R"({"m": 1, "tag": "BlockBprime", "re": [[0.3, 0], [0, 0.3]]})"));
  EXPECT_EQ(b.num_modes(), 1);
}

TEST(MatrixJson, RoundTrip) {
  MatrixClass m = ParseMatrix(ParseJsonText(
      R"({"tag": "ComplexSymmetricR", "re": [[0.3, 0.1], [0.1, 0.2]], "im": [[0, 0.05], [0.05, 0]]})"));
  MatrixClass r = ParseMatrix(MatrixJson(m));
  EXPECT_EQ(r.tag(), m.tag());
  EXPECT_LT((r.data() - m.data()).norm(), 1e-15);
}

TEST(Number, NonFiniteAsStrings) {
  EXPECT_EQ(Number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(Number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(Number(std::nan("")), "nan");
  EXPECT_EQ(Number(1.5), 1.5);
}

TEST(ReportJson, EstimateReportFields) {
  EstimateReport r;
  r.estimate = 0.25;
  r.seed = 7;
  r.gamma_source = "addtorb";
  r.wall_time = 1.0;
  Json j = ReportJson(r, false);
  EXPECT_EQ(j["estimate"], 0.25);
  EXPECT_EQ(j["formula_id"], "addtorb");
  EXPECT_FALSE(j.contains("wall_time"));
  EXPECT_TRUE(ReportJson(r, true).contains("wall_time"));
}

TEST(ReportJson, CertificateNamesFormulaId) {
  Json q = CertificateJson(CheckQuadraticFactor(2.0, 1.0, 1.0));
  EXPECT_EQ(q["formula_id"], "lemma2");
  Json t = CertificateJson(CheckThresholdFactor(5.0, 1.0, 1.0));
  EXPECT_EQ(t["formula_id"], "lemma1");
}

TEST(DumpJson, StableAndNewlineTerminated) {
  Json j;
  j["b"] = 1;
  j["a"] = 2;
  std::string s = DumpJson(j);
  EXPECT_EQ(s, "{\n  \"b\": 1,\n  \"a\": 2\n}\n");
}

}  // namespace
}  // namespace phasegbs
