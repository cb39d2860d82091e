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


#include "phasegbs/estimator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "phasegbs/error.hpp"
#include "phasegbs/oracles.hpp"

namespace phasegbs {
namespace {

using O = MeasurementOutcome;

CircuitSpec LossyTwoMode(MeasurementPattern p) {
  CircuitSpec c;
  c.modes = {{0.4, 0.1}, {0.25, 0.0}};
  c.eta = 0.8;
  CMatrix w(2, 2);
  w << std::cos(0.6), -std::sin(0.6), std::sin(0.6), std::cos(0.6);
  c.unitary = Interferometer::FromTransfer(w);
  c.pattern = std::move(p);
  return c;
}

CircuitSpec RandomCircuit(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> modes(1, 3), pn(0, 2);
  CircuitSpec c;
  int m = modes(g);
  for (int i = 0; i < m; ++i) c.modes.push_back({u(g), u(g) < 0.5 ? 0.0 : u(g)});
  c.eta = 0.3 + 0.7 * u(g);
  c.unitary = HaarUnitary(m, g());
  for (int i = 0; i < m; ++i) c.pattern.push_back(O::PhotonNumber(pn(g)));
  return c;
}

TEST(SampleCount, ClosedForm) {
  // ceil(2 C^{2M} ln(2/delta) / eps^2) = ceil(8811.948...)
  EXPECT_EQ(SampleCount(1.2, 3, 0.05, 0.05), 8812);
  EXPECT_EQ(SampleCount(0.0, 3, 0.05, 0.05), 1);
  try {
    SampleCount(40.0, 20, 0.01, 0.05);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetOverflow);
  }
  EXPECT_THROW(SampleCount(1.0, 1, 0.0, 0.05), Error);
}

TEST(EstimateProbability, WithinRadiusOfExact) {
  for (auto p : std::vector<MeasurementPattern>{{O::PhotonNumber(1), O::PhotonNumber(1)},
                                                {O::PhotonNumber(2), O::PhotonNumber(0)},
                                                {O::Click(), O::PhotonNumber(0)},
                                                {O::PhotonNumber(1), O::Marginal()}}) {
    CircuitSpec c = LossyTwoMode(p);
    EstimatorConfig cfg;
    cfg.n_samples = 200000;
    cfg.seed = 5;
    EstimateReport r = EstimateProbability(c, cfg);
    double exact = ExactPatternProbability(c, p);
    EXPECT_LE(std::abs(r.estimate - exact), r.conf_radius) << p[0].ToString() << p[1].ToString();
    EXPECT_EQ(r.n_used, 200000);
    EXPECT_GT(r.conf_radius, 0.0);
  }
}

TEST(EstimateProbability, DeterministicAndThreadIndependent) {
  CircuitSpec c = LossyTwoMode({O::PhotonNumber(1), O::PhotonNumber(1)});
  EstimatorConfig cfg;
  cfg.n_samples = 50000;
  cfg.seed = 17;
  EstimateReport a = EstimateProbability(c, cfg);
  EstimateReport b = EstimateProbability(c, cfg);
  cfg.parallel = false;
  EstimateReport s = EstimateProbability(c, cfg);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.estimate, s.estimate);
  EXPECT_EQ(a.std_error, s.std_error);
  cfg.seed = 18;
  EXPECT_NE(EstimateProbability(c, cfg).estimate, a.estimate);
}

TEST(EstimateProbability, FoldedAndNaiveAgree) {
  CircuitSpec c = LossyTwoMode({O::PhotonNumber(2), O::PhotonNumber(1)});
  EstimatorConfig cfg;
  cfg.n_samples = 200000;
  EstimateReport f = EstimateProbability(c, cfg);
  cfg.fold = false;
  cfg.seed = 99;
  EstimateReport n = EstimateProbability(c, cfg);
  EXPECT_LE(std::abs(f.estimate - n.estimate), f.conf_radius + n.conf_radius);
}

TEST(EstimateProbability, AllMarginalIsExactlyOne) {
  CircuitSpec c = LossyTwoMode({O::Marginal(), O::Marginal()});
  EstimatorConfig cfg;
  cfg.n_samples = 10;
  EXPECT_NEAR(EstimateProbability(c, cfg).estimate, 1.0, 1e-12);
}

TEST(EstimateProbability, OrderingAndShiftErrors) {
  CircuitSpec c = LossyTwoMode({O::PhotonNumber(1), O::PhotonNumber(1)});
  EstimatorConfig cfg;
  cfg.n_samples = 10;
  cfg.s = c.s_max() + 0.1;
  try {
    EstimateProbability(c, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularOrdering);
  }
  cfg.s = -1.5;
  EXPECT_THROW(EstimateProbability(c, cfg), Error);
  cfg.s.reset();
  cfg.gamma_mode = GammaMode::kFixed;
  cfg.gamma = 1.0;
  try {
    EstimateProbability(c, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShiftOutOfRange);
  }
}

// Shifting the Gaussian between input and measurement leaves the integrand
// unchanged, so every shift estimates the same number.
TEST(EstimateProbability, FixedShiftsAgree) {
  CircuitSpec c = LossyTwoMode({O::PhotonNumber(1), O::PhotonNumber(0)});
  double exact = ExactPatternProbability(c, c.pattern);
  for (auto dir : {ShiftDirection::kForward, ShiftDirection::kReverse}) {
    for (double g : {0.0, 0.3, 0.7}) {
      EstimatorConfig cfg;
      cfg.n_samples = 100000;
      cfg.gamma_mode = GammaMode::kFixed;
      cfg.gamma = g;
      cfg.direction = dir;
      EstimateReport r = EstimateProbability(c, cfg);
      EXPECT_LE(std::abs(r.estimate - exact), r.conf_radius) << g;
    }
  }
}

TEST(NegativityBounds, ShiftedBoundNeverWorseThanUnshifted) {
  std::mt19937_64 g(3);
  for (int i = 0; i < 40; ++i) {
    CircuitSpec c = RandomCircuit(g);
    double s = DefaultOrdering(c);
    double neg = NegativityBound(c, s);
    EXPECT_NEAR(ModifiedNegativityBound(c, s, 0.0, ShiftDirection::kForward), neg,
                1e-12 * neg);
    GammaChoice gc = ChooseGamma(c, s, /*fold=*/false);
    EXPECT_LE(ModifiedNegativityBound(c, s, gc.gamma, gc.direction), neg * (1 + 1e-9));
  }
}

TEST(ComputeFactorBound, StationaryPointsMatchNumericSearch) {
  std::mt19937_64 g(4);
  for (int i = 0; i < 20; ++i) {
    CircuitSpec c = RandomCircuit(g);
    double s = DefaultOrdering(c);
    GammaChoice gc = ChooseGamma(c, s);
    FactorBound fb = ComputeFactorBound(c, s, gc.gamma, gc.direction);
    ASSERT_EQ(fb.per_mode.size(), fb.per_mode_numeric.size());
    for (std::size_t k = 0; k < fb.per_mode.size(); ++k) {
      EXPECT_NEAR(fb.per_mode[k], fb.per_mode_numeric[k], 1e-6 * std::max(1.0, fb.per_mode[k]));
    }
  }
}

TEST(OptimalGamma, SqueezedThermalHeuristic) {
  GammaChoice g = OptimalGammaSqueezedThermal(0.5, 0.3);
  EXPECT_NEAR(g.gamma, std::exp(-std::tanh(0.3)) * 0.5 / 1.5, 1e-15);
  EXPECT_EQ(g.direction, ShiftDirection::kReverse);
}

TEST(DefaultOrdering, JustBelowClassicality) {
  CircuitSpec c = LossyTwoMode({O::PhotonNumber(1), O::PhotonNumber(1)});
  EXPECT_NEAR(DefaultOrdering(c), c.s_max() - 1e-9, 1e-15);
}

TEST(ConvergenceTrace, MarksAndFinalRadius) {
  CircuitSpec c = LossyTwoMode({O::PhotonNumber(1), O::PhotonNumber(1)});
  EstimatorConfig cfg;
  cfg.n_samples = 40000;
  std::vector<TracePoint> t = ConvergenceTrace(c, cfg, 8);
  ASSERT_EQ(t.size(), 8u);
  EXPECT_EQ(t.back().n, 40000);
  for (std::size_t i = 1; i < t.size(); ++i) {
    EXPECT_GT(t[i].n, t[i - 1].n);
    EXPECT_LT(t[i].running_radius, t[i - 1].running_radius);
  }
  double exact = ExactPatternProbability(c, c.pattern);
  EXPECT_LE(std::abs(t.back().running_mean - exact), t.back().running_radius);
}

TEST(EstimatePermanentHpsd, TwoByTwoWithinBudget) {
  CMatrix b(2, 2);
  b << 2, 1, 1, 2;
  EstimatorConfig cfg;
  MatrixEstimate e = EstimatePermanentHpsd(b, cfg);
  EXPECT_LE(std::abs(e.value - 5.0), e.error_budget);
  EXPECT_EQ(e.formula_id, "per2");
  EXPECT_LE(e.error_budget, e.uniform_budget);
}

TEST(EstimateHafnianSq, WithinBudget) {
  CMatrix r(2, 2);
  r << 0.3, 0.1, 0.1, 0.2;
  MatrixEstimate e = EstimateHafnianSq(r, EstimatorConfig{});
  EXPECT_LE(std::abs(e.value - 0.01), e.error_budget);  // |Haf|^2 = 0.1^2
  EXPECT_EQ(e.formula_id, "addhafr");
}

TEST(EstimateTorontonian, ThermalBlockWithinBudget) {
  CMatrix b(2, 2);
  b << 0.3, Complex(0.1, 0.05), Complex(0.1, -0.05), 0.2;
  CMatrix o = CMatrix::Zero(4, 4);
  o.topLeftCorner(2, 2) = b.transpose();
  o.bottomRightCorner(2, 2) = b;
  MatrixClass m = MatrixClass::Make(MatrixTag::kBlockBprime, o);
  MatrixEstimate e = EstimateTorontonian(m, EstimatorConfig{});
  EXPECT_LE(std::abs(e.value - 0.1479125896934117), e.error_budget);
  EXPECT_EQ(e.formula_id, "addtorb");
}

}  // namespace
}  // namespace phasegbs
