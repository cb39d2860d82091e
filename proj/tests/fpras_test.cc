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


#include "phasegbs/fpras.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "phasegbs/error.hpp"
#include "phasegbs/oracles.hpp"

namespace phasegbs {
namespace {

using O = MeasurementOutcome;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(CheckQuadraticFactor, Boundary) {
  EXPECT_TRUE(CheckQuadraticFactor(2.0, 1.0, 0.5).holds);   // c a = b
  EXPECT_FALSE(CheckQuadraticFactor(1.9, 1.0, 0.5).holds);
  EXPECT_EQ(CodeOf([] { CheckQuadraticFactor(-1.0, 0.0, 0.5); }),
            ErrorCode::kNegativeCoefficient);
  LogConcavityCertificate c = CheckQuadraticFactor(3.0, 1.0, 1.0);
  EXPECT_NEAR(c.margin, 2.0, 1e-15);
  EXPECT_EQ(c.family, FactorFamily::kQuadraticFactor);
}

TEST(CheckThresholdFactor, Boundary) {
  // a >= (b^2 + 2 b c) / c
  EXPECT_TRUE(CheckThresholdFactor(4.0, 1.0, 0.5).holds);
  EXPECT_FALSE(CheckThresholdFactor(3.9, 1.0, 0.5).holds);
}

TEST(ScanLogConcavity, ConcaveFactorsHaveNoPositiveSecondDifference) {
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int i = 0; i < 30; ++i) {
    double b = u(g), c = u(g);
    double a = b / c * (1.0 + u(g));
    LineScan q = ScanLogConcavity(FactorFamily::kQuadraticFactor, a, b, c, 30, i);
    EXPECT_LE(q.max_second_difference, 1e-8) << a << " " << b << " " << c;
    double at = (b * b + 2 * b * c) / c * (1.0 + u(g));
    LineScan t = ScanLogConcavity(FactorFamily::kThresholdFactor, at, b, c, 30, i);
    EXPECT_LE(t.max_second_difference, 1e-8);
  }
}

TEST(ScanLogConcavity, QuadraticViolationIsFound) {
  LineScan q = ScanLogConcavity(FactorFamily::kQuadraticFactor, 0.5, 1.0, 1.0, 20, 3);
  EXPECT_GT(q.max_second_difference, 1e-12);
  LogConcavityCertificate c =
      WithNumericWitness(CheckQuadraticFactor(0.5, 1.0, 1.0), 20, 3);
  ASSERT_TRUE(c.witness_line.has_value());
  EXPECT_GT(c.witness_line->second_difference, 0.0);
}

TEST(FprasConditionPermanent, RatioTwoBoundary) {
  ConditionResult r = FprasConditionPermanent({0.4, 0.8});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.margin, 0.0);
  EXPECT_EQ(r.formula_id, "per_ratio");
  EXPECT_TRUE(r.coefficients_hold);
  EXPECT_FALSE(FprasConditionPermanent({0.39, 0.8}).holds);
  EXPECT_EQ(CodeOf([] { FprasConditionPermanent({0.0, 0.5}); }), ErrorCode::kZeroEigenvalue);
  EXPECT_EQ(CodeOf([] { FprasConditionPermanent({0.5, 1.0}); }), ErrorCode::kDomainError);
}

TEST(FprasConditions, GbsNoiseReferenceThreshold) {
  EXPECT_NEAR(GbsNoiseThreshold(0.5, 1.0), 3.787, 5e-4);
  EXPECT_TRUE(std::isinf(GbsNoiseThreshold(1.0, 0.3)));
  EXPECT_TRUE(FprasConditionGbsNoise(0.5, 1.0, 3.8).holds);
  EXPECT_FALSE(FprasConditionGbsNoise(0.5, 1.0, 3.7).holds);
}

TEST(FprasConditions, ThresholdsAtZeroSqueezing) {
  // r = 0: (sqrt(4) - 2) / 4 = 0 and (2 + 1 - 1) / 2 = 1.
  EXPECT_NEAR(HafnianConditionThreshold(0.0), 0.0, 1e-15);
  EXPECT_NEAR(TorSqueezedThermalThreshold(0.0), 1.0, 1e-15);
}

// The closed form and the per-factor coefficient check agree on random draws
// on both sides of each boundary.
TEST(FprasConditions, ClosedFormAgreesWithCoefficients) {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    double lmax = 0.05 + 0.9 * u(g);
    double ratio = 1.0 + 2.0 * u(g);
    ConditionResult p = FprasConditionPermanent({lmax / ratio, lmax});
    EXPECT_EQ(p.holds, p.coefficients_hold) << "permanent " << lmax << " " << ratio;

    double r = 1.5 * u(g);
    double nh = HafnianConditionThreshold(r) * (0.5 + u(g));
    ConditionResult h = FprasConditionHafnian(nh, r);
    EXPECT_EQ(h.holds, h.coefficients_hold) << "hafnian " << nh << " " << r;

    double a = u(g), b = u(g);
    ConditionResult t = FprasConditionTorThermal(std::min(a, b) * 0.999, std::max(a, b) * 0.999);
    EXPECT_EQ(t.holds, t.coefficients_hold) << "tor_thermal";

    double rs = 0.8 * u(g);
    double ns = TorSqueezedThermalThreshold(rs) * (0.5 + u(g));
    ConditionResult ts = FprasConditionTorSqueezedThermal(ns, rs);
    EXPECT_EQ(ts.holds, ts.coefficients_hold) << "tor_squeezed_thermal";

    double eta = 0.05 + 0.9 * u(g), rg = 1.2 * u(g);
    double nt = GbsNoiseThreshold(eta, rg) * (0.5 + u(g));
    ConditionResult gn = FprasConditionGbsNoise(eta, rg, nt);
    EXPECT_EQ(gn.holds, gn.coefficients_hold) << "gbs_noise";
  }
}

TEST(CircuitCertificates, HigherPhotonNumbersFail) {
  CircuitSpec c;
  c.modes = {{0.1, 2.0}, {0.1, 2.0}};
  c.unitary = HaarUnitary(2, 1);
  c.pattern = {O::PhotonNumber(2), O::Marginal()};
  std::vector<LogConcavityCertificate> certs = CircuitCertificates(c);
  ASSERT_EQ(certs.size(), 1u);
  EXPECT_FALSE(certs[0].holds);
  EXPECT_TRUE(std::isinf(certs[0].margin) && certs[0].margin < 0);
}

TEST(NormalQuantileTwoSided, ReferenceValues) {
  EXPECT_NEAR(NormalQuantileTwoSided(0.05), 1.959963984540054, 1e-10);
  EXPECT_NEAR(NormalQuantileTwoSided(0.01), 2.5758293035489004, 1e-10);
}

TEST(EstimatePermanentMultiplicative, RatioBelowTwoWithinTenPercent) {
  CMatrix b(2, 2);
  b << 3, 1, 1, 3;  // eigenvalues 2 and 4, ratio 2
  MultiplicativeConfig cfg;
  cfg.epsilon = 0.1;
  MultiplicativeEstimate e = EstimatePermanentMultiplicative(b, cfg);
  EXPECT_NEAR(e.value, 10.0, 1.0);
  EXPECT_LE(e.relative_half_width, 0.05 + 1e-12);
  EXPECT_GT(e.ess, 0.0);
}

TEST(EstimateMultiplicative, NotLogConcaveAndNonConvergent) {
  CircuitSpec c;
  c.modes = {{0.5, 0.0}};
  c.unitary = Interferometer::Identity(1);
  c.pattern = {O::PhotonNumber(2)};
  EXPECT_EQ(CodeOf([&] { EstimateMultiplicative(c, MultiplicativeConfig{}); }),
            ErrorCode::kNotLogConcave);

  CMatrix b(3, 3);
  b << 3, 0.5, 0, 0.5, 3, 0.5, 0, 0.5, 3;  // eigenvalue ratio 1.62
  MultiplicativeConfig cfg;
  cfg.epsilon = 0.01;
  cfg.max_samples = 2000;
  EXPECT_EQ(CodeOf([&] { EstimatePermanentMultiplicative(b, cfg); }),
            ErrorCode::kNonConvergent);
}

TEST(EstimateMultiplicative, DeterministicAcrossRuns) {
  CMatrix b(2, 2);
  b << 3, 1, 1, 3;
  MultiplicativeConfig cfg;
  MultiplicativeEstimate a = EstimatePermanentMultiplicative(b, cfg);
  cfg.parallel = false;
  MultiplicativeEstimate s = EstimatePermanentMultiplicative(b, cfg);
  EXPECT_EQ(a.value, s.value);
  EXPECT_EQ(a.n_used, s.n_used);
}

}  // namespace
}  // namespace phasegbs
