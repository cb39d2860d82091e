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


#include "phasegbs/phase_space.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "phasegbs/error.hpp"

namespace phasegbs {
namespace {

constexpr double kPi = std::numbers::pi;

// Reference values below come from an arbitrary-precision evaluation of the
// Laguerre closed form, cross-checked against the Born rule for thermal light.
TEST(PqdPhotonNumber, MatchesReferenceValues) {
  EXPECT_NEAR(PqdPhotonNumber(0, 0.5, {0.3, 0.0}), 0.37642072435402177, 1e-14);
  EXPECT_NEAR(PqdPhotonNumber(1, 0.5, {0.0, 0.3}), -0.065246258888030445, 1e-14);
  EXPECT_NEAR(PqdPhotonNumber(2, 0.2, {0.7, 0.0}), -0.1041035109213191, 1e-14);
  EXPECT_NEAR(PqdPhotonNumber(3, 0.9, {1.1 / std::sqrt(2.0), 1.1 / std::sqrt(2.0)}),
              0.025382874685536536, 1e-14);
  EXPECT_NEAR(PqdPhotonNumber(5, 0.3, {0.45, 0.0}), 0.0087390114783132087, 1e-14);
}

TEST(PqdThresholdClick, MatchesReferenceValues) {
  EXPECT_NEAR(PqdThresholdClick(0.5, {0.3, 0.0}), -0.18256058228954336, 1e-14);
  EXPECT_NEAR(PqdThresholdClick(0.9, {0.0, 1.2}), 0.76880555731367554, 1e-14);
}

TEST(PqdPhotonNumber, RejectsOrderingAtMinusOne) {
  EXPECT_THROW(PqdPhotonNumber(1, -1.0, {0.1, 0.0}), Error);
}

TEST(SpqdGaussian, MatchesReferenceValue) {
  ModeCovariance cov = ModeCovariance::Make(2.0, 0.7);
  EXPECT_NEAR(SpqdGaussian(cov, 0.3, {0.4, 0.25}), 0.46790651420007972, 1e-14);
}

TEST(SpqdGaussian, SingularAtClassicality) {
  ModeCovariance cov = ModeCovariance::Make(2.0, 0.7);
  try {
    SpqdGaussian(cov, 0.7, {0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularOrdering);
  }
}

TEST(ModeCovariance, SqueezedThermalAndValidation) {
  ModeCovariance c = ModeCovariance::SqueezedThermal(0.5, 0.2);
  EXPECT_NEAR(c.a_plus, 1.4 * std::exp(1.0), 1e-14);
  EXPECT_NEAR(c.a_minus, 1.4 * std::exp(-1.0), 1e-14);
  EXPECT_THROW(ModeCovariance::Make(0.5, 1.0), Error);  // a_plus < a_minus
  EXPECT_THROW(ModeCovariance::Make(1.5, 0.5), Error);  // below uncertainty
}

TEST(Classicality, SmallestMinusVariance) {
  std::vector<ModeCovariance> covs = {ModeCovariance::SqueezedThermal(0.3, 0.0),
                                      ModeCovariance::SqueezedThermal(0.1, 0.5)};
  EXPECT_DOUBLE_EQ(Classicality(covs), std::exp(-0.6));
}

// pi sum_m W_m = 1 pointwise, for several orderings and radii.
TEST(PiMeasurementRadial, PhotonNumbersResolveIdentity) {
  for (double s : {0.1, 0.5, 0.9}) {
    for (double t : {0.0, 0.2, 1.0, 3.0}) {
      double sum = 0.0;
      for (int m = 0; m < 400; ++m) {
        sum += PiMeasurementRadial(MeasurementOutcome::PhotonNumber(m), s, t);
      }
      EXPECT_NEAR(sum, 1.0, 1e-6) << "s=" << s << " t=" << t;
    }
  }
}

TEST(PiMeasurementRadial, ClickPlusNoClickIsOne) {
  for (double t : {0.0, 0.4, 2.0}) {
    double c = PiMeasurementRadial(MeasurementOutcome::Click(), 0.3, t);
    double nc = PiMeasurementRadial(MeasurementOutcome::NoClick(), 0.3, t);
    EXPECT_NEAR(c + nc, 1.0, 1e-15);
    EXPECT_EQ(PiMeasurementRadial(MeasurementOutcome::Marginal(), 0.3, t), 1.0);
  }
}

// Born rule against thermal light: p(m) = n^m / (n+1)^{m+1}.
TEST(PqdPhotonNumber, BornRuleForThermalInput) {
  const double n = 0.7, s = 0.4, a = 2 * n + 1;
  for (int m = 0; m < 4; ++m) {
    // p = pi * int d^2 alpha W_in W_m = pi^2 int_0^inf dt W_in(t) W_m(t)
    const int steps = 200000;
    const double tmax = 40.0;
    double h = tmax / steps, acc = 0.0;
    for (int k = 0; k <= steps; ++k) {
      double t = k * h;
      double w = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);  // Simpson
      double win = 2.0 / (kPi * (a - s)) * std::exp(-2.0 * t / (a - s));
      acc += w * win * PiMeasurementRadial(MeasurementOutcome::PhotonNumber(m), s, t);
    }
    double p = kPi * acc * h / 3.0;
    EXPECT_NEAR(p, std::pow(n, m) / std::pow(n + 1, m + 1), 1e-8) << m;
  }
}

TEST(Laguerre, MatchesReferenceValues) {
  EXPECT_NEAR(Laguerre(7, 2.5), 0.10795665922619048, 1e-14);
  EXPECT_NEAR(Laguerre(3, 0.1), 0.71483333333333333, 1e-14);
  EXPECT_EQ(Laguerre(0, 9.0), 1.0);
}

TEST(LambertW0, MatchesReferenceValues) {
  EXPECT_NEAR(LambertW0(1.0 / std::numbers::e), 0.2784645427610738, 1e-15);
  EXPECT_NEAR(LambertW0(2.0), 0.85260550201372549, 1e-14);
  EXPECT_NEAR(LambertW0(-0.2), -0.25917110181907375, 1e-14);
  EXPECT_NEAR(LambertW0(-1.0 / std::numbers::e), -1.0, 1e-7);
}

TEST(RawShift, LimitsAndErrors) {
  EXPECT_DOUBLE_EQ(RawShift(0.5, ShiftDirection::kForward, 0.2, 1.2), 0.5 * 2.0 / 1.0);
  EXPECT_DOUBLE_EQ(RawShift(0.5, ShiftDirection::kReverse, 0.2, 1.2), -0.5 * 2.0 / 1.2);
  EXPECT_THROW(RawShift(1.0, ShiftDirection::kForward, 0.2, 1.2), Error);
  EXPECT_THROW(RawShift(-0.1, ShiftDirection::kReverse, 0.2, 1.2), Error);
  EXPECT_THROW(RawShift(0.1, ShiftDirection::kForward, 1.2, 1.2), Error);
}

TEST(ShiftNormalization, UnitAtZeroShift) {
  ModeCovariance cov = ModeCovariance::SqueezedThermal(0.2, 0.3);
  EXPECT_NEAR(ShiftNormalization(cov, 0.1, 0.0), 1.0, 1e-15);
}

// Closed-form stationary points agree with the numeric radial search.
TEST(ShiftedMeasurementSup, ClosedFormMatchesNumeric) {
  std::vector<MeasurementOutcome> outs = {MeasurementOutcome::PhotonNumber(0),
                                          MeasurementOutcome::PhotonNumber(1),
                                          MeasurementOutcome::Click(),
                                          MeasurementOutcome::NoClick()};
  for (const auto& o : outs) {
    for (double s : {0.2, 0.6}) {
      for (double raw : {-0.5, 0.0, 0.7}) {
        double a = ShiftedMeasurementSup(o, s, raw).value;
        double b = ShiftedMeasurementSupNumeric(o, s, raw).value;
        if (std::isinf(a) || std::isinf(b)) {
          // e.g. click with a negative raw shift: the factor grows without bound
          EXPECT_EQ(a, b);
          continue;
        }
        EXPECT_NEAR(a, b, 1e-7 * std::max(1.0, a)) << o.ToString() << " s=" << s << " raw=" << raw;
      }
    }
  }
}

TEST(SupOverRadius, FindsInteriorMaximum) {
  auto g = [](double t) { return t * std::exp(-t); };
  RadialMax r = SupOverRadius(g, 4.0, 100.0);
  EXPECT_NEAR(r.value, std::exp(-1.0), 1e-10);
  EXPECT_NEAR(r.t_at, 1.0, 1e-4);
}

TEST(MeasurementOutcome, ToStringAndEquality) {
  EXPECT_EQ(MeasurementOutcome::PhotonNumber(3), MeasurementOutcome::PhotonNumber(3));
  EXPECT_FALSE(MeasurementOutcome::PhotonNumber(3) == MeasurementOutcome::PhotonNumber(2));
  EXPECT_FALSE(MeasurementOutcome::Click() == MeasurementOutcome::NoClick());
  EXPECT_FALSE(MeasurementOutcome::Click().ToString().empty());
}

}  // namespace
}  // namespace phasegbs
