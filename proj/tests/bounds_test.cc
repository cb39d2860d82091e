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


#include "phasegbs/bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "phasegbs/acceptance.hpp"
#include "phasegbs/error.hpp"
#include "phasegbs/linear_optics.hpp"
#include "phasegbs/oracles.hpp"

namespace phasegbs {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(LambertWOfInvE, Value) { EXPECT_NEAR(LambertWOfInvE(), 0.2784645427610738, 1e-15); }

// Published three-digit constants of the envelopes at lambda_max = 1.
TEST(Envelopes, ReferenceConstants) {
  EXPECT_NEAR(HafnianEnvelopeUpper(1.0, 1), 1.502, 5e-4);
  EXPECT_NEAR(HafnianEnvelopeLower(1.0, 1), 1.386, 5e-4);
  EXPECT_NEAR(PermanentEnvelopeUpper(1.0, 1), 1.472, 5e-4);
  EXPECT_NEAR(PermanentEnvelopeLower(1.0, 1), 0.736, 5e-4);
  double w = LambertWOfInvE();
  EXPECT_NEAR(w / (1 - w), 0.386, 5e-4);
  EXPECT_NEAR(PermanentEnvelopeUpper(0.5, 3), std::pow(2.0 / std::exp(1.0), 3), 1e-15);
}

// The per-mode factors interpolate between the two envelopes.
TEST(BudgetHafnian, ReducesToEnvelopes) {
  Budget flat = BudgetHafnian({0.7, 0.7, 0.7});
  EXPECT_NEAR(flat.product, HafnianEnvelopeUpper(0.7, 3), 1e-12);
  EXPECT_EQ(flat.formula_id, "addhafr");
  Budget spike = BudgetHafnian({0.7, 0.0, 0.0});
  EXPECT_NEAR(spike.product, HafnianEnvelopeUpper(0.7, 1) * HafnianEnvelopeLower(0.7, 2), 1e-12);
  Budget mid = BudgetHafnian({0.7, 0.3, 0.1});
  EXPECT_LT(mid.product, flat.product);
  EXPECT_GT(mid.product, spike.product);
}

TEST(BudgetPermanent, MultiplicativeRegimeUnsupported) {
  EXPECT_EQ(CodeOf([] { BudgetPermanent({0.6, 1.0}); }), ErrorCode::kUnsupported);
  EXPECT_EQ(BudgetPermanent({0.0, 1.0}).formula_id, "per1");
  EXPECT_EQ(BudgetPermanent({0.2, 1.0}).formula_id, "per2");
}

TEST(PermanentBounds, ReferenceValues) {
  BoundReport b = PermanentBounds({0.2, 0.5, 0.8});
  EXPECT_NEAR(*b.lower, 0.0008, 1e-15);
  EXPECT_NEAR(*b.upper, 0.1115022222222222, 1e-14);
  EXPECT_EQ(b.formula_id, "upper");
}

TEST(PermanentBounds, SandwichForDiagonalMatrices) {
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(0.02, 0.95);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> lam(2 + i % 3);
    double per = 1.0;
    for (double& l : lam) per *= (l = u(g));
    BoundReport b = PermanentBounds(lam);
    EXPECT_LE(*b.lower, per * (1 + 1e-12));
    EXPECT_GE(*b.upper, per * (1 - 1e-12));
  }
}

TEST(PermanentBounds, LowerBoundHoldsForRotatedSpectra) {
  for (int k = 0; k < 100; ++k) {
    std::vector<double> lam = UniformSpectrum(2 + k % 3, 0.02, 0.95, 100 + k);
    double per = PermanentExact(HpsdWithSpectrum(lam, 500 + k)).real();
    EXPECT_LE(*PermanentBounds(lam).lower, per * (1 + 1e-12));
  }
}

// The product-form upper bound fails for spectra in a non-diagonal basis;
// two modes suffice. Left red on purpose.
TEST(PermanentBounds, UpperBoundHoldsForRotatedSpectra) {
  const std::vector<double> lam = {0.37015665, 0.76262671};
  const double c = std::sqrt(0.3356), s = std::sqrt(1 - 0.3356);
  CMatrix u(2, 2);
  u << c, -s, s, c;
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = lam[0];
  d(1, 1) = lam[1];
  CMatrix b = u * d * u.adjoint();
  double per = PermanentExact(b).real();
  EXPECT_NEAR(per, 0.35098152510854713, 1e-12);
  EXPECT_GE(*PermanentBounds(lam).upper, per);
}

TEST(HafnianBounds, SandwichForRandomBlocks) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 60; ++k) {
    int m = 2 + k % 2;
    std::vector<double> r(m);
    for (double& x : r) x = 0.5 * u(g);
    double rm = *std::max_element(r.begin(), r.end());
    double n = 0.5 * (std::exp(2 * rm) - 1) * 1.02 + 3.0 * u(g) + 0.01;
    BlockA blk = BuildBlockA(n, r, HaarUnitary(m, g()).u);
    double haf = HafnianExact(blk.matrix.data()).real();
    BoundReport hb = HafnianBounds(n, r);
    EXPECT_LE(*hb.lower, haf * (1 + 1e-10));
    EXPECT_GE(*hb.upper, haf * (1 - 1e-10));
    double tor = TorontonianExact(BlockAprimeOf(blk.matrix.data())).real();
    BoundReport tb = TorontonianSqueezedThermalBounds(n, r);
    EXPECT_LE(*tb.lower, tor * (1 + 1e-10));
    EXPECT_GE(*tb.upper, tor * (1 - 1e-10));
  }
}

TEST(TorontonianThermalBounds, SandwichForRandomHpsd) {
  for (int k = 0; k < 60; ++k) {
    std::vector<double> lam = UniformSpectrum(2 + k % 3, 0.02, 0.95, 300 + k);
    CMatrix b = HpsdWithSpectrum(lam, 700 + k);
    double tor = TorontonianExact(BlockBprimeOf(b)).real();
    BoundReport tb = TorontonianThermalBounds(lam);
    EXPECT_LE(*tb.lower, tor * (1 + 1e-10));
    EXPECT_GE(*tb.upper, tor * (1 - 1e-10));
  }
}

TEST(Bounds, UnsupportedAndPreconditions) {
  EXPECT_EQ(CodeOf([] { HafnianSqBounds({0.3}); }), ErrorCode::kUnsupported);
  EXPECT_EQ(CodeOf([] { TorontonianSqueezedBounds({0.3}); }), ErrorCode::kUnsupported);
  // a_min = e^{-1} < 1 at n = 0, r = 0.5
  EXPECT_EQ(CodeOf([] { HafnianBounds(0.0, {0.5}); }), ErrorCode::kPreconditionAminBelowOne);
  EXPECT_EQ(CodeOf([] { PermanentBounds({1.2}); }), ErrorCode::kDomainError);
}

TEST(SqueezedThermalNorm, MatchesDefinition) {
  EXPECT_NEAR(SqueezedThermalNorm(0.3, 0.2),
              std::sqrt(0.5 + 0.3 * 1.3 + 0.8 * std::cosh(0.4)), 1e-15);
}

}  // namespace
}  // namespace phasegbs
