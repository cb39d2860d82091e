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

#include <algorithm>
#include <cmath>

#include "phasegbs/error.hpp"
#include "phasegbs/phase_space.hpp"

namespace phasegbs {
namespace {

constexpr double kE = 2.718281828459045235360287;

void RequireNonEmpty(const std::vector<double>& v) {
  if (v.empty()) throw Error(ErrorCode::kDimensionMismatch, "empty spectrum");
}

void RequireUnitInterval(const std::vector<double>& v, bool allow_zero) {
  for (double x : v) {
    if (!(x < 1.0) || (allow_zero ? !(x >= 0.0) : !(x > 0.0))) {
      throw Error(ErrorCode::kDomainError,
                  "eigenvalue outside the admissible interval");
    }
  }
}

Budget Finish(std::vector<double> factors, std::string id) {
  Budget b;
  b.product = 1.0;
  for (double f : factors) b.product *= f;
  b.factors = std::move(factors);
  b.formula_id = std::move(id);
  return b;
}

double MaxOf(const std::vector<double>& v) {
  return *std::max_element(v.begin(), v.end());
}
double MinOf(const std::vector<double>& v) {
  return *std::min_element(v.begin(), v.end());
}

// 1/2 + n(n+1) - (n+1/2) cosh 2r = (a_+ - 1)(a_- - 1)/4.
double SqueezedThermalGap(double n, double r) {
  double s = 2.0 * n + 1.0;
  return 0.25 * (s * std::exp(2.0 * r) - 1.0) * (s * std::exp(-2.0 * r) - 1.0);
}

void RequireAminAboveOne(double n, const std::vector<double>& r) {
  RequireNonEmpty(r);
  if (!(n >= 0.0)) throw Error(ErrorCode::kDomainError, "n must be >= 0");
  for (double ri : r) {
    if (!(ri >= 0.0)) throw Error(ErrorCode::kDomainError, "r must be >= 0");
  }
  double a_min = (2.0 * n + 1.0) * std::exp(-2.0 * MaxOf(r));
  if (!(a_min > 1.0)) {
    throw Error(ErrorCode::kPreconditionAminBelowOne,
                "bounds need a_min = (2n+1)e^{-2 r_max} > 1, got " +
                    std::to_string(a_min));
  }
}

}  // namespace

double LambertWOfInvE() {
  static const double w = LambertW0(1.0 / kE);
  return w;
}

double SqueezedPhotonFactorBound(double lambda_j, double lambda_max) {
  double w = LambertWOfInvE();
  if (lambda_max == 0.0) return 0.0;
  double lm2 = lambda_max * lambda_max;
  return lm2 * std::sqrt(1.0 - lambda_j * lambda_j) /
         std::sqrt(lm2 * (1.0 - w) * (1.0 - w) - lambda_j * lambda_j * w * w);
}

double ThermalPhotonFactorBound(double lambda_j, double lambda_min,
                                double lambda_max) {
  if (lambda_max == 0.0) return 0.0;
  if (lambda_min == 0.0) {
    return 4.0 * lambda_max * lambda_max * (1.0 - lambda_j) /
           (kE * (2.0 * lambda_max - lambda_j));
  }
  double lmin = lambda_min, lmax = lambda_max;
  double d = std::sqrt(4.0 * lmax * lmax - 8.0 * lmax * lmin +
                       5.0 * lmin * lmin);
  double u = d - 2.0 * lmax + lmin;
  return 4.0 * (1.0 - lambda_j) * lmin * lmin *
         std::exp((lmin - d) / (2.0 * lmax - 2.0 * lmin)) *
         (lmax - lmin) * (lmax - lmin) /
         (u * (lmin * (d - 4.0 * lmax + 3.0 * lmin) - lambda_j * u));
}

Budget BudgetHafnian(const std::vector<double>& lambda) {
  RequireNonEmpty(lambda);
  double lmax = MaxOf(lambda);
  double w = LambertWOfInvE();
  std::vector<double> f;
  for (double l : lambda) {
    if (lmax == 0.0) {
      f.push_back(0.0);
      continue;
    }
    f.push_back(lmax * lmax /
                std::sqrt(lmax * lmax * (w - 1.0) * (w - 1.0) - l * l * w * w));
  }
  return Finish(std::move(f), "addhafr");
}

double HafnianEnvelopeUpper(double lambda_max, int m) {
  return std::pow(lambda_max / std::sqrt(1.0 - 2.0 * LambertWOfInvE()), m);
}

double HafnianEnvelopeLower(double lambda_max, int m) {
  return std::pow(lambda_max / (1.0 - LambertWOfInvE()), m);
}

Budget BudgetPermanent(const std::vector<double>& lambda, double a,
                       double zero_tol) {
  RequireNonEmpty(lambda);
  for (double l : lambda) {
    if (!(l >= 0.0)) throw Error(ErrorCode::kNotHpsd, "negative eigenvalue");
  }
  double lmax = MaxOf(lambda);
  double lmin = MinOf(lambda);
  std::vector<double> f;
  if (lmax == 0.0) return Finish(std::vector<double>(lambda.size(), 0.0), "per1");
  if (lmin <= zero_tol * lmax) {
    for (double l : lambda) f.push_back(4.0 * lmax * lmax / (kE * (2.0 * lmax - l)));
    return Finish(std::move(f), "per1");
  }
  if (!(lmin / (a * lmax) < 0.5)) {
    throw Error(ErrorCode::kUnsupported,
                "lambda_min/(a lambda_max) >= 1/2: no additive closed form, "
                "use the log-concave estimator");
  }
  double d = std::sqrt(4.0 * lmax * lmax - 8.0 * lmax * lmin +
                       5.0 * lmin * lmin);
  double u = d - 2.0 * lmax + lmin;
  for (double l : lambda) {
    f.push_back(4.0 * lmin * lmin *
                std::exp((lmin - d) / (2.0 * lmax - 2.0 * lmin)) *
                (lmax - lmin) * (lmax - lmin) /
                (u * (lmin * (d - 4.0 * lmax + 3.0 * lmin) - l * u)));
  }
  return Finish(std::move(f), "per2");
}

double PermanentEnvelopeUpper(double lambda_max, int m) {
  return std::pow(4.0 * lambda_max / kE, m);
}

double PermanentEnvelopeLower(double lambda_max, int m) {
  return std::pow(2.0 * lambda_max / kE, m);
}

bool BeatsGurvits(const Budget& budget, double lambda_max) {
  double log_lhs = 0.0;
  for (double f : budget.factors) log_lhs += std::log(f);
  return log_lhs < budget.factors.size() * std::log(lambda_max);
}

Budget BudgetTorontonianSqueezed(const std::vector<double>& lambda) {
  RequireNonEmpty(lambda);
  RequireUnitInterval(lambda, true);
  double lm = MaxOf(lambda);
  std::vector<double> f;
  if (lm == 0.0) return Finish(std::vector<double>(lambda.size(), 0.0), "addtorr");
  double tail = std::pow(std::pow(1.0 + lm, 3) / ((1.0 - lm) * (1.0 - lm)),
                         -(1.0 - lm) * (1.0 - lm) / (4.0 * lm));
  for (double l : lambda) {
    double p = (l + (l + 3.0) * lm - lm * lm) * (-l - (l - 3.0) * lm - lm * lm);
    f.push_back(16.0 * lm * lm / ((1.0 + lm * lm * lm) * std::sqrt(p)) * tail);
  }
  return Finish(std::move(f), "addtorr");
}

Budget BudgetTorontonianThermal(const std::vector<double>& lambda) {
  RequireNonEmpty(lambda);
  RequireUnitInterval(lambda, true);
  double lmax = MaxOf(lambda);
  double lmin = MinOf(lambda);
  std::vector<double> f;
  if (lmax - lmin <= 1e-9 * std::max(lmax, 1e-300)) {
    // Every input is a delta at s = s_max: the estimator is exact and the
    // factor collapses to the single-mode value n = lambda / (1 - lambda).
    for (double l : lambda) f.push_back(l / (1.0 - l));
    return Finish(std::move(f), "addtorb");
  }
  double q = 1.0 + lmax * lmax - 2.0 * lmin;
  double x = (1.0 - lmax) * (1.0 - lmax) / ((1.0 - lmin) * q);
  double powx = std::pow(x, q / (2.0 * lmax - 2.0 * lmin));
  for (double l : lambda) {
    f.push_back(4.0 * (lmax - lmin) * (lmax - lmin) * powx * (lmin - 1.0) /
                ((1.0 - lmax) * (1.0 - lmax) *
                 (l * q + lmin - lmax * (2.0 + (lmax - 2.0) * lmin))));
  }
  return Finish(std::move(f), "addtorb");
}

double SqueezedThermalNorm(double n, double r) {
  return std::sqrt(0.5 + n * (n + 1.0) + (n + 0.5) * std::cosh(2.0 * r));
}

Budget BudgetTorontonianSqueezedThermal(double n, const std::vector<double>& r) {
  RequireNonEmpty(r);
  double rm = MaxOf(r);
  if (!(rm > 0.0) || !(n >= 0.0)) {
    throw Error(ErrorCode::kDomainError,
                "closed form needs r_max > 0 and n >= 0");
  }
  double e2 = std::exp(2.0 * rm);
  double t = std::tanh(rm);
  double et = std::exp(t);
  double den = 2.0 * n + e2 + 1.0;
  double k = 2.0 * n * n + 3.0 * n + 1.0;
  double fx = -std::exp(-t) * (n * t + (n + 1.0) / t - 2.0 * n - 1.0) /
              (2.0 * (n + 1.0) * (2.0 * n + 1.0));
  double base = e2 * (-k * et + k * std::exp(4.0 * rm + t) + 2.0 * n + e2 + 1.0) /
                (den * den);
  std::vector<double> f;
  for (double rj : r) {
    double pre = (n + 1.0) * (n + 1.0) * (2.0 * n + 1.0) *
                 std::pow(std::exp(4.0 * rm) - 1.0, 2) *
                 std::exp(rj + 2.0 * rm + 2.0 * t) / (den * den);
    double s1 = 1.0 / std::sqrt(-(n + 1.0) * et +
                                (n + 1.0) * std::exp(4.0 * rm + t) -
                                std::exp(2.0 * (rj + rm)) + 1.0);
    double s2 = 1.0 / std::sqrt(-(n + 1.0) * std::exp(2.0 * rj + t) +
                                (n + 1.0) * std::exp(2.0 * rj + 4.0 * rm + t) +
                                std::exp(2.0 * rj) - e2);
    double sup = pre * s1 * s2 * std::pow(2.0 * base, fx);
    f.push_back(SqueezedThermalNorm(n, rj) * sup);
  }
  return Finish(std::move(f), "addtora");
}

Budget BudgetHafnianBlock(double n, const std::vector<double>& r) {
  RequireNonEmpty(r);
  if (!(n >= 0.0)) throw Error(ErrorCode::kDomainError, "n must be >= 0");
  double rm = MaxOf(r);
  double t = std::tanh(rm);
  double e2 = std::exp(2.0 * rm);
  double g = n * std::exp(-t) / (1.0 + n);
  std::vector<double> f;
  for (double rj : r) {
    double e = std::exp(0.5 * (-3.0 + g - (2.0 * n + 1.0) / e2 * (-1.0 + g) +
                               2.0 * rj + 8.0 * rm + 3.0 * t));
    double v = e * 4.0 * (1.0 + n) * (1.0 + n) /
               ((1.0 + e2 + 2.0 * n) * ((1.0 + n) * std::exp(t) - n));
    v /= std::sqrt(1.0 + e2 + 3.0 * n + n * e2 + 2.0 * n * n +
                   n * (2.0 * n + 1.0) * (std::exp(2.0 * (rj + rm)) - 1.0) *
                       std::exp(-t));
    v /= std::sqrt((2.0 * n + 1.0) * std::exp(2.0 * rj) *
                       (-n + (n + 1.0) * std::exp(t)) +
                   e2 * (n + 2.0 * n * n + (n + 1.0) * std::exp(2.0 * rj + t)));
    f.push_back(SqueezedThermalNorm(n, rj) * v);
  }
  return Finish(std::move(f), "addhafa");
}

BoundReport PermanentBounds(const std::vector<double>& lambda) {
  RequireNonEmpty(lambda);
  RequireUnitInterval(lambda, true);
  double lmax = MaxOf(lambda);
  double lmin = MinOf(lambda);
  BoundReport out;
  out.family = "permanent_thermal";
  out.formula_id = "upper";
  double lower = 1.0, upper = 1.0;
  double k = 2.0 + 3.0 * lmin;
  for (double l : lambda) {
    lower *= l > 0.0 ? lmin * lmin / l : 0.0;
    upper *= lmax * (lmax * (2.0 + lmin) - k) / (l * (2.0 + lmin) - k);
  }
  out.lower = lower;
  out.upper = upper;
  return out;
}

BoundReport HafnianBounds(double n, const std::vector<double>& r) {
  RequireAminAboveOne(n, r);
  double rm = MaxOf(r);
  double e2 = std::exp(2.0 * rm);
  double low_pre = std::pow((-2.0 * n + e2 - 1.0) / (2.0 * n + e2 + 1.0), 2);
  double up_pre = std::pow((std::exp(rm) * n + std::sinh(rm)) /
                               ((1.0 + n) * std::cosh(rm) + n * std::sinh(rm)),
                           2);
  double lower = 1.0, upper = 1.0;
  for (double ri : r) {
    double ratio = SqueezedThermalNorm(n, ri) / std::sqrt(SqueezedThermalGap(n, ri));
    lower *= low_pre * ratio;
    upper *= up_pre * ratio;
  }
  BoundReport out;
  out.family = "hafnian_squeezed_thermal";
  out.formula_id = "lowhaf/uphaf";
  out.lower = lower;
  out.upper = upper;
  return out;
}

BoundReport TorontonianThermalBounds(const std::vector<double>& lambda) {
  RequireNonEmpty(lambda);
  RequireUnitInterval(lambda, false);
  double lmax = MaxOf(lambda);
  double lmin = MinOf(lambda);
  double lower = 1.0, upper = 1.0;
  for (double l : lambda) {
    lower *= lmin * lmin / (l * (1.0 - lmin));
    upper *= lmax * lmax / (l * (1.0 - lmax));
  }
  BoundReport out;
  out.family = "torontonian_thermal";
  out.formula_id = "tor_thermal_bounds";
  out.lower = lower;
  out.upper = upper;
  return out;
}

BoundReport TorontonianSqueezedThermalBounds(double n,
                                             const std::vector<double>& r) {
  RequireAminAboveOne(n, r);
  double rm = MaxOf(r);
  double e2 = std::exp(2.0 * rm);
  double low_pre = std::exp(-2.0 * rm) * std::pow(1.0 - e2 + 2.0 * n, 2) /
                   (2.0 * (1.0 + e2 + 2.0 * n));
  double up_pre = std::exp(rm) * std::pow(std::exp(rm) * n + std::sinh(rm), 2) /
                  ((1.0 + n) * std::cosh(rm) + n * std::sinh(rm));
  double lower = 1.0, upper = 1.0;
  for (double ri : r) {
    double ratio = SqueezedThermalNorm(n, ri) / std::sqrt(SqueezedThermalGap(n, ri));
    lower *= low_pre * ratio;
    upper *= up_pre * ratio;
  }
  BoundReport out;
  out.family = "torontonian_squeezed_thermal";
  out.formula_id = "lowtor/uptor";
  out.lower = lower;
  out.upper = upper;
  return out;
}

BoundReport HafnianSqBounds(const std::vector<double>&) {
  throw Error(ErrorCode::kUnsupported,
              "no lower or upper bound is known for |Haf(R)|^2");
}

BoundReport TorontonianSqueezedBounds(const std::vector<double>&) {
  throw Error(ErrorCode::kUnsupported,
              "no lower or upper bound is known for Tor of [[0,R*],[R,0]]");
}

}  // namespace phasegbs
