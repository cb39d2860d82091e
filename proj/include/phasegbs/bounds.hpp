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

#ifndef PHASEGBS_BOUNDS_HPP_
#define PHASEGBS_BOUNDS_HPP_

#include <optional>
#include <string>
#include <vector>

namespace phasegbs {

// Closed-form additive-error budget: the error is epsilon * product.
struct Budget {
  std::vector<double> factors;
  double product = 1.0;
  std::string formula_id;
};

struct BoundReport {
  std::optional<double> lower;
  std::optional<double> upper;
  std::string family;
  std::string formula_id;
};

double LambertWOfInvE();

// |Haf(R)|^2 from the Takagi values of R (any order).
Budget BudgetHafnian(const std::vector<double>& lambda);
// lambda_i = lambda_max for all i, and lambda_i = 0 except lambda_max.
double HafnianEnvelopeUpper(double lambda_max, int m);
double HafnianEnvelopeLower(double lambda_max, int m);

// Per(B) from the eigenvalues of B. Uses the zero-eigenvalue form when
// lambda_min <= zero_tol * lambda_max; throws Unsupported when
// lambda_min / (a lambda_max) >= 1/2 (multiplicative regime).
Budget BudgetPermanent(const std::vector<double>& lambda, double a = 1.001,
                       double zero_tol = 1e-12);
double PermanentEnvelopeUpper(double lambda_max, int m);  // (4 lmax / e)^m
double PermanentEnvelopeLower(double lambda_max, int m);  // (2 lmax / e)^m
bool BeatsGurvits(const Budget& budget, double lambda_max);

// Tor of [[0, R*], [R, 0]] from the Takagi values of R (all < 1).
Budget BudgetTorontonianSqueezed(const std::vector<double>& lambda);
// Tor of [[B^T, 0], [0, B]] from the eigenvalues of B (all < 1).
Budget BudgetTorontonianThermal(const std::vector<double>& lambda);
// Tor of the squeezed-thermal block matrix.
Budget BudgetTorontonianSqueezedThermal(double n, const std::vector<double>& r);
// Haf of the squeezed-thermal block matrix.
Budget BudgetHafnianBlock(double n, const std::vector<double>& r);

// Per-mode factors before the partition-function factor is divided out;
// these are the sup bounds on the shifted measurement factor.
double SqueezedPhotonFactorBound(double lambda_j, double lambda_max);
double ThermalPhotonFactorBound(double lambda_j, double lambda_min,
                                double lambda_max);

// sqrt(1/2 + n(n+1) + (n+1/2) cosh 2r).
double SqueezedThermalNorm(double n, double r);

BoundReport PermanentBounds(const std::vector<double>& lambda);
BoundReport HafnianBounds(double n, const std::vector<double>& r);
BoundReport TorontonianThermalBounds(const std::vector<double>& lambda);
BoundReport TorontonianSqueezedThermalBounds(double n,
                                             const std::vector<double>& r);
// No bounds are known for these; both throw Unsupported.
BoundReport HafnianSqBounds(const std::vector<double>& lambda);
BoundReport TorontonianSqueezedBounds(const std::vector<double>& lambda);

}  // namespace phasegbs

#endif  // PHASEGBS_BOUNDS_HPP_
