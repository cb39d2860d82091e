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

#ifndef PHASEGBS_FPRAS_HPP_
#define PHASEGBS_FPRAS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phasegbs/estimator.hpp"

namespace phasegbs {

enum class FactorFamily { kQuadraticFactor, kThresholdFactor };

const char* FactorFamilyName(FactorFamily f);

// A line x(tau) = origin + tau * direction in the plane of one output mode.
struct WitnessLine {
  double origin[2] = {0.0, 0.0};
  double direction[2] = {1.0, 0.0};
  double tau = 0.0;
  double second_difference = 0.0;
};

struct LogConcavityCertificate {
  bool holds = false;
  FactorFamily family = FactorFamily::kQuadraticFactor;
  double margin = 0.0;
  double a = 0.0, b = 0.0, c = 0.0;
  std::optional<WitnessLine> witness_line;
};

// (a + b q) e^{-c q}, q = |x|^2: holds iff c a >= b.
LogConcavityCertificate CheckQuadraticFactor(double a, double b, double c);
// (a - b e^{-b q}) e^{-c q}: holds iff a >= (b^2 + 2 b c) / c.
LogConcavityCertificate CheckThresholdFactor(double a, double b, double c);

struct LineScan {
  double max_second_difference = 0.0;
  WitnessLine worst;
  bool finite = true;  // false when the factor is a point mass (c = inf)
};

// Second differences of log f along random affine lines through the plane
// (the first line passes through the origin). Steps 1e-3, 1e-2, 1e-1.
LineScan ScanLogConcavity(FactorFamily family, double a, double b, double c,
                          int lines, std::uint64_t seed);

// Runs ScanLogConcavity and attaches the worst line to the certificate.
LogConcavityCertificate WithNumericWitness(LogConcavityCertificate cert,
                                           int lines, std::uint64_t seed);

struct ConditionResult {
  bool holds = false;
  double margin = 0.0;  // closed-form slack, >= 0 iff holds
  double threshold = 0.0;
  std::string formula_id;
  std::vector<LogConcavityCertificate> certificates;  // from coefficients
  bool coefficients_hold = false;
};

ConditionResult FprasConditionPermanent(const std::vector<double>& lambda);
ConditionResult FprasConditionHafnian(double n, double r_max);
ConditionResult FprasConditionTorThermal(double lambda_min, double lambda_max);
ConditionResult FprasConditionTorSqueezedThermal(double n, double r_max);
ConditionResult FprasConditionGbsNoise(double eta, double r_max, double n_th);

double HafnianConditionThreshold(double r_max);
double TorSqueezedThermalThreshold(double r_max);
double GbsNoiseThreshold(double eta, double r_max);

// Per-active-mode certificates under the full forward shift at s = s_max.
std::vector<LogConcavityCertificate> CircuitCertificates(
    const CircuitSpec& circuit);

struct MultiplicativeConfig {
  double epsilon = 0.1;
  double delta = 0.05;
  std::uint64_t seed = 0;
  int chunks = 64;
  bool parallel = true;
  std::int64_t max_samples = 100000000;
};

struct MultiplicativeEstimate {
  double value = 0.0;
  double relative_half_width = 0.0;
  double ess = 0.0;
  std::int64_t n_used = 0;
  double log_prefactor = 0.0;
  std::vector<LogConcavityCertificate> certificates;
};

MultiplicativeEstimate EstimateMultiplicative(const CircuitSpec& circuit,
                                              const MultiplicativeConfig& config);

// Matrix-function wrappers; value includes all rescaling prefactors.
MultiplicativeEstimate EstimatePermanentMultiplicative(
    const CMatrix& b, const MultiplicativeConfig& config, double a = 1.001);
MultiplicativeEstimate EstimateHafnianBlockMultiplicative(
    const MatrixClass& mat, const MultiplicativeConfig& config);
MultiplicativeEstimate EstimateTorontonianMultiplicative(
    const MatrixClass& mat, const MultiplicativeConfig& config);

// Two-sided standard normal quantile: P(|Z| <= z) = 1 - delta.
double NormalQuantileTwoSided(double delta);

}  // namespace phasegbs

#endif  // PHASEGBS_FPRAS_HPP_
