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

#ifndef PHASEGBS_ESTIMATOR_HPP_
#define PHASEGBS_ESTIMATOR_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "phasegbs/linear_optics.hpp"
#include "phasegbs/rng.hpp"

namespace phasegbs {

enum class GammaMode { kAuto, kFixed };

struct EstimatorConfig {
  std::optional<double> s;  // default: s_max - 1e-9
  GammaMode gamma_mode = GammaMode::kAuto;
  double gamma = 0.0;  // normalized shift for kFixed
  ShiftDirection direction = ShiftDirection::kForward;
  double epsilon = 0.05;
  double delta = 0.05;
  std::optional<std::int64_t> n_samples;
  std::uint64_t seed = 0;
  int chunks = 64;
  bool fold = true;      // absorb Gaussian measurement factors
  bool parallel = true;  // OpenMP over chunks; results identical to serial
  // When set, epsilon multiplies the sup bound of the sample weight, so that
  // N = 2 ln(2/delta) / epsilon^2 independently of the bound.
  bool epsilon_relative_to_bound = false;
};

struct EstimateReport {
  double estimate = 0.0;
  double factor_bound = 0.0;    // C with C^M = sup |X|
  double factor_bound_max = 0.0;  // largest per-mode sup |f_j|
  double neg_bound = 0.0;       // product of per-mode sups at zero shift
  double mod_neg_bound = 0.0;   // product of per-mode sups at the used shift
  double sup_weight = 0.0;      // sup |X| of the folded sampler
  std::int64_t n_used = 0;
  double conf_radius = 0.0;
  double std_error = 0.0;       // empirical standard error of the mean
  std::uint64_t seed = 0;
  int chunks = 0;
  double wall_time = 0.0;
  double s = 0.0;
  double gamma = 0.0;
  ShiftDirection direction = ShiftDirection::kForward;
  double raw_shift = 0.0;
  std::string gamma_source;
  std::vector<double> per_mode_sups;
  std::vector<int> active_modes;
};

// Correlated Gaussian over the 2M input quadratures with the Gaussian
// measurement factors (marginal, vacuum, and every shift exponent) absorbed.
// Samples are drawn directly in the coordinates of the active outputs:
// beta_active = g z with z standard normal in 2M dimensions.
struct FoldedSampler {
  int num_modes = 0;
  double s = 0.0;
  double raw_shift = 0.0;
  std::vector<int> active_modes;
  std::vector<MeasurementOutcome> active_outcomes;
  RMatrix g;                    // 2|A| x 2M, rows x_A then y_A
  RMatrix input_cov;            // effective 2M x 2M covariance over alpha
  double log_prefactor = 0.0;   // log Z_G + sum log c over folded modes
  std::vector<double> active_sups;  // sup |pi W e^{-raw t}| per active mode

  double log_sup_weight() const;
  // One sample of the weight X.
  double Sample(Engine& engine, std::normal_distribution<double>& normal,
                Eigen::VectorXd& z, Eigen::VectorXd& y) const;
  // Weight at a given standard-normal vector.
  double Weight(const Eigen::VectorXd& z) const;
};

FoldedSampler BuildFoldedSampler(const CircuitSpec& circuit, double s,
                                 double raw_shift, bool fold = true);
FoldedSampler BuildFoldedSampler(const CircuitSpec& circuit, double s,
                                 double gamma, ShiftDirection direction,
                                 bool fold = true);

double NegativityBound(const CircuitSpec& circuit, double s);
double ModifiedNegativityBound(const CircuitSpec& circuit, double s,
                               double gamma, ShiftDirection direction);

struct GammaChoice {
  double gamma = 0.0;
  ShiftDirection direction = ShiftDirection::kForward;
  bool use_multiplicative = false;  // regime left to the log-concave path
  bool degenerate = false;          // no closed form; use numeric search
  std::string formula_id;
};

GammaChoice OptimalGammaSqueezed(const std::vector<double>& lambda,
                                 double lambda_max);
GammaChoice OptimalGammaThermal(double lambda_min, double lambda_max);
GammaChoice OptimalGammaThresholdSqueezed(double lambda_max);
GammaChoice OptimalGammaThresholdThermal(double lambda_max);
GammaChoice OptimalGammaThresholdSqueezedThermal(double n, double r_max);
GammaChoice OptimalGammaSqueezedThermal(double n, double r_max);

struct FactorBound {
  double c = 0.0;  // max over modes
  std::vector<double> per_mode;          // N_j sup |f_j|, stationary points
  std::vector<double> per_mode_numeric;  // N_j sup |f_j|, golden section
  double product = 0.0;
};

FactorBound ComputeFactorBound(const CircuitSpec& circuit, double s,
                               double gamma, ShiftDirection direction);

// N = ceil(2 C^{2M} ln(2/delta) / epsilon^2), at least 1.
std::int64_t SampleCount(double c, int m, double epsilon, double delta);

// Shift chosen by the auto policy for this circuit at ordering s.
GammaChoice ChooseGamma(const CircuitSpec& circuit, double s, bool fold = true);
// Numeric minimization of the folded sup bound over both directions.
GammaChoice NumericGamma(const CircuitSpec& circuit, double s, bool fold);

double DefaultOrdering(const CircuitSpec& circuit);

EstimateReport EstimateProbability(const CircuitSpec& circuit,
                                   const EstimatorConfig& config);

struct TracePoint {
  std::int64_t n = 0;
  double running_mean = 0.0;
  double running_radius = 0.0;
};

std::vector<TracePoint> ConvergenceTrace(const CircuitSpec& circuit,
                                         const EstimatorConfig& config,
                                         int points);

struct MatrixEstimate {
  double value = 0.0;
  double error_budget = 0.0;   // epsilon * product of closed-form factors
  double uniform_budget = 0.0; // same with every lambda_i = lambda_max
  double radius = 0.0;         // prefactor * conf_radius
  double log_prefactor = 0.0;
  std::vector<double> budget_factors;
  std::string formula_id;
  std::optional<bool> beats_gurvits;
  EstimateReport probability;
};

MatrixEstimate EstimateHafnianSq(const CMatrix& r,
                                 const EstimatorConfig& config,
                                 double a = 1.001);
MatrixEstimate EstimatePermanentHpsd(const CMatrix& b,
                                     const EstimatorConfig& config,
                                     double a = 1.001);
MatrixEstimate EstimateTorontonian(const MatrixClass& mat,
                                   const EstimatorConfig& config);
// Haf(A) of a BlockA matrix, additive error.
MatrixEstimate EstimateHafnianBlock(const MatrixClass& mat,
                                    const EstimatorConfig& config);

// Circuit realizing a block-tagged matrix: returns the circuit with the given
// pattern and the log of the matrix-function prefactor.
CircuitSpec CircuitFromBlock(const MatrixClass& mat,
                             const MeasurementPattern& pattern,
                             double* log_prefactor);

}  // namespace phasegbs

#endif  // PHASEGBS_ESTIMATOR_HPP_
