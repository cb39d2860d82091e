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

#ifndef PHASEGBS_PHASE_SPACE_HPP_
#define PHASEGBS_PHASE_SPACE_HPP_

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace phasegbs {

using Complex = std::complex<double>;

// Per-mode diagonal covariance in units where vacuum has a_plus = a_minus = 1.
// a_plus is the (anti-squeezed) x variance, a_minus the p variance.
struct ModeCovariance {
  double a_plus = 1.0;
  double a_minus = 1.0;

  // Validates a_plus >= a_minus > 0 and a_plus * a_minus >= 1.
  static ModeCovariance Make(double a_plus, double a_minus);
  // (2n+1) e^{+-2r}.
  static ModeCovariance SqueezedThermal(double r, double n);
};

enum class ShiftDirection { kForward, kReverse };

// Ordering parameter s with its Gaussian shift. gamma is the normalized shift
// in [0, 1); the raw exponent moved between input and measurement factors is
// gamma * 2/(a_max - s) (forward) or -gamma * 2/(s + 1) (reverse).
struct PqdParams {
  double s = 0.0;
  double gamma = 0.0;
  ShiftDirection direction = ShiftDirection::kForward;
  double a_max = 1.0;
  double s_max = 1.0;

  double gamma_forward_limit() const;  // 2/(a_max - s); +inf if a_max <= s
  double gamma_reverse_limit() const;  // 2/(s + 1)
  double raw_shift() const;
};

// Raw exponent for a normalized shift. Throws ShiftOutOfRange when gamma is
// outside [0, 1) or the forward scale is undefined.
double RawShift(double gamma, ShiftDirection direction, double s, double a_max);

struct MeasurementOutcome {
  enum class Kind { kPhotonNumber, kClick, kNoClick, kMarginal };
  Kind kind = Kind::kMarginal;
  int count = 0;  // photon number, only for kPhotonNumber

  static MeasurementOutcome PhotonNumber(int m);
  static MeasurementOutcome Click();
  static MeasurementOutcome NoClick();
  static MeasurementOutcome Marginal();

  bool operator==(const MeasurementOutcome& o) const {
    return kind == o.kind && (kind != Kind::kPhotonNumber || count == o.count);
  }
  std::string ToString() const;
};

using MeasurementPattern = std::vector<MeasurementOutcome>;

// Gaussian s-ordered density at alpha; requires s < a_minus.
double SpqdGaussian(const ModeCovariance& cov, double s, Complex alpha);
double LogSpqdGaussian(const ModeCovariance& cov, double s, Complex alpha);

// Smallest a_minus over the modes.
double Classicality(const std::vector<ModeCovariance>& covs);

// W^{(-s)} of the photon-number projector |m><m| at beta (not multiplied by
// pi). Requires s > -1.
double PqdPhotonNumber(int m, double s, Complex beta);

// pi * W^{(-s)} of the click element I - |0><0| at beta. Requires s > -1.
double PqdThresholdClick(double s, Complex beta);

// pi * W^{(-s)} of a measurement outcome as a function of t = |beta|^2.
// Marginalized gives 1.
double PiMeasurementRadial(const MeasurementOutcome& outcome, double s,
                           double t);

struct ShiftedInput {
  double density = 0.0;        // normalized shifted input density P_i(alpha)
  double normalization = 1.0;  // N_i, carried into the measurement factor
};

// Normalization ratio N_i of the shifted input Gaussian for a raw shift.
// Throws ShiftOutOfRange if a shifted exponent is not positive.
double ShiftNormalization(const ModeCovariance& cov, double s, double raw);

// denom_scale is the shift denominator: (a_max - s) forward, (s + 1) reverse.
ShiftedInput ShiftedInputFactor(const ModeCovariance& cov, double s,
                                double gamma, ShiftDirection direction,
                                double denom_scale, Complex alpha);

// f_j = N_j * pi * W^{(-s)}(beta) * exp(-raw |beta|^2).
double ShiftedMeasFactor(const MeasurementOutcome& outcome, double s,
                         double gamma, ShiftDirection direction,
                         double denom_scale, double normalization,
                         Complex beta);

// Principal branch of the Lambert W function.
double LambertW0(double x);

// Laguerre polynomial L_m(x) via the three-term recurrence.
double Laguerre(int m, double x);

struct RadialMax {
  double value = 0.0;  // sup of |g(t)| over t >= 0
  double t_at = 0.0;   // maximizer (inf when the sup is the tail limit)
};

// Sup of |g(t)| over t >= 0. Scans |beta| = sqrt(t) linearly on
// [0, sqrt(t_feature)], then t log-spaced up to t_max, and refines the best
// grid point by golden section. tail_limit is lim_{t->inf} |g(t)|.
RadialMax SupOverRadius(const std::function<double(double)>& g,
                        double t_feature, double t_max,
                        double tail_limit = 0.0);

// Sup over beta of |pi W(t) exp(-raw t)|. Uses the stationary point in closed
// form for m <= 1, click and no-click outcomes; numeric search otherwise.
RadialMax ShiftedMeasurementSup(const MeasurementOutcome& outcome, double s,
                                double raw);
RadialMax ShiftedMeasurementSupNumeric(const MeasurementOutcome& outcome,
                                       double s, double raw);

}  // namespace phasegbs

#endif  // PHASEGBS_PHASE_SPACE_HPP_
