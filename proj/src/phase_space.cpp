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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "phasegbs/error.hpp"

namespace phasegbs {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void RequireOrdering(double s) {
  if (!(s > -1.0)) {
    throw Error(ErrorCode::kOrderingOutOfRange,
                "ordering parameter must satisfy s > -1, got " +
                    std::to_string(s));
  }
}

// Quadrature precision 2/(a - s); infinite for the delta-function case.
double Precision(double a, double s) {
  double d = a - s;
  if (d < 0.0) {
    throw Error(ErrorCode::kSingularOrdering,
                "s exceeds a quadrature variance");
  }
  return d == 0.0 ? kInf : 2.0 / d;
}

// pi W for photon number m as a function of t, near s = 1 where
// ((s-1)/(s+1))^m L_m(4t/(1-s^2)) is a removable singularity.
double PiPhotonNumberExpanded(int m, double s, double t) {
  double sp = s + 1.0;
  double sm = s - 1.0;
  double sum = 0.0;
  double binom = 1.0;     // C(m, k)
  double inv_fact = 1.0;  // 1/k!
  for (int k = 0; k <= m; ++k) {
    if (k > 0) {
      binom *= static_cast<double>(m - k + 1) / k;
      inv_fact /= k;
    }
    double term = binom * inv_fact * std::pow(4.0 * t, k) /
                  std::pow(sp, m + k);
    if (m - k > 0) term *= std::pow(sm, m - k);
    sum += term;
  }
  return 2.0 / sp * std::exp(-2.0 * t / sp) * sum;
}

double PiPhotonNumberRadial(int m, double s, double t) {
  RequireOrdering(s);
  if (m < 0) {
    throw Error(ErrorCode::kInvalidArgument, "photon number must be >= 0");
  }
  double sp = s + 1.0;
  if (m == 0) return 2.0 / sp * std::exp(-2.0 * t / sp);
  if (m == 1) {
    return (8.0 * t + 2.0 * (s * s - 1.0)) / (sp * sp * sp) *
           std::exp(-2.0 * t / sp);
  }
  if (std::abs(s - 1.0) < 1e-4) return PiPhotonNumberExpanded(m, s, t);
  double ratio = (s - 1.0) / sp;
  return 2.0 / sp * std::pow(ratio, m) *
         Laguerre(m, 4.0 * t / (1.0 - s * s)) * std::exp(-2.0 * t / sp);
}

double PiClickRadial(double s, double t) {
  RequireOrdering(s);
  double b = 2.0 / (s + 1.0);
  return 1.0 - b * std::exp(-b * t);
}

}  // namespace

ModeCovariance ModeCovariance::Make(double a_plus, double a_minus) {
  if (!(a_minus > 0.0) || !(a_plus >= a_minus) ||
      !(a_plus * a_minus >= 1.0 - 1e-12)) {
    throw Error(ErrorCode::kDomainError,
                "unphysical mode covariance (need a_plus >= a_minus > 0 and "
                "a_plus * a_minus >= 1)");
  }
  return ModeCovariance{a_plus, a_minus};
}

ModeCovariance ModeCovariance::SqueezedThermal(double r, double n) {
  if (!(r >= 0.0) || !(n >= 0.0)) {
    throw Error(ErrorCode::kDomainError, "need r >= 0 and n >= 0");
  }
  double base = 2.0 * n + 1.0;
  return ModeCovariance{base * std::exp(2.0 * r), base * std::exp(-2.0 * r)};
}

double PqdParams::gamma_forward_limit() const {
  double d = a_max - s;
  return d > 0.0 ? 2.0 / d : kInf;
}

double PqdParams::gamma_reverse_limit() const { return 2.0 / (s + 1.0); }

double PqdParams::raw_shift() const {
  return RawShift(gamma, direction, s, a_max);
}

double RawShift(double gamma, ShiftDirection direction, double s,
                double a_max) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::kShiftOutOfRange,
                "normalized shift must lie in [0, 1)");
  }
  if (gamma == 0.0) return 0.0;
  if (direction == ShiftDirection::kReverse) return -gamma * 2.0 / (s + 1.0);
  double d = a_max - s;
  if (!(d > 0.0)) {
    throw Error(ErrorCode::kShiftOutOfRange,
                "forward shift undefined when a_max <= s");
  }
  return gamma * 2.0 / d;
}

MeasurementOutcome MeasurementOutcome::PhotonNumber(int m) {
  if (m < 0) {
    throw Error(ErrorCode::kInvalidArgument, "photon number must be >= 0");
  }
  return {Kind::kPhotonNumber, m};
}
MeasurementOutcome MeasurementOutcome::Click() { return {Kind::kClick, 0}; }
MeasurementOutcome MeasurementOutcome::NoClick() {
  return {Kind::kNoClick, 0};
}
MeasurementOutcome MeasurementOutcome::Marginal() {
  return {Kind::kMarginal, 0};
}

std::string MeasurementOutcome::ToString() const {
  switch (kind) {
    case Kind::kPhotonNumber: return std::to_string(count);
    case Kind::kClick: return "click";
    case Kind::kNoClick: return "noclick";
    case Kind::kMarginal: return "marginal";
  }
  return "?";
}

double LogSpqdGaussian(const ModeCovariance& cov, double s, Complex alpha) {
  if (!(s < cov.a_minus)) {
    throw Error(ErrorCode::kSingularOrdering,
                "s must be below a_minus; the density is a delta function");
  }
  double dp = cov.a_plus - s;
  double dm = cov.a_minus - s;
  double x = alpha.real();
  double y = alpha.imag();
  return std::log(2.0 / kPi) - 0.5 * std::log(dp * dm) - 2.0 * x * x / dp -
         2.0 * y * y / dm;
}

double SpqdGaussian(const ModeCovariance& cov, double s, Complex alpha) {
  return std::exp(LogSpqdGaussian(cov, s, alpha));
}

double Classicality(const std::vector<ModeCovariance>& covs) {
  double s_max = kInf;
  for (const auto& c : covs) s_max = std::min(s_max, c.a_minus);
  return s_max;
}

double PqdPhotonNumber(int m, double s, Complex beta) {
  return PiPhotonNumberRadial(m, s, std::norm(beta)) / kPi;
}

double PqdThresholdClick(double s, Complex beta) {
  return PiClickRadial(s, std::norm(beta));
}

double PiMeasurementRadial(const MeasurementOutcome& outcome, double s,
                           double t) {
  using Kind = MeasurementOutcome::Kind;
  switch (outcome.kind) {
    case Kind::kPhotonNumber: return PiPhotonNumberRadial(outcome.count, s, t);
    case Kind::kClick: return PiClickRadial(s, t);
    case Kind::kNoClick: return PiPhotonNumberRadial(0, s, t);
    case Kind::kMarginal: return 1.0;
  }
  return 0.0;
}

double ShiftNormalization(const ModeCovariance& cov, double s, double raw) {
  double ratio = 1.0;
  for (double a : {cov.a_plus, cov.a_minus}) {
    double lam = Precision(a, s);
    if (std::isinf(lam)) continue;  // delta quadrature is unaffected
    double shifted = lam - raw;
    if (!(shifted > 0.0)) {
      throw Error(ErrorCode::kShiftOutOfRange,
                  "shifted input exponent is not positive");
    }
    ratio *= std::sqrt(lam / shifted);
  }
  return ratio;
}

ShiftedInput ShiftedInputFactor(const ModeCovariance& cov, double s,
                                double gamma, ShiftDirection direction,
                                double denom_scale, Complex alpha) {
  if (!(s < cov.a_minus)) {
    throw Error(ErrorCode::kSingularOrdering,
                "s must be below a_minus to evaluate the input density");
  }
  if (!(denom_scale > 0.0)) {
    throw Error(ErrorCode::kShiftOutOfRange, "shift denominator must be > 0");
  }
  double raw = gamma * 2.0 / denom_scale;
  if (direction == ShiftDirection::kReverse) raw = -raw;
  double ex = 2.0 / (cov.a_plus - s) - raw;
  double ey = 2.0 / (cov.a_minus - s) - raw;
  if (!(ex > 0.0) || !(ey > 0.0)) {
    throw Error(ErrorCode::kShiftOutOfRange,
                "shifted input exponent is not positive");
  }
  double x = alpha.real();
  double y = alpha.imag();
  ShiftedInput out;
  out.density = std::sqrt(ex * ey) / kPi * std::exp(-ex * x * x - ey * y * y);
  out.normalization = ShiftNormalization(cov, s, raw);
  return out;
}

double ShiftedMeasFactor(const MeasurementOutcome& outcome, double s,
                         double gamma, ShiftDirection direction,
                         double denom_scale, double normalization,
                         Complex beta) {
  if (!(denom_scale > 0.0) || !(gamma >= 0.0)) {
    throw Error(ErrorCode::kShiftOutOfRange, "invalid shift");
  }
  double raw = gamma * 2.0 / denom_scale;
  if (direction == ShiftDirection::kReverse) raw = -raw;
  double t = std::norm(beta);
  return normalization * PiMeasurementRadial(outcome, s, t) *
         std::exp(-raw * t);
}

double LambertW0(double x) {
  constexpr double kInvE = 0.36787944117144233;
  if (x < -kInvE) {
    if (x > -kInvE - 1e-16) return -1.0;
    throw Error(ErrorCode::kDomainError, "lambert_w0 requires x >= -1/e");
  }
  if (x == 0.0) return 0.0;
  double w;
  if (x < -0.32) {
    double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < 3.0) {
    w = std::log1p(x);
    w = w * (1.0 - std::log1p(w) / (2.0 + w));
  } else {
    double l = std::log(x);
    w = l - std::log(l);
  }
  for (int i = 0; i < 64; ++i) {
    double ew = std::exp(w);
    double f = w * ew - x;
    double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-17 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double Laguerre(int m, double x) {
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "degree must be >= 0");
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = 1.0 - x;
  for (int k = 1; k < m; ++k) {
    double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

RadialMax SupOverRadius(const std::function<double(double)>& g,
                        double t_feature, double t_max, double tail_limit) {
  constexpr int kLinear = 2048;
  constexpr int kLog = 2048;
  t_feature = std::max(t_feature, 1e-12);
  t_max = std::max(t_max, t_feature);
  std::vector<double> grid;
  grid.reserve(kLinear + kLog + 1);
  double u1 = std::sqrt(t_feature);
  for (int k = 0; k <= kLinear; ++k) {
    double u = u1 * k / kLinear;
    grid.push_back(u * u);
  }
  if (t_max > t_feature * (1.0 + 1e-12)) {
    double l0 = std::log(t_feature);
    double l1 = std::log(t_max);
    for (int k = 1; k <= kLog; ++k) {
      grid.push_back(std::exp(l0 + (l1 - l0) * k / kLog));
    }
  }
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double v = std::abs(g(grid[k]));
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  // Golden-section on u = sqrt(t) over the neighbouring grid cells.
  double lo = std::sqrt(grid[best == 0 ? 0 : best - 1]);
  double hi = std::sqrt(grid[std::min(best + 1, grid.size() - 1)]);
  auto h = [&](double u) { return std::abs(g(u * u)); };
  constexpr double kRatio = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kRatio * (b - a);
  double d = a + kRatio * (b - a);
  double fc = h(c);
  double fd = h(d);
  for (int it = 0; it < 200 && (b - a) > 1e-10 * (1.0 + std::abs(b)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kRatio * (b - a);
      fc = h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kRatio * (b - a);
      fd = h(d);
    }
  }
  RadialMax out{best_val, grid[best]};
  double u_ref = 0.5 * (a + b);
  double v_ref = h(u_ref);
  if (v_ref > out.value) out = {v_ref, u_ref * u_ref};
  if (tail_limit > out.value) out = {tail_limit, kInf};
  return out;
}

RadialMax ShiftedMeasurementSup(const MeasurementOutcome& outcome, double s,
                                double raw) {
  RequireOrdering(s);
  using Kind = MeasurementOutcome::Kind;
  double b = 2.0 / (s + 1.0);
  double kappa = b + raw;  // Gaussian decay of photon-number factors
  switch (outcome.kind) {
    case Kind::kMarginal:
      if (raw < 0.0) return {kInf, kInf};
      return {1.0, 0.0};
    case Kind::kNoClick:
      if (kappa < 0.0) return {kInf, kInf};
      return {b, 0.0};
    case Kind::kPhotonNumber:
      if (outcome.count == 0) {
        if (kappa < 0.0) return {kInf, kInf};
        return {b, 0.0};
      }
      if (outcome.count == 1) {
        if (!(kappa > 0.0)) return {kInf, kInf};
        double sp3 = std::pow(s + 1.0, 3);
        auto g = [&](double t) {
          return (8.0 * t + 2.0 * (s * s - 1.0)) / sp3 * std::exp(-kappa * t);
        };
        RadialMax out{std::abs(g(0.0)), 0.0};
        double t_star = 1.0 / kappa - (s * s - 1.0) / 4.0;
        if (t_star > 0.0 && std::abs(g(t_star)) > out.value) {
          out = {std::abs(g(t_star)), t_star};
        }
        return out;
      }
      return ShiftedMeasurementSupNumeric(outcome, s, raw);
    case Kind::kClick: {
      if (raw < 0.0) return {kInf, kInf};
      RadialMax out{std::abs(1.0 - b), 0.0};
      if (raw == 0.0) {
        if (1.0 > out.value) out = {1.0, kInf};
        return out;
      }
      double arg = b * (b + raw) / raw;
      if (arg > 1.0) {
        double t_star = std::log(arg) / b;
        double v = b / (b + raw) * std::exp(-raw * t_star);
        if (v > out.value) out = {v, t_star};
      }
      return out;
    }
  }
  return {kInf, kInf};
}

RadialMax ShiftedMeasurementSupNumeric(const MeasurementOutcome& outcome,
                                       double s, double raw) {
  RequireOrdering(s);
  using Kind = MeasurementOutcome::Kind;
  double b = 2.0 / (s + 1.0);
  auto g = [&](double t) {
    return PiMeasurementRadial(outcome, s, t) * std::exp(-raw * t);
  };
  if (outcome.kind == Kind::kClick || outcome.kind == Kind::kMarginal) {
    if (raw < 0.0) return {kInf, kInf};
    double tail = raw == 0.0 ? 1.0 : 0.0;
    double t_feature = outcome.kind == Kind::kClick ? 40.0 / b : 1.0;
    double t_max = raw > 0.0 ? std::max(t_feature, 60.0 / raw) : t_feature;
    return SupOverRadius(g, t_feature, std::min(t_max, 1e300), tail);
  }
  double kappa = b + raw;
  if (!(kappa > 0.0)) return {kInf, kInf};
  int m = outcome.kind == Kind::kPhotonNumber ? outcome.count : 0;
  double t_feature = (2.0 * m + 60.0) / kappa;
  return SupOverRadius(g, t_feature, t_feature, 0.0);
}

}  // namespace phasegbs
