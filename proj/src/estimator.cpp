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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "phasegbs/bounds.hpp"
#include "phasegbs/error.hpp"

namespace phasegbs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Kind = MeasurementOutcome::Kind;

bool IsFoldable(const MeasurementOutcome& o) {
  return o.kind == Kind::kMarginal || o.kind == Kind::kNoClick ||
         (o.kind == Kind::kPhotonNumber && o.count == 0);
}

// pi W(t) e^{-raw t}, written so that the exponentials combine before
// they can overflow.
double ActiveFactor(const MeasurementOutcome& o, double s, double raw,
                    double t) {
  double b = 2.0 / (s + 1.0);
  switch (o.kind) {
    case Kind::kMarginal: return std::exp(-raw * t);
    case Kind::kNoClick: return b * std::exp(-(b + raw) * t);
    case Kind::kClick:
      return std::exp(-raw * t) - b * std::exp(-(b + raw) * t);
    case Kind::kPhotonNumber:
      if (o.count == 0) return b * std::exp(-(b + raw) * t);
      if (o.count == 1) {
        double sp = s + 1.0;
        return (8.0 * t + 2.0 * (s * s - 1.0)) / (sp * sp * sp) *
               std::exp(-(b + raw) * t);
      }
      return PiMeasurementRadial(o, s, t) * std::exp(-raw * t);
  }
  return 0.0;
}

void RequireOrderingBelowClassicality(const CircuitSpec& circuit, double s) {
  if (!(s > -1.0)) {
    throw Error(ErrorCode::kOrderingOutOfRange, "s must exceed -1");
  }
  if (s > circuit.s_max()) {
    throw Error(ErrorCode::kSingularOrdering,
                "s exceeds the classicality s_max of the inputs");
  }
}

struct ChunkSum {
  double sum = 0.0;
  double sumsq = 0.0;
};

std::int64_t ChunkCount(std::int64_t n, int chunks, int c) {
  return n / chunks + (c < n % chunks ? 1 : 0);
}

ChunkSum RunChunk(const FoldedSampler& sampler, std::uint64_t seed, int chunk,
                  std::int64_t count) {
  Engine engine = MakeStream(seed, static_cast<std::uint64_t>(chunk));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(2 * sampler.num_modes);
  Eigen::VectorXd y(sampler.g.rows());
  ChunkSum out;
  for (std::int64_t i = 0; i < count; ++i) {
    double x = sampler.Sample(engine, normal, z, y);
    out.sum += x;
    out.sumsq += x * x;
  }
  return out;
}

double LogGridPoint(int k) {
  const double lo = -4.0;
  const double hi = std::log10(0.999);
  return std::pow(10.0, lo + (hi - lo) * k / 63.0);
}

// Log of the folded sup bound for a normalized shift; +inf when invalid.
double LogBoundAt(const CircuitSpec& circuit, double s, double gamma,
                  ShiftDirection dir, bool fold) {
  try {
    double raw = RawShift(gamma, dir, s, circuit.a_max());
    FoldedSampler fs = BuildFoldedSampler(circuit, s, raw, fold);
    double v = fs.log_sup_weight();
    return std::isnan(v) ? kInf : v;
  } catch (const Error&) {
    return kInf;
  }
}

GammaChoice Choice(double gamma, ShiftDirection dir, std::string id) {
  GammaChoice g;
  g.gamma = gamma;
  g.direction = dir;
  g.formula_id = std::move(id);
  if (!(g.gamma >= 0.0 && g.gamma < 1.0)) g.degenerate = true;
  return g;
}

bool AllOutcomes(const MeasurementPattern& p, const MeasurementOutcome& o) {
  return std::all_of(p.begin(), p.end(),
                     [&](const MeasurementOutcome& x) { return x == o; });
}

}  // namespace

double FoldedSampler::log_sup_weight() const {
  double v = log_prefactor;
  for (double s : active_sups) {
    if (s == 0.0) return -kInf;
    v += std::log(s);
  }
  return v;
}

double FoldedSampler::Weight(const Eigen::VectorXd& z) const {
  Eigen::VectorXd y = g * z;
  const int na = static_cast<int>(active_modes.size());
  double prod = 1.0;
  for (int k = 0; k < na; ++k) {
    double t = y(k) * y(k) + y(k + na) * y(k + na);
    prod *= ActiveFactor(active_outcomes[k], s, raw_shift, t);
  }
  return prod;
}

double FoldedSampler::Sample(Engine& engine,
                             std::normal_distribution<double>& normal,
                             Eigen::VectorXd& z, Eigen::VectorXd& y) const {
  for (int i = 0; i < z.size(); ++i) z(i) = normal(engine);
  y.noalias() = g * z;
  const int na = static_cast<int>(active_modes.size());
  double prod = 1.0;
  for (int k = 0; k < na; ++k) {
    double t = y(k) * y(k) + y(k + na) * y(k + na);
    prod *= ActiveFactor(active_outcomes[k], s, raw_shift, t);
  }
  return prod;
}

FoldedSampler BuildFoldedSampler(const CircuitSpec& circuit, double s,
                                 double raw_shift, bool fold) {
  circuit.Validate();
  RequireOrderingBelowClassicality(circuit, s);
  const int m = circuit.num_modes();
  std::vector<ModeCovariance> covs = circuit.covariances();
  FoldedSampler fs;
  fs.num_modes = m;
  fs.s = s;
  fs.raw_shift = raw_shift;

  // Standard deviations (up to 1/sqrt 2) of the shifted input quadratures;
  // zero for a delta quadrature.
  RVector d_in = RVector::Zero(2 * m);
  double log_norm = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int q = 0; q < 2; ++q) {
      double a = q == 0 ? covs[i].a_plus : covs[i].a_minus;
      double d = a - s;
      if (d < 0.0) {
        throw Error(ErrorCode::kSingularOrdering, "s exceeds an input variance");
      }
      if (d == 0.0) continue;
      double lam = 2.0 / d;
      double shifted = lam - raw_shift;
      if (!(shifted > 0.0)) {
        throw Error(ErrorCode::kShiftOutOfRange,
                    "shift leaves a non-normalizable input density");
      }
      d_in(q * m + i) = 1.0 / std::sqrt(shifted);
      log_norm += 0.5 * std::log(lam / shifted);
    }
  }

  RMatrix smap = RealOrthogonal(circuit.unitary.transfer());
  double b = 2.0 / (s + 1.0);
  RVector delta = RVector::Zero(2 * m);
  double log_c = 0.0;
  for (int j = 0; j < m; ++j) {
    const MeasurementOutcome& o = circuit.pattern[j];
    if (fold && IsFoldable(o)) {
      double kappa = o.kind == Kind::kMarginal ? 0.0 : b;
      if (kappa > 0.0) log_c += std::log(kappa);
      delta(j) = kappa + raw_shift;
      delta(j + m) = kappa + raw_shift;
    } else {
      fs.active_modes.push_back(j);
      fs.active_outcomes.push_back(o);
    }
  }

  RMatrix sd = smap * d_in.asDiagonal();
  RMatrix h = RMatrix::Identity(2 * m, 2 * m) +
              sd.transpose() * delta.asDiagonal() * sd;
  Eigen::LLT<RMatrix> llt(h);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "folded Gaussian is not normalizable; shift out of window");
  }
  RMatrix l = llt.matrixL();
  double log_det_half = 0.0;
  for (int i = 0; i < 2 * m; ++i) {
    if (!(l(i, i) > 0.0)) {
      throw Error(ErrorCode::kNotPositiveDefinite, "singular folded Gaussian");
    }
    log_det_half += std::log(l(i, i));
  }

  const int na = static_cast<int>(fs.active_modes.size());
  RMatrix sa(2 * na, 2 * m);
  for (int k = 0; k < na; ++k) {
    sa.row(k) = sd.row(fs.active_modes[k]);
    sa.row(k + na) = sd.row(fs.active_modes[k] + m);
  }
  // g = sa L^{-T} / sqrt 2
  RMatrix lt_inv_sat = l.triangularView<Eigen::Lower>().solve(sa.transpose());
  fs.g = lt_inv_sat.transpose() / std::sqrt(2.0);
  RMatrix hinv = llt.solve(RMatrix::Identity(2 * m, 2 * m));
  fs.input_cov = 0.5 * d_in.asDiagonal() * hinv * d_in.asDiagonal();
  fs.log_prefactor = log_norm - log_det_half + log_c;
  for (const MeasurementOutcome& o : fs.active_outcomes) {
    fs.active_sups.push_back(ShiftedMeasurementSup(o, s, raw_shift).value);
  }
  return fs;
}

FoldedSampler BuildFoldedSampler(const CircuitSpec& circuit, double s,
                                 double gamma, ShiftDirection direction,
                                 bool fold) {
  return BuildFoldedSampler(circuit, s,
                            RawShift(gamma, direction, s, circuit.a_max()),
                            fold);
}

FactorBound ComputeFactorBound(const CircuitSpec& circuit, double s,
                               double gamma, ShiftDirection direction) {
  circuit.Validate();
  RequireOrderingBelowClassicality(circuit, s);
  double raw = RawShift(gamma, direction, s, circuit.a_max());
  std::vector<ModeCovariance> covs = circuit.covariances();
  FactorBound fb;
  fb.product = 1.0;
  for (int j = 0; j < circuit.num_modes(); ++j) {
    double nj = ShiftNormalization(covs[j], s, raw);
    double a = nj * ShiftedMeasurementSup(circuit.pattern[j], s, raw).value;
    double n = nj * ShiftedMeasurementSupNumeric(circuit.pattern[j], s, raw).value;
    fb.per_mode.push_back(a);
    fb.per_mode_numeric.push_back(n);
    fb.product *= a;
    fb.c = std::max(fb.c, a);
  }
  return fb;
}

double NegativityBound(const CircuitSpec& circuit, double s) {
  return ComputeFactorBound(circuit, s, 0.0, ShiftDirection::kForward).product;
}

double ModifiedNegativityBound(const CircuitSpec& circuit, double s,
                               double gamma, ShiftDirection direction) {
  return ComputeFactorBound(circuit, s, gamma, direction).product;
}

GammaChoice OptimalGammaSqueezed(const std::vector<double>& lambda,
                                 double lambda_max) {
  (void)lambda;  // the optimum depends on lambda_max only
  double w = LambertWOfInvE();
  double l = lambda_max;
  if (l <= w / (1.0 - w)) {
    return Choice((2.0 * (1.0 + l) * w - 2.0 * l) / (1.0 - l),
                  ShiftDirection::kForward, "gamma_sq_forward");
  }
  return Choice((l - (1.0 + l) * w) / l, ShiftDirection::kReverse,
                "gamma_sq_reverse");
}

GammaChoice OptimalGammaThermal(double lambda_min, double lambda_max) {
  double lmin = lambda_min, lmax = lambda_max;
  if (lmin <= 0.0) {
    if (lmax < 0.5) {
      return Choice((1.0 - 2.0 * lmax) / (2.0 * (1.0 - lmax)),
                    ShiftDirection::kForward, "gamma_th_forward");
    }
    return Choice((2.0 * lmax - 1.0) / (2.0 * lmax), ShiftDirection::kReverse,
                  "gamma_th_reverse");
  }
  if (lmin >= 0.5) {
    GammaChoice g = Choice(0.0, ShiftDirection::kForward, "gamma_th_fpras");
    g.use_multiplicative = true;
    g.degenerate = true;
    return g;
  }
  if (lmax - lmin <= 1e-12) {
    GammaChoice g = Choice(0.0, ShiftDirection::kForward, "gamma_th_equal");
    g.degenerate = true;
    return g;
  }
  double d = std::sqrt(4.0 * lmax * lmax - 8.0 * lmax * lmin +
                       5.0 * lmin * lmin);
  double num = lmin + lmax * (4.0 * lmin - 2.0) + d - lmin * (3.0 * lmin + d);
  // Both closed forms describe the same raw shift; the sign of the numerator
  // picks the direction in which it is expressible.
  if (num > 0.0) {
    return Choice(num / (2.0 * lmin * (lmax - lmin)), ShiftDirection::kReverse,
                  "gamma_th_d_reverse");
  }
  return Choice(num / (2.0 * lmin * (lmax - 1.0)), ShiftDirection::kForward,
                "gamma_th_d_forward");
}

GammaChoice OptimalGammaThresholdSqueezed(double lambda_max) {
  return Choice(0.5 * (1.0 - lambda_max), ShiftDirection::kForward,
                "gamma_tor_sq");
}

GammaChoice OptimalGammaThresholdThermal(double lambda_max) {
  return Choice(0.5 * (1.0 - lambda_max), ShiftDirection::kForward,
                "gamma_tor_th");
}

GammaChoice OptimalGammaThresholdSqueezedThermal(double n, double r_max) {
  return Choice(std::exp(-std::tanh(r_max)) / (n + 1.0),
                ShiftDirection::kForward, "gamma_tor_st");
}

GammaChoice OptimalGammaSqueezedThermal(double n, double r_max) {
  return Choice(std::exp(-std::tanh(r_max)) * n / (n + 1.0),
                ShiftDirection::kReverse, "gamma_st_reverse");
}

std::int64_t SampleCount(double c, int m, double epsilon, double delta) {
  if (!(c >= 0.0) || std::isinf(c)) {
    throw Error(ErrorCode::kInvalidArgument, "factor bound must be finite");
  }
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "need epsilon > 0, delta in (0,1)");
  }
  if (c == 0.0) return 1;
  double log_n = std::log(2.0) + 2.0 * m * std::log(c) +
                 std::log(std::log(2.0 / delta)) - 2.0 * std::log(epsilon);
  if (log_n > 63.0 * std::log(2.0)) {
    throw Error(ErrorCode::kBudgetOverflow,
                "required sample count exceeds 2^63 (log N = " +
                    std::to_string(log_n) + ")");
  }
  double n = std::ceil(std::exp(log_n));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

double DefaultOrdering(const CircuitSpec& circuit) {
  return circuit.s_max() - 1e-9;
}

GammaChoice NumericGamma(const CircuitSpec& circuit, double s, bool fold) {
  GammaChoice best = Choice(0.0, ShiftDirection::kForward, "numeric");
  double best_v = LogBoundAt(circuit, s, 0.0, ShiftDirection::kForward, fold);
  for (ShiftDirection dir : {ShiftDirection::kForward, ShiftDirection::kReverse}) {
    int best_k = -1;
    double dir_v = kInf;
    for (int k = 0; k < 64; ++k) {
      double v = LogBoundAt(circuit, s, LogGridPoint(k), dir, fold);
      if (v < dir_v) {
        dir_v = v;
        best_k = k;
      }
    }
    if (best_k < 0) continue;
    // Golden-section on log10(gamma) between the grid neighbours.
    double lo = std::log10(LogGridPoint(std::max(best_k - 1, 0)));
    double hi = std::log10(LogGridPoint(std::min(best_k + 1, 63)));
    if (best_k == 0) lo -= 2.0;
    auto f = [&](double u) {
      return LogBoundAt(circuit, s, std::pow(10.0, u), dir, fold);
    };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
      if (f1 <= f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - phi * (hi - lo); f1 = f(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + phi * (hi - lo); f2 = f(x2);
      }
    }
    double u = f1 <= f2 ? x1 : x2;
    double v = std::min(f1, f2);
    double gamma = std::pow(10.0, u);
    if (dir_v < v) {
      v = dir_v;
      gamma = LogGridPoint(best_k);
    }
    if (v < best_v) {
      best_v = v;
      best = Choice(gamma, dir, "numeric");
    }
  }
  return best;
}

GammaChoice ChooseGamma(const CircuitSpec& circuit, double s, bool fold) {
  const auto& modes = circuit.modes;
  bool lossless = circuit.eta == 1.0;
  bool at_smax = std::abs(s - circuit.s_max()) <= 1e-6 * std::max(1.0, circuit.s_max());
  double r_max = 0.0, n_min = kInf, n_max = 0.0;
  bool all_n_zero = true, all_r_zero = true, common_n = true;
  for (const auto& md : modes) {
    r_max = std::max(r_max, md.r);
    n_min = std::min(n_min, md.n);
    n_max = std::max(n_max, md.n);
    if (md.n != 0.0) all_n_zero = false;
    if (md.r != 0.0) all_r_zero = false;
    if (std::abs(md.n - modes.front().n) > 1e-12 * (1.0 + md.n)) common_n = false;
  }
  GammaChoice g;
  bool found = false;
  if (lossless && at_smax) {
    bool pn1 = AllOutcomes(circuit.pattern, MeasurementOutcome::PhotonNumber(1));
    bool click = AllOutcomes(circuit.pattern, MeasurementOutcome::Click());
    std::vector<double> sq;
    for (const auto& md : modes) sq.push_back(std::tanh(md.r));
    double lmin = n_min / (n_min + 1.0), lmax = n_max / (n_max + 1.0);
    if (pn1) {
      if (all_n_zero) {
        g = OptimalGammaSqueezed(sq, std::tanh(r_max));
        found = true;
      } else if (all_r_zero) {
        g = OptimalGammaThermal(lmin, lmax);
        found = true;
      } else if (common_n) {
        g = OptimalGammaSqueezedThermal(n_max, r_max);
        found = true;
      }
    } else if (click) {
      if (all_n_zero) {
        g = OptimalGammaThresholdSqueezed(std::tanh(r_max));
        found = true;
      } else if (all_r_zero) {
        g = OptimalGammaThresholdThermal(lmax);
        found = true;
      } else if (common_n) {
        g = OptimalGammaThresholdSqueezedThermal(n_max, r_max);
        found = true;
      }
    }
  }
  if (found && !g.degenerate) {
    if (g.direction == ShiftDirection::kForward && g.gamma > 0.0 &&
        !(circuit.a_max() > s)) {
      g.gamma = 0.0;
    }
    // The closed forms are tuned for lambda_j = lambda_max; keep them only
    // when they do not lose to the unshifted bound.
    double shifted = LogBoundAt(circuit, s, g.gamma, g.direction, fold);
    double plain = LogBoundAt(circuit, s, 0.0, ShiftDirection::kForward, fold);
    if (shifted <= plain + 1e-12) return g;
  }
  GammaChoice n = NumericGamma(circuit, s, fold);
  if (found) n.use_multiplicative = g.use_multiplicative;
  return n;
}

EstimateReport EstimateProbability(const CircuitSpec& circuit,
                                   const EstimatorConfig& config) {
  auto t0 = std::chrono::steady_clock::now();
  circuit.Validate();
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0) ||
      !(config.delta > 0.0 && config.delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon and delta must lie in (0,1)");
  }
  if (config.chunks < 1) {
    throw Error(ErrorCode::kInvalidArgument, "chunks must be >= 1");
  }
  const int m = circuit.num_modes();
  double s = config.s ? *config.s : DefaultOrdering(circuit);
  RequireOrderingBelowClassicality(circuit, s);

  GammaChoice gc;
  if (config.gamma_mode == GammaMode::kFixed) {
    gc = Choice(config.gamma, config.direction, "fixed");
  } else {
    gc = ChooseGamma(circuit, s, config.fold);
  }
  double raw = RawShift(gc.gamma, gc.direction, s, circuit.a_max());
  FoldedSampler fs = BuildFoldedSampler(circuit, s, raw, config.fold);
  double log_b = fs.log_sup_weight();
  if (std::isinf(log_b) && log_b > 0.0) {
    throw Error(ErrorCode::kShiftOutOfRange,
                "a measurement factor is unbounded at this shift");
  }

  EstimateReport rep;
  rep.s = s;
  rep.gamma = gc.gamma;
  rep.direction = gc.direction;
  rep.raw_shift = raw;
  rep.gamma_source = gc.formula_id;
  rep.seed = config.seed;
  rep.chunks = config.chunks;
  rep.active_modes = fs.active_modes;
  rep.sup_weight = std::exp(log_b);
  rep.factor_bound = std::exp(log_b / m);
  FactorBound fb = ComputeFactorBound(circuit, s, gc.gamma, gc.direction);
  rep.per_mode_sups = fb.per_mode;
  rep.factor_bound_max = fb.c;
  rep.mod_neg_bound = fb.product;
  rep.neg_bound = NegativityBound(circuit, s);

  const double log_term = std::log(2.0 / config.delta);
  if (fs.active_modes.empty()) {
    // Every factor was integrated analytically.
    rep.estimate = std::exp(fs.log_prefactor);
    rep.n_used = 1;
    rep.conf_radius = 0.0;
    rep.std_error = 0.0;
    rep.wall_time = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0).count();
    return rep;
  }

  std::int64_t n;
  if (config.n_samples) {
    if (*config.n_samples < 1) {
      throw Error(ErrorCode::kInvalidArgument, "n_samples must be >= 1");
    }
    n = *config.n_samples;
  } else {
    n = config.epsilon_relative_to_bound
            ? SampleCount(1.0, m, config.epsilon, config.delta)
            : SampleCount(rep.factor_bound, m, config.epsilon, config.delta);
    if (rep.factor_bound < 1.0) n = std::max<std::int64_t>(n, 10000);
  }

  std::vector<ChunkSum> parts(config.chunks);
  if (config.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int c = 0; c < config.chunks; ++c) {
      parts[c] = RunChunk(fs, config.seed, c, ChunkCount(n, config.chunks, c));
    }
  } else {
    for (int c = 0; c < config.chunks; ++c) {
      parts[c] = RunChunk(fs, config.seed, c, ChunkCount(n, config.chunks, c));
    }
  }
  double sum = 0.0, sumsq = 0.0;
  for (const ChunkSum& p : parts) {
    sum += p.sum;
    sumsq += p.sumsq;
  }
  double nd = static_cast<double>(n);
  double mean = sum / nd;
  double var = n > 1 ? std::max(0.0, (sumsq - nd * mean * mean) / (nd - 1.0)) : 0.0;
  double pref = std::exp(fs.log_prefactor);
  rep.estimate = pref * mean;
  rep.std_error = pref * std::sqrt(var / nd);
  rep.n_used = n;
  rep.conf_radius = rep.sup_weight * std::sqrt(2.0 * log_term / nd);
  rep.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<TracePoint> ConvergenceTrace(const CircuitSpec& circuit,
                                         const EstimatorConfig& config,
                                         int points) {
  if (points < 1) throw Error(ErrorCode::kInvalidArgument, "points must be >= 1");
  EstimatorConfig cfg = config;
  cfg.n_samples = 1;
  EstimateReport probe = EstimateProbability(circuit, cfg);
  std::int64_t n = config.n_samples ? *config.n_samples : 0;
  if (n == 0) {
    n = config.epsilon_relative_to_bound
            ? SampleCount(1.0, circuit.num_modes(), config.epsilon, config.delta)
            : SampleCount(probe.factor_bound, circuit.num_modes(),
                          config.epsilon, config.delta);
    if (probe.factor_bound < 1.0) n = std::max<std::int64_t>(n, 10000);
  }
  FoldedSampler fs = BuildFoldedSampler(circuit, probe.s, probe.raw_shift, config.fold);
  double pref = std::exp(fs.log_prefactor);
  double sup = std::exp(fs.log_sup_weight());
  double log_term = std::log(2.0 / config.delta);
  std::vector<TracePoint> out;
  std::vector<std::int64_t> marks;
  for (int k = 1; k <= points; ++k) {
    std::int64_t mk = std::max<std::int64_t>(1, n * k / points);
    if (marks.empty() || mk > marks.back()) marks.push_back(mk);
  }
  if (fs.active_modes.empty()) {
    for (std::int64_t mk : marks) out.push_back({mk, pref, 0.0});
    return out;
  }
  Eigen::VectorXd z(2 * fs.num_modes);
  Eigen::VectorXd y(fs.g.rows());
  double sum = 0.0;
  std::int64_t done = 0;
  size_t next = 0;
  for (int c = 0; c < config.chunks && next < marks.size(); ++c) {
    Engine engine = MakeStream(config.seed, static_cast<std::uint64_t>(c));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::int64_t cnt = ChunkCount(n, config.chunks, c);
    for (std::int64_t i = 0; i < cnt; ++i) {
      sum += fs.Sample(engine, normal, z, y);
      ++done;
      if (next < marks.size() && done == marks[next]) {
        double nd = static_cast<double>(done);
        out.push_back({done, pref * sum / nd, sup * std::sqrt(2.0 * log_term / nd)});
        ++next;
      }
    }
  }
  return out;
}

namespace {

EstimatorConfig MatrixConfig(const EstimatorConfig& config) {
  EstimatorConfig c = config;
  c.epsilon_relative_to_bound = true;
  return c;
}

void FillFromProbability(MatrixEstimate& out, double log_prefactor) {
  out.log_prefactor = log_prefactor;
  double pref = std::exp(log_prefactor);
  out.value = pref * out.probability.estimate;
  out.radius = pref * out.probability.conf_radius;
}

std::vector<double> Tanh(const std::vector<double>& r) {
  std::vector<double> out;
  for (double x : r) out.push_back(std::tanh(x));
  return out;
}

}  // namespace

MatrixEstimate EstimateHafnianSq(const CMatrix& r, const EstimatorConfig& config,
                                 double a) {
  Embedding emb = EmbedHafnian(r, a);
  MatrixEstimate out;
  out.probability = EstimateProbability(emb.circuit, MatrixConfig(config));
  FillFromProbability(out, emb.log_prefactor());
  Budget b = BudgetHafnian(emb.lambda);
  out.budget_factors = b.factors;
  out.error_budget = config.epsilon * b.product;
  out.uniform_budget = config.epsilon *
                       HafnianEnvelopeUpper(emb.lambda.front(), emb.circuit.num_modes());
  out.formula_id = b.formula_id;
  return out;
}

MatrixEstimate EstimatePermanentHpsd(const CMatrix& bm,
                                     const EstimatorConfig& config, double a) {
  Embedding emb = EmbedPermanent(bm, a);
  const int m = emb.circuit.num_modes();
  MatrixEstimate out;
  out.probability = EstimateProbability(emb.circuit, MatrixConfig(config));
  FillFromProbability(out, emb.log_prefactor());
  double lmax = emb.lambda.front();
  out.uniform_budget = config.epsilon * PermanentEnvelopeUpper(lmax, m);
  try {
    Budget b = BudgetPermanent(emb.lambda, a);
    out.budget_factors = b.factors;
    out.error_budget = config.epsilon * b.product;
    out.formula_id = b.formula_id;
    out.beats_gurvits = BeatsGurvits(b, lmax);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnsupported) throw;
    // Multiplicative regime: only the numeric sup bound is available.
    double per_mode = std::exp((out.log_prefactor +
                                std::log(out.probability.sup_weight)) / m);
    out.budget_factors.assign(m, per_mode);
    out.error_budget = config.epsilon * std::exp(out.log_prefactor) *
                       out.probability.sup_weight;
    out.formula_id = "numeric";
    out.beats_gurvits = per_mode < lmax;
  }
  return out;
}

CircuitSpec CircuitFromBlock(const MatrixClass& mat,
                             const MeasurementPattern& pattern,
                             double* log_prefactor) {
  const Decomposition& dec = mat.decomposition();
  const int m = mat.num_modes();
  CircuitSpec c;
  double lp = 0.0;
  switch (mat.tag()) {
    case MatrixTag::kBlockRprime:
      for (int i = 0; i < m; ++i) {
        c.modes.push_back({mat.squeezing()[i], 0.0});
        lp += std::log(std::cosh(mat.squeezing()[i]));
      }
      break;
    case MatrixTag::kBlockBprime:
      for (int i = 0; i < m; ++i) {
        c.modes.push_back({0.0, mat.thermal()[i]});
        lp += std::log1p(mat.thermal()[i]);
      }
      break;
    case MatrixTag::kBlockA:
    case MatrixTag::kBlockAprime:
      for (int i = 0; i < m; ++i) {
        c.modes.push_back({mat.squeezing()[i], mat.thermal()[i]});
        lp += std::log(SqueezedThermalNorm(mat.thermal()[i], mat.squeezing()[i]));
      }
      break;
    default:
      throw Error(ErrorCode::kUnsupported, "matrix tag has no block circuit");
  }
  if (static_cast<int>(pattern.size()) != m) {
    throw Error(ErrorCode::kDimensionMismatch, "pattern size");
  }
  c.unitary = Interferometer::FromTransfer(dec.u);
  c.pattern = pattern;
  c.Validate();
  if (log_prefactor) *log_prefactor = lp;
  return c;
}

MatrixEstimate EstimateTorontonian(const MatrixClass& mat,
                                   const EstimatorConfig& config) {
  if (mat.tag() != MatrixTag::kBlockRprime &&
      mat.tag() != MatrixTag::kBlockBprime &&
      mat.tag() != MatrixTag::kBlockAprime) {
    throw Error(ErrorCode::kUnsupported,
                "Torontonian estimation needs BlockRprime, BlockBprime or "
                "BlockAprime");
  }
  const int m = mat.num_modes();
  double lp = 0.0;
  CircuitSpec c = CircuitFromBlock(
      mat, MeasurementPattern(m, MeasurementOutcome::Click()), &lp);
  MatrixEstimate out;
  out.probability = EstimateProbability(c, MatrixConfig(config));
  FillFromProbability(out, lp);
  Budget b;
  const std::vector<double>& r = mat.squeezing();
  bool pure = std::all_of(mat.thermal().begin(), mat.thermal().end(),
                          [](double n) { return n == 0.0; });
  bool no_sq = std::all_of(r.begin(), r.end(), [](double x) { return x == 0.0; });
  if (mat.tag() == MatrixTag::kBlockRprime || pure) {
    b = BudgetTorontonianSqueezed(Tanh(r));
  } else if (mat.tag() == MatrixTag::kBlockBprime || no_sq) {
    std::vector<double> lam;
    for (double n : mat.thermal()) lam.push_back(n / (n + 1.0));
    b = BudgetTorontonianThermal(lam);
  } else {
    b = BudgetTorontonianSqueezedThermal(mat.thermal().front(), r);
  }
  out.budget_factors = b.factors;
  out.error_budget = config.epsilon * b.product;
  double fmax = b.factors.empty() ? 0.0
                                  : *std::max_element(b.factors.begin(), b.factors.end());
  out.uniform_budget = config.epsilon * std::pow(fmax, m);
  out.formula_id = b.formula_id;
  return out;
}

MatrixEstimate EstimateHafnianBlock(const MatrixClass& mat,
                                    const EstimatorConfig& config) {
  if (mat.tag() != MatrixTag::kBlockA) {
    throw Error(ErrorCode::kUnsupported, "Haf(A) estimation needs a BlockA matrix");
  }
  const int m = mat.num_modes();
  double lp = 0.0;
  CircuitSpec c = CircuitFromBlock(
      mat, MeasurementPattern(m, MeasurementOutcome::PhotonNumber(1)), &lp);
  MatrixEstimate out;
  out.probability = EstimateProbability(c, MatrixConfig(config));
  FillFromProbability(out, lp);
  Budget b = BudgetHafnianBlock(mat.thermal().front(), mat.squeezing());
  out.budget_factors = b.factors;
  out.error_budget = config.epsilon * b.product;
  double fmax = *std::max_element(b.factors.begin(), b.factors.end());
  out.uniform_budget = config.epsilon * std::pow(fmax, m);
  out.formula_id = b.formula_id;
  return out;
}

}  // namespace phasegbs
