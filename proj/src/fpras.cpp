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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "phasegbs/error.hpp"
#include "phasegbs/rng.hpp"

namespace phasegbs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-12;
using Kind = MeasurementOutcome::Kind;

void RequireNonNegative(double a, double b, double c) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(c >= 0.0)) {
    throw Error(ErrorCode::kNegativeCoefficient,
                "log-concavity check needs a, b, c >= 0");
  }
}

// Snaps a margin within rounding of the boundary to zero.
bool Decide(double& margin, double scale) {
  if (std::abs(margin) <= kRelTol * std::max(1.0, scale)) margin = 0.0;
  return margin >= 0.0;
}

// NaN flags a negative factor, which no log-concave function can have.
double LogFactor(FactorFamily fam, double a, double b, double c, double q) {
  double base = fam == FactorFamily::kQuadraticFactor ? a + b * q
                                                      : a - b * std::exp(-b * q);
  if (base < 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (base == 0.0) return -kInf;
  return std::log(base) - c * q;
}

// Certificate for a coefficient triple outside the quadratic check's
// preconditions; such triples do not hold.
LogConcavityCertificate SafeQuadratic(double a, double b, double c) {
  try {
    return CheckQuadraticFactor(a, b, c);
  } catch (const Error&) {
    LogConcavityCertificate cert;
    cert.family = FactorFamily::kQuadraticFactor;
    cert.a = a; cert.b = b; cert.c = c;
    cert.margin = std::isinf(c) ? a : c * a - b;
    if (cert.margin >= 0.0) cert.margin = -std::abs(a);
    cert.holds = false;
    return cert;
  }
}

LogConcavityCertificate SafeThreshold(double a, double b, double c) {
  try {
    return CheckThresholdFactor(a, b, c);
  } catch (const Error&) {
    LogConcavityCertificate cert;
    cert.family = FactorFamily::kThresholdFactor;
    cert.a = a; cert.b = b; cert.c = c;
    cert.margin = a - b;
    if (cert.margin >= 0.0) cert.margin = -kRelTol;
    cert.holds = false;
    return cert;
  }
}

double InvPrecision(double d) { return d > 0.0 ? 2.0 / d : kInf; }

ConditionResult Finish(ConditionResult r) {
  r.coefficients_hold = std::all_of(
      r.certificates.begin(), r.certificates.end(),
      [](const LogConcavityCertificate& c) { return c.holds; });
  return r;
}

}  // namespace

const char* FactorFamilyName(FactorFamily f) {
  return f == FactorFamily::kQuadraticFactor ? "QuadraticFactor"
                                             : "ThresholdFactor";
}

LogConcavityCertificate CheckQuadraticFactor(double a, double b, double c) {
  RequireNonNegative(a, b, c);
  LogConcavityCertificate cert;
  cert.family = FactorFamily::kQuadraticFactor;
  cert.a = a; cert.b = b; cert.c = c;
  if (std::isinf(c)) {
    cert.margin = kInf;  // point mass at the origin
    cert.holds = true;
    return cert;
  }
  cert.margin = c * a - b;
  cert.holds = Decide(cert.margin, std::max(c * a, b));
  return cert;
}

LogConcavityCertificate CheckThresholdFactor(double a, double b, double c) {
  RequireNonNegative(a, b, c);
  if (!(c > 0.0)) {
    throw Error(ErrorCode::kNegativeCoefficient, "threshold check needs c > 0");
  }
  if (!(a > b)) {
    throw Error(ErrorCode::kNonPositiveFactor,
                "a - b e^{-b q} must be positive (need a > b)");
  }
  LogConcavityCertificate cert;
  cert.family = FactorFamily::kThresholdFactor;
  cert.a = a; cert.b = b; cert.c = c;
  double threshold = b * b / c + 2.0 * b;  // (b^2 + 2bc)/c, finite at c = inf
  cert.margin = a - threshold;
  cert.holds = Decide(cert.margin, std::max(a, threshold));
  return cert;
}

LineScan ScanLogConcavity(FactorFamily family, double a, double b, double c,
                          int lines, std::uint64_t seed) {
  LineScan out;
  out.max_second_difference = -kInf;
  if (std::isinf(c)) {
    out.finite = false;
    out.max_second_difference = 0.0;
    return out;
  }
  double scale = std::max({c, b, 1e-12});
  double ell = 1.0 / std::sqrt(scale);
  double range = 4.0 * ell;
  Engine eng = MakeStream(seed, 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double two_pi = 2.0 * std::acos(-1.0);
  const int kPoints = 401;
  for (int l = 0; l < lines; ++l) {
    double phi = two_pi * unif(eng);
    double dir[2] = {std::cos(phi), std::sin(phi)};
    double org[2] = {0.0, 0.0};
    if (l > 0) {
      double rad = 0.5 * range * std::sqrt(unif(eng));
      double psi = two_pi * unif(eng);
      org[0] = rad * std::cos(psi);
      org[1] = rad * std::sin(psi);
    }
    auto logf = [&](double tau) {
      double x = org[0] + tau * dir[0];
      double y = org[1] + tau * dir[1];
      return LogFactor(family, a, b, c, x * x + y * y);
    };
    for (int k = 0; k < kPoints; ++k) {
      double tau = -range + 2.0 * range * k / (kPoints - 1);
      for (double step : {1e-3, 1e-2, 1e-1}) {
        double h = step * ell;
        double v0 = logf(tau), vp = logf(tau + h), vm = logf(tau - h);
        double d2;
        if (std::isnan(v0) || std::isnan(vp) || std::isnan(vm)) {
          d2 = kInf;
        } else if (std::isinf(v0) || std::isinf(vp) || std::isinf(vm)) {
          continue;
        } else {
          d2 = vp - 2.0 * v0 + vm;
        }
        if (d2 > out.max_second_difference) {
          out.max_second_difference = d2;
          out.worst.origin[0] = org[0];
          out.worst.origin[1] = org[1];
          out.worst.direction[0] = dir[0];
          out.worst.direction[1] = dir[1];
          out.worst.tau = tau;
          out.worst.second_difference = d2;
        }
      }
    }
  }
  return out;
}

LogConcavityCertificate WithNumericWitness(LogConcavityCertificate cert,
                                           int lines, std::uint64_t seed) {
  LineScan scan = ScanLogConcavity(cert.family, cert.a, cert.b, cert.c, lines, seed);
  if (scan.finite) cert.witness_line = scan.worst;
  return cert;
}

double HafnianConditionThreshold(double r) {
  return 0.25 * (6.0 * std::sinh(2.0 * r) +
                 std::sqrt(18.0 * std::cosh(4.0 * r) - 14.0) - 2.0);
}

double TorSqueezedThermalThreshold(double r) {
  return 0.5 * (std::exp(2.0 * r) * std::sqrt(std::exp(8.0 * r) + 3.0) +
                std::exp(6.0 * r) - 1.0);
}

double GbsNoiseThreshold(double eta, double r) {
  if (!(eta < 1.0)) return kInf;
  return (std::exp(-r) * eta * std::sinh(r) +
          std::sqrt(1.0 + eta * std::sinh(2.0 * r))) /
         (1.0 - eta);
}

ConditionResult FprasConditionPermanent(const std::vector<double>& lambda) {
  if (lambda.empty()) throw Error(ErrorCode::kDimensionMismatch, "empty spectrum");
  double lmin = *std::min_element(lambda.begin(), lambda.end());
  double lmax = *std::max_element(lambda.begin(), lambda.end());
  if (!(lmax < 1.0) || lmin < 0.0) {
    throw Error(ErrorCode::kDomainError, "eigenvalues must lie in (0, 1)");
  }
  if (lmin == 0.0) {
    throw Error(ErrorCode::kZeroEigenvalue,
                "lambda_min = 0: the multiplicative condition fails");
  }
  ConditionResult r;
  r.formula_id = "per_ratio";
  r.threshold = 2.0;
  r.margin = 2.0 - lmax / lmin;
  r.holds = Decide(r.margin, 2.0);
  double n_min = lmin / (1.0 - lmin), n_max = lmax / (1.0 - lmax);
  double s = 2.0 * n_min + 1.0;
  double c = 2.0 / (s + 1.0) + InvPrecision(2.0 * n_max + 1.0 - s);
  r.certificates.push_back(SafeQuadratic(2.0 * (s * s - 1.0), 8.0, c));
  return Finish(r);
}

ConditionResult FprasConditionHafnian(double n, double r_max) {
  if (!(n >= 0.0) || !(r_max >= 0.0)) {
    throw Error(ErrorCode::kDomainError, "need n, r_max >= 0");
  }
  ConditionResult r;
  r.formula_id = "thm3";
  r.threshold = HafnianConditionThreshold(r_max);
  r.margin = n - r.threshold;
  r.holds = Decide(r.margin, std::max(n, 1.0));
  double s = (2.0 * n + 1.0) * std::exp(-2.0 * r_max);
  double a_max = (2.0 * n + 1.0) * std::exp(2.0 * r_max);
  double c = 2.0 / (s + 1.0) + InvPrecision(a_max - s);
  r.certificates.push_back(SafeQuadratic(2.0 * (s * s - 1.0), 8.0, c));
  return Finish(r);
}

ConditionResult FprasConditionTorThermal(double lambda_min, double lambda_max) {
  if (!(lambda_min >= 0.0) || !(lambda_max >= lambda_min) || !(lambda_max < 1.0)) {
    throw Error(ErrorCode::kDomainError, "need 0 <= lambda_min <= lambda_max < 1");
  }
  ConditionResult r;
  r.formula_id = "torcmulti";
  double upper = lambda_min > 0.0
                     ? (-lambda_min * lambda_min + 3.0 * lambda_min - 1.0) / lambda_min
                     : -kInf;
  r.threshold = upper;
  r.margin = std::min(lambda_min - 0.5, upper - lambda_max);
  r.holds = Decide(r.margin, 1.0);
  double n_min = lambda_min / (1.0 - lambda_min);
  double n_max = lambda_max / (1.0 - lambda_max);
  double s = 2.0 * n_min + 1.0;
  r.certificates.push_back(
      SafeThreshold(1.0, 2.0 / (s + 1.0), InvPrecision(2.0 * n_max + 1.0 - s)));
  return Finish(r);
}

ConditionResult FprasConditionTorSqueezedThermal(double n, double r_max) {
  if (!(n >= 0.0) || !(r_max >= 0.0)) {
    throw Error(ErrorCode::kDomainError, "need n, r_max >= 0");
  }
  ConditionResult r;
  r.formula_id = "tormul";
  r.threshold = TorSqueezedThermalThreshold(r_max);
  r.margin = n - r.threshold;
  r.holds = Decide(r.margin, std::max(n, 1.0));
  double s = (2.0 * n + 1.0) * std::exp(-2.0 * r_max);
  double a_max = (2.0 * n + 1.0) * std::exp(2.0 * r_max);
  r.certificates.push_back(
      SafeThreshold(1.0, 2.0 / (s + 1.0), InvPrecision(a_max - s)));
  return Finish(r);
}

ConditionResult FprasConditionGbsNoise(double eta, double r_max, double n_th) {
  if (!(eta > 0.0 && eta <= 1.0) || !(r_max >= 0.0) || !(n_th >= 0.0)) {
    throw Error(ErrorCode::kDomainError, "need eta in (0,1], r_max, n_th >= 0");
  }
  ConditionResult r;
  r.formula_id = "gbs_noise";
  r.threshold = GbsNoiseThreshold(eta, r_max);
  r.margin = n_th - r.threshold;
  r.holds = Decide(r.margin, std::max(n_th, 1.0));
  double env = (1.0 - eta) * (2.0 * n_th + 1.0);
  double ap = eta * std::exp(2.0 * r_max) + env;
  double am = eta * std::exp(-2.0 * r_max) + env;
  double s = am;
  r.certificates.push_back(SafeThreshold(1.0, 2.0 / (s + 1.0), InvPrecision(ap - s)));
  return Finish(r);
}

std::vector<LogConcavityCertificate> CircuitCertificates(const CircuitSpec& circuit) {
  circuit.Validate();
  double s = circuit.s_max();
  double full = InvPrecision(circuit.a_max() - s);
  std::vector<LogConcavityCertificate> out;
  for (const MeasurementOutcome& o : circuit.pattern) {
    if (o.kind == Kind::kMarginal || o.kind == Kind::kNoClick ||
        (o.kind == Kind::kPhotonNumber && o.count == 0)) {
      continue;  // Gaussian factors
    }
    if (o.kind == Kind::kClick) {
      out.push_back(SafeThreshold(1.0, 2.0 / (s + 1.0), full));
    } else if (o.count == 1) {
      out.push_back(SafeQuadratic(2.0 * (s * s - 1.0), 8.0, 2.0 / (s + 1.0) + full));
    } else {
      LogConcavityCertificate cert;
      cert.holds = false;
      cert.margin = -kInf;  // no closed-form condition for m >= 2
      out.push_back(cert);
    }
  }
  return out;
}

double NormalQuantileTwoSided(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0,1)");
  }
  double lo = 0.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (std::erfc(mid / std::sqrt(2.0)) > delta) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

struct Target {
  const FoldedSampler* fs;
  int dim;

  // log of the integrand over z, without the Gaussian normalization.
  double LogValue(const Eigen::VectorXd& z) const {
    Eigen::VectorXd y = fs->g * z;
    const int na = static_cast<int>(fs->active_modes.size());
    double v = -0.5 * z.squaredNorm();
    double sp = fs->s + 1.0, b = 2.0 / sp;
    for (int k = 0; k < na; ++k) {
      double t = y(k) * y(k) + y(k + na) * y(k + na);
      double f = fs->active_outcomes[k].kind == Kind::kClick
                     ? 1.0 - b * std::exp(-b * t)
                     : (8.0 * t + 2.0 * (fs->s * fs->s - 1.0)) / (sp * sp * sp) *
                           std::exp(-b * t);
      if (!(f > 0.0)) return -kInf;
      v += std::log(f);
    }
    return v;
  }

  Eigen::VectorXd Gradient(const Eigen::VectorXd& z) const {
    Eigen::VectorXd y = fs->g * z;
    const int na = static_cast<int>(fs->active_modes.size());
    Eigen::VectorXd w(2 * na);
    double s = fs->s, b = 2.0 / (s + 1.0);
    for (int k = 0; k < na; ++k) {
      double t = y(k) * y(k) + y(k + na) * y(k + na);
      double dlog;
      if (fs->active_outcomes[k].kind == Kind::kClick) {
        double e = b * std::exp(-b * t);
        dlog = b * e / (1.0 - e);
      } else {
        dlog = 8.0 / (8.0 * t + 2.0 * (s * s - 1.0)) - b;
      }
      w(k) = 2.0 * dlog * y(k);
      w(k + na) = 2.0 * dlog * y(k + na);
    }
    return -z + fs->g.transpose() * w;
  }
};

struct WeightSums {
  double s1 = 0.0;
  double s2 = 0.0;
};

}  // namespace

MultiplicativeEstimate EstimateMultiplicative(const CircuitSpec& circuit,
                                              const MultiplicativeConfig& config) {
  circuit.Validate();
  if (circuit.num_modes() > 12) {
    throw Error(ErrorCode::kTooLarge, "multiplicative estimator limited to M <= 12");
  }
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0) ||
      !(config.delta > 0.0 && config.delta < 1.0) || config.chunks < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad multiplicative config");
  }
  MultiplicativeEstimate out;
  out.certificates = CircuitCertificates(circuit);
  for (const auto& c : out.certificates) {
    if (!c.holds) {
      throw Error(ErrorCode::kNotLogConcave,
                  "a measurement factor fails its log-concavity condition "
                  "(margin " + std::to_string(c.margin) + ")");
    }
  }
  FoldedSampler fs = BuildFoldedSampler(circuit, circuit.s_max(), 0.0, true);
  out.log_prefactor = fs.log_prefactor;
  if (fs.active_modes.empty()) {
    out.value = std::exp(fs.log_prefactor);
    out.n_used = 0;
    out.ess = kInf;
    return out;
  }
  const int d = 2 * fs.num_modes;
  Target target{&fs, d};

  // Damped ascent to the mode; the integrand is even, so z = 0 is a
  // stationary point and the loop normally exits at once.
  Eigen::VectorXd mode = Eigen::VectorXd::Zero(d);
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd grad = target.Gradient(mode);
    if (grad.norm() <= 1e-10) break;
    double step = 1.0, f0 = target.LogValue(mode);
    while (step > 1e-16 && !(target.LogValue(mode + step * grad) > f0)) step *= 0.5;
    mode += step * grad;
    if (it == 9999) {
      throw Error(ErrorCode::kNonConvergent, "mode search did not converge");
    }
  }
  // Central-difference Hessian of the log-integrand at the mode.
  const double h = 1e-5;
  RMatrix hess(d, d);
  for (int k = 0; k < d; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e(k) = h;
    hess.col(k) = (target.Gradient(mode + e) - target.Gradient(mode - e)) / (2.0 * h);
  }
  RMatrix prec0 = -0.5 * (hess + hess.transpose());
  // Curvature far from the mode: photon-number factors decay like e^{-b t},
  // click factors tend to one.
  RMatrix prec_tail = RMatrix::Identity(d, d);
  {
    const int na = static_cast<int>(fs.active_modes.size());
    const double b = 2.0 / (fs.s + 1.0);
    for (int k = 0; k < na; ++k) {
      if (fs.active_outcomes[k].kind == Kind::kClick) continue;
      prec_tail += 2.0 * b * (fs.g.row(k).transpose() * fs.g.row(k) +
                              fs.g.row(k + na).transpose() * fs.g.row(k + na));
    }
  }
  // Defensive mixture. The first component is the Laplace Gaussian at the
  // mode, whose precision is the smallest curvature of the concave log
  // integrand, so T / q <= T(mode) / (pi_0 q_0(mode)) everywhere.
  const std::vector<double> mix_theta = {0.0, 0.5, 0.8, 0.9, 0.97};
  const int kc = static_cast<int>(mix_theta.size());
  const double log_pi = -std::log(static_cast<double>(kc));
  std::vector<RMatrix> chol(kc);
  std::vector<double> log_det(kc, 0.0);
  for (int j = 0; j < kc; ++j) {
    RMatrix p = (1.0 - mix_theta[j]) * prec0 + mix_theta[j] * prec_tail;
    Eigen::LLT<RMatrix> llt(p);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::kNotLogConcave,
                  "log-integrand Hessian is not negative definite");
    }
    chol[j] = llt.matrixL();
    for (int i = 0; i < d; ++i) log_det[j] += std::log(chol[j](i, i));
  }
  // Densities share the (2 pi)^{-d/2} of the target's Gaussian part.
  auto log_q = [&](const Eigen::VectorXd& dz) {
    double mx = -kInf;
    std::vector<double> terms(kc);
    for (int j = 0; j < kc; ++j) {
      Eigen::VectorXd v = chol[j].transpose() * dz;
      terms[j] = log_pi + log_det[j] - 0.5 * v.squaredNorm();
      mx = std::max(mx, terms[j]);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - mx);
    return mx + std::log(acc);
  };
  const double log_w_ref = target.LogValue(mode) - log_pi - log_det[0];

  auto run_chunk = [&](std::uint64_t stream, std::int64_t count) {
    Engine eng = MakeStream(config.seed, stream);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd u(d);
    WeightSums ws;
    for (std::int64_t i = 0; i < count; ++i) {
      const int j = static_cast<int>(i % kc);
      for (int k = 0; k < d; ++k) u(k) = normal(eng);
      Eigen::VectorXd dz = chol[j].transpose().triangularView<Eigen::Upper>().solve(u);
      double lw = target.LogValue(mode + dz) - log_q(dz);
      double v = std::exp(lw - log_w_ref);
      ws.s1 += v;
      ws.s2 += v * v;
    }
    return ws;
  };

  const double zq = NormalQuantileTwoSided(config.delta);
  const double ess_target = 50.0 / (config.epsilon * config.epsilon);
  std::int64_t round_n = std::max<std::int64_t>(
      static_cast<std::int64_t>(std::ceil(ess_target)), 1000);
  double s1 = 0.0, s2 = 0.0;
  std::int64_t total = 0;
  for (int round = 0;; ++round) {
    if (total + round_n > config.max_samples) {
      throw Error(ErrorCode::kNonConvergent,
                  "effective sample size target unmet at the sample cap");
    }
    std::vector<WeightSums> parts(config.chunks);
    auto count = [&](int c) {
      return round_n / config.chunks + (c < round_n % config.chunks ? 1 : 0);
    };
    std::uint64_t base = static_cast<std::uint64_t>(round) * config.chunks;
    if (config.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (int c = 0; c < config.chunks; ++c) parts[c] = run_chunk(base + c, count(c));
    } else {
      for (int c = 0; c < config.chunks; ++c) parts[c] = run_chunk(base + c, count(c));
    }
    for (const auto& p : parts) {
      s1 += p.s1;
      s2 += p.s2;
    }
    total += round_n;
    double nd = static_cast<double>(total);
    double mean = s1 / nd;
    double var = std::max(0.0, s2 / nd - mean * mean) * nd / std::max(1.0, nd - 1.0);
    out.ess = s2 > 0.0 ? s1 * s1 / s2 : 0.0;
    out.relative_half_width =
        mean > 0.0 ? zq * std::sqrt(var / nd) / mean : kInf;
    out.n_used = total;
    out.value = std::exp(out.log_prefactor + log_w_ref) * mean;
    // Half of epsilon is required of the CLT interval, leaving room for the
    // error of the variance estimate itself.
    if (out.ess >= ess_target && out.relative_half_width <= 0.5 * config.epsilon) {
      break;
    }
    round_n = total;
  }
  return out;
}

MultiplicativeEstimate EstimatePermanentMultiplicative(
    const CMatrix& b, const MultiplicativeConfig& config, double a) {
  Embedding emb = EmbedPermanent(b, a);
  MultiplicativeEstimate out = EstimateMultiplicative(emb.circuit, config);
  out.value *= std::exp(emb.log_prefactor());
  out.log_prefactor += emb.log_prefactor();
  return out;
}

MultiplicativeEstimate EstimateHafnianBlockMultiplicative(
    const MatrixClass& mat, const MultiplicativeConfig& config) {
  if (mat.tag() != MatrixTag::kBlockA) {
    throw Error(ErrorCode::kUnsupported, "needs a BlockA matrix");
  }
  double lp = 0.0;
  CircuitSpec c = CircuitFromBlock(
      mat, MeasurementPattern(mat.num_modes(), MeasurementOutcome::PhotonNumber(1)), &lp);
  MultiplicativeEstimate out = EstimateMultiplicative(c, config);
  out.value *= std::exp(lp);
  out.log_prefactor += lp;
  return out;
}

MultiplicativeEstimate EstimateTorontonianMultiplicative(
    const MatrixClass& mat, const MultiplicativeConfig& config) {
  double lp = 0.0;
  CircuitSpec c = CircuitFromBlock(
      mat, MeasurementPattern(mat.num_modes(), MeasurementOutcome::Click()), &lp);
  MultiplicativeEstimate out = EstimateMultiplicative(c, config);
  out.value *= std::exp(lp);
  out.log_prefactor += lp;
  return out;
}

}  // namespace phasegbs
