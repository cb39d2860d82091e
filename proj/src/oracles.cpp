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

#include "phasegbs/oracles.hpp"

#include <omp.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "phasegbs/error.hpp"

namespace phasegbs {
namespace {

using Kind = MeasurementOutcome::Kind;

// Ryser terms for Gray-code indices k in [k_begin, k_end).
Complex RyserBlock(const CMatrix& a, std::uint64_t k_begin,
                   std::uint64_t k_end) {
  const int n = static_cast<int>(a.rows());
  std::vector<Complex> row_sum(n, Complex(0.0, 0.0));
  std::uint64_t g = (k_begin - 1) ^ ((k_begin - 1) >> 1);
  for (int j = 0; j < n; ++j) {
    if ((g >> j) & 1ULL) {
      for (int i = 0; i < n; ++i) row_sum[i] += a(i, j);
    }
  }
  Complex total(0.0, 0.0);
  for (std::uint64_t k = k_begin; k < k_end; ++k) {
    int j = std::countr_zero(k);
    g ^= 1ULL << j;
    if ((g >> j) & 1ULL) {
      for (int i = 0; i < n; ++i) row_sum[i] += a(i, j);
    } else {
      for (int i = 0; i < n; ++i) row_sum[i] -= a(i, j);
    }
    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= row_sum[i];
    if (std::popcount(g) % 2 == 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return total;
}

void CheckPermanentInput(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix must be square");
  }
  if (a.rows() > OracleLimits::kMaxPermanentDim) {
    throw Error(ErrorCode::kTooLarge, "permanent dimension above 20");
  }
}

Complex RyserSign(int n, Complex total) { return n % 2 == 0 ? total : -total; }

Complex SqrtDet(const CMatrix& m) {
  if (m.rows() == 0) return Complex(1.0, 0.0);
  Complex det = m.partialPivLu().determinant();
  double scale = std::abs(det);
  if (!(scale > 1e-300)) {
    throw Error(ErrorCode::kSingularSubmatrix, "singular submatrix");
  }
  if (det.real() > 0.0 && std::abs(det.imag()) <= 1e-10 * scale) {
    return Complex(std::sqrt(det.real()), 0.0);
  }
  Eigen::ComplexEigenSolver<CMatrix> es(m);
  Complex root(1.0, 0.0);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    root *= std::sqrt(es.eigenvalues()(i));
  }
  return root;
}

Complex TorontonianTerm(const CMatrix& id_minus_a, int m, std::uint64_t z) {
  std::vector<int> idx;
  for (int j = 0; j < m; ++j) {
    if (!((z >> j) & 1ULL)) idx.push_back(j);
  }
  const int k = static_cast<int>(idx.size());
  CMatrix sub(2 * k, 2 * k);
  for (int p = 0; p < 2 * k; ++p) {
    int gp = p < k ? idx[p] : idx[p - k] + m;
    for (int q = 0; q < 2 * k; ++q) {
      int gq = q < k ? idx[q] : idx[q - k] + m;
      sub(p, q) = id_minus_a(gp, gq);
    }
  }
  Complex term = 1.0 / SqrtDet(sub);
  return std::popcount(z) % 2 == 1 ? -term : term;
}

int CheckTorontonianInput(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "Torontonian needs a square matrix of even dimension");
  }
  int m = static_cast<int>(a.rows() / 2);
  if (m > OracleLimits::kMaxTorontonianModes) {
    throw Error(ErrorCode::kTooLarge, "Torontonian above 12 modes");
  }
  return m;
}

}  // namespace

Complex PermanentExactSerial(const CMatrix& a) {
  CheckPermanentInput(a);
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Complex(1.0, 0.0);
  return RyserSign(n, RyserBlock(a, 1, 1ULL << n));
}

Complex PermanentExact(const CMatrix& a) {
  CheckPermanentInput(a);
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Complex(1.0, 0.0);
  const std::uint64_t total = 1ULL << n;
  const int blocks = n < 8 ? 1 : 64;
  std::vector<Complex> partial(blocks);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < blocks; ++b) {
    std::uint64_t begin = 1 + (total - 1) * b / blocks;
    std::uint64_t end = 1 + (total - 1) * (b + 1) / blocks;
    partial[b] = begin < end ? RyserBlock(a, begin, end) : Complex(0.0, 0.0);
  }
  Complex sum(0.0, 0.0);
  for (const Complex& p : partial) sum += p;
  return RyserSign(n, sum);
}

Complex HafnianExact(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix must be square");
  }
  const int n = static_cast<int>(a.rows());
  if (n % 2 != 0) throw Error(ErrorCode::kOddDimension, "odd dimension");
  if (n > OracleLimits::kMaxHafnianDim) {
    throw Error(ErrorCode::kTooLarge, "hafnian dimension above 16");
  }
  if (n == 0) return Complex(1.0, 0.0);
  const std::uint32_t full = (1U << n) - 1;
  std::vector<Complex> memo(1U << n, Complex(0.0, 0.0));
  memo[0] = Complex(1.0, 0.0);
  // Masks with an even number of vertices, by increasing popcount, so that
  // every sub-mask is known before it is used.
  for (int size = 2; size <= n; size += 2) {
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (std::popcount(mask) != size) continue;
      int i = std::countr_zero(mask);
      std::uint32_t rest = mask & ~(1U << i);
      Complex sum(0.0, 0.0);
      for (std::uint32_t r = rest; r != 0; r &= r - 1) {
        int j = std::countr_zero(r);
        sum += a(i, j) * memo[rest & ~(1U << j)];
      }
      memo[mask] = sum;
    }
  }
  return memo[full];
}

Complex TorontonianExactSerial(const CMatrix& a) {
  const int m = CheckTorontonianInput(a);
  CMatrix id_minus = CMatrix::Identity(2 * m, 2 * m) - a;
  Complex sum(0.0, 0.0);
  for (std::uint64_t z = 0; z < (1ULL << m); ++z) {
    sum += TorontonianTerm(id_minus, m, z);
  }
  return sum;
}

Complex TorontonianExact(const CMatrix& a) {
  const int m = CheckTorontonianInput(a);
  CMatrix id_minus = CMatrix::Identity(2 * m, 2 * m) - a;
  const std::int64_t count = 1LL << m;
  std::vector<Complex> terms(count);
  bool failed = false;
#pragma omp parallel for schedule(static)
  for (std::int64_t z = 0; z < count; ++z) {
    try {
      terms[z] = TorontonianTerm(id_minus, m, static_cast<std::uint64_t>(z));
    } catch (const Error&) {
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed) {
    throw Error(ErrorCode::kSingularSubmatrix, "singular submatrix");
  }
  Complex sum(0.0, 0.0);
  for (const Complex& t : terms) sum += t;
  return sum;
}

double ExactProbability(const CircuitSpec& circuit,
                        const MeasurementPattern& pattern) {
  const int m = circuit.num_modes();
  if (static_cast<int>(pattern.size()) != m) {
    throw Error(ErrorCode::kDimensionMismatch, "pattern length mismatch");
  }
  std::vector<int> keep;
  std::vector<int> counts;
  double log_fact = 0.0;
  int total = 0;
  for (int j = 0; j < m; ++j) {
    const auto& o = pattern[j];
    if (o.kind == Kind::kMarginal) continue;
    if (o.kind == Kind::kClick) {
      throw Error(ErrorCode::kUnsupported,
                  "click outcomes need the threshold oracle");
    }
    int c = o.kind == Kind::kPhotonNumber ? o.count : 0;
    keep.push_back(j);
    counts.push_back(c);
    total += c;
    log_fact += std::lgamma(c + 1.0);
  }
  if (2 * total > OracleLimits::kMaxHafnianDim) {
    throw Error(ErrorCode::kTooLarge, "total photon number above 8");
  }
  GbsMatrices g = GbsAMatrixReduced(circuit, keep);
  const int k = static_cast<int>(keep.size());
  std::vector<int> rows;
  for (int p = 0; p < k; ++p) {
    for (int c = 0; c < counts[p]; ++c) rows.push_back(p);
  }
  for (int p = 0; p < k; ++p) {
    for (int c = 0; c < counts[p]; ++c) rows.push_back(p + k);
  }
  const int d = static_cast<int>(rows.size());
  CMatrix as(d, d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) as(p, q) = g.a(rows[p], rows[q]);
  }
  Complex haf = HafnianExact(as);
  return haf.real() / (std::exp(log_fact) * g.sqrt_det_vq);
}

double ExactProbability(const CircuitSpec& circuit) {
  return ExactProbability(circuit, circuit.pattern);
}

double ExactThresholdProbability(const CircuitSpec& circuit,
                                 const MeasurementPattern& pattern) {
  const int m = circuit.num_modes();
  if (static_cast<int>(pattern.size()) != m) {
    throw Error(ErrorCode::kDimensionMismatch, "pattern length mismatch");
  }
  std::vector<int> keep;
  std::vector<int> click_pos;
  for (int j = 0; j < m; ++j) {
    const auto& o = pattern[j];
    if (o.kind == Kind::kMarginal) continue;
    bool vacuum = o.kind == Kind::kNoClick ||
                  (o.kind == Kind::kPhotonNumber && o.count == 0);
    if (!vacuum && o.kind != Kind::kClick) {
      throw Error(ErrorCode::kUnsupported,
                  "photon counts above zero need the hafnian oracle");
    }
    if (o.kind == Kind::kClick) {
      click_pos.push_back(static_cast<int>(keep.size()));
    }
    keep.push_back(j);
  }
  GbsMatrices g = GbsAMatrixReduced(circuit, keep);
  const int k = static_cast<int>(keep.size());
  const int c = static_cast<int>(click_pos.size());
  CMatrix oc(2 * c, 2 * c);
  for (int p = 0; p < 2 * c; ++p) {
    int gp = p < c ? click_pos[p] : click_pos[p - c] + k;
    for (int q = 0; q < 2 * c; ++q) {
      int gq = q < c ? click_pos[q] : click_pos[q - c] + k;
      oc(p, q) = g.o(gp, gq);
    }
  }
  Complex tor = c == 0 ? Complex(1.0, 0.0) : TorontonianExact(oc);
  return tor.real() / g.sqrt_det_vq;
}

double ExactPatternProbability(const CircuitSpec& circuit,
                               const MeasurementPattern& pattern) {
  std::vector<int> clicks;
  for (int j = 0; j < static_cast<int>(pattern.size()); ++j) {
    if (pattern[j].kind == Kind::kClick) clicks.push_back(j);
  }
  if (clicks.size() > OracleLimits::kMaxTorontonianModes) {
    throw Error(ErrorCode::kTooLarge, "more than 12 click modes");
  }
  double sum = 0.0;
  for (std::uint64_t t = 0; t < (1ULL << clicks.size()); ++t) {
    MeasurementPattern p = pattern;
    for (std::size_t i = 0; i < clicks.size(); ++i) {
      p[clicks[i]] = ((t >> i) & 1ULL) ? MeasurementOutcome::NoClick()
                                       : MeasurementOutcome::Marginal();
    }
    double term = ExactProbability(circuit, p);
    sum += std::popcount(t) % 2 == 1 ? -term : term;
  }
  return sum;
}

}  // namespace phasegbs
