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

#include "phasegbs/linear_optics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "phasegbs/error.hpp"

namespace phasegbs {
namespace {

constexpr Complex kI(0.0, 1.0);

double MaxAbs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void RequireSquare(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " must be a non-empty square matrix");
  }
}

void RequireSymmetric(const CMatrix& r) {
  RequireSquare(r, "matrix");
  if (MaxAbs(r - r.transpose()) > 1e-10 * std::max(1.0, MaxAbs(r))) {
    throw Error(ErrorCode::kNotSymmetric, "matrix is not symmetric");
  }
}

// Complex covariance transform T = (1/sqrt2) [[I, iI], [I, -iI]].
CMatrix ComplexBasis(int m) {
  CMatrix t = CMatrix::Zero(2 * m, 2 * m);
  double h = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < m; ++i) {
    t(i, i) = h;
    t(i, i + m) = h * kI;
    t(i + m, i) = h;
    t(i + m, i + m) = -h * kI;
  }
  return t;
}

CMatrix SwapBlocks(int m) {
  CMatrix x = CMatrix::Zero(2 * m, 2 * m);
  x.topRightCorner(m, m).setIdentity();
  x.bottomLeftCorner(m, m).setIdentity();
  return x;
}

struct SqueezedThermalParams {
  CMatrix u;
  std::vector<double> d;  // Takagi values of R
  std::vector<double> r;
  std::vector<double> n;
};

// Finds U with R = U D U^T and U^dagger B U diagonal, then recovers per-mode
// (a_plus, a_minus) from D' + D = 1 - 2/(a_plus + 1), D' - D likewise.
SqueezedThermalParams ExtractSqueezedThermal(const CMatrix& r,
                                             const CMatrix& b) {
  const int m = static_cast<int>(r.rows());
  Decomposition tk = Takagi(r);
  CMatrix u = tk.u;
  double scale = std::max({1.0, MaxAbs(r), MaxAbs(b)});
  double tie = 1e-9 * scale;
  CMatrix mb = u.adjoint() * b * u;
  int start = 0;
  while (start < m) {
    int end = start + 1;
    while (end < m && std::abs(tk.lambda[end] - tk.lambda[start]) <= tie) {
      ++end;
    }
    int len = end - start;
    if (len > 1) {
      CMatrix blk = mb.block(start, start, len, len);
      CMatrix rot;
      if (tk.lambda[start] <= tie) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(blk);
        rot = es.eigenvectors();
      } else {
        if (blk.imag().cwiseAbs().maxCoeff() > 1e-8 * scale) {
          throw Error(ErrorCode::kStructureMismatch,
                      "R and B are not simultaneously diagonalizable");
        }
        Eigen::SelfAdjointEigenSolver<RMatrix> es(blk.real());
        rot = es.eigenvectors().cast<Complex>();
      }
      u.middleCols(start, len) = u.middleCols(start, len) * rot;
    }
    start = end;
  }
  mb = u.adjoint() * b * u;
  CMatrix off = mb;
  off.diagonal().setZero();
  if (MaxAbs(off) > 1e-8 * scale ||
      mb.diagonal().imag().cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw Error(ErrorCode::kStructureMismatch,
                "U^dagger B U is not diagonal for the Takagi basis of R");
  }
  SqueezedThermalParams out;
  out.u = u;
  out.d = tk.lambda;
  for (int i = 0; i < m; ++i) {
    double dp = mb(i, i).real();
    double d = tk.lambda[i];
    double p = dp + d;
    double q = dp - d;
    if (!(p < 1.0) || !(q > -1.0) || !(q <= p)) {
      throw Error(ErrorCode::kStructureMismatch,
                  "block entries do not correspond to a physical state");
    }
    double a_plus = 2.0 / (1.0 - p) - 1.0;
    double a_minus = 2.0 / (1.0 - q) - 1.0;
    if (!(a_minus > 0.0) || a_plus * a_minus < 1.0 - 1e-9) {
      throw Error(ErrorCode::kStructureMismatch,
                  "block entries do not correspond to a physical state");
    }
    double det = std::max(a_plus * a_minus, 1.0);
    out.n.push_back(0.5 * (std::sqrt(det) - 1.0));
    out.r.push_back(0.25 * std::log(a_plus / a_minus));
  }
  return out;
}

}  // namespace

Interferometer Interferometer::Make(const CMatrix& u) {
  RequireSquare(u, "unitary");
  CMatrix id = CMatrix::Identity(u.rows(), u.cols());
  if (MaxAbs(u.adjoint() * u - id) > 1e-10) {
    throw Error(ErrorCode::kDomainError, "matrix is not unitary");
  }
  return Interferometer{u};
}

Interferometer Interferometer::Identity(int m) {
  return Interferometer{CMatrix::Identity(m, m)};
}

Interferometer Interferometer::FromTransfer(const CMatrix& w) {
  return Make(w.transpose());
}

std::vector<ModeCovariance> CircuitSpec::covariances() const {
  std::vector<ModeCovariance> out;
  out.reserve(modes.size());
  double env = (1.0 - eta) * (2.0 * n_th + 1.0);
  for (const auto& md : modes) {
    double base = eta * (2.0 * md.n + 1.0);
    out.push_back(ModeCovariance{base * std::exp(2.0 * md.r) + env,
                                 base * std::exp(-2.0 * md.r) + env});
  }
  return out;
}

double CircuitSpec::s_max() const { return Classicality(covariances()); }

double CircuitSpec::a_max() const {
  double a = 0.0;
  for (const auto& c : covariances()) a = std::max(a, c.a_plus);
  return a;
}

void CircuitSpec::Validate() const {
  if (modes.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "circuit has no modes");
  }
  if (unitary.dim() != num_modes()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "unitary dimension does not match mode count");
  }
  if (static_cast<int>(pattern.size()) != num_modes()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pattern length does not match mode count");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "eta must lie in (0, 1]");
  }
  if (!(n_th >= 0.0)) {
    throw Error(ErrorCode::kDomainError, "n_th must be >= 0");
  }
  for (const auto& md : modes) {
    if (!(md.r >= 0.0) || !(md.n >= 0.0) || !std::isfinite(md.r) ||
        !std::isfinite(md.n)) {
      throw Error(ErrorCode::kDomainError, "need r >= 0 and n >= 0");
    }
  }
}

CVector Propagate(const Interferometer& u, const CVector& alpha) {
  if (alpha.size() != u.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector length does not match interferometer");
  }
  return u.u.transpose() * alpha;
}

Decomposition Takagi(const CMatrix& r) {
  RequireSymmetric(r);
  const int n = static_cast<int>(r.rows());
  Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeFullV);
  Eigen::VectorXd sv = svd.singularValues();
  double tol = 1e-12 * std::max(1.0, sv(0)) * n;
  int rank = 0;
  while (rank < n && sv(rank) > tol) ++rank;

  // Eigenvectors (u; v) of [[X, Y], [Y, -X]] with eigenvalue sigma > 0 give
  // Takagi vectors q = u + i v satisfying R q* = sigma q.
  RMatrix h(2 * n, 2 * n);
  h << r.real(), r.imag(), r.imag(), -r.real();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(h);
  Decomposition out;
  out.u.resize(n, n);
  for (int k = 0; k < rank; ++k) {
    int col = 2 * n - 1 - k;
    Eigen::VectorXd vec = es.eigenvectors().col(col);
    for (int i = 0; i < n; ++i) out.u(i, k) = Complex(vec(i), vec(i + n));
    out.lambda.push_back(es.eigenvalues()(col));
  }
  for (int k = rank; k < n; ++k) {
    out.u.col(k) = svd.matrixV().col(k).conjugate();
    out.lambda.push_back(0.0);
  }
  return out;
}

Decomposition HpsdEigendecompose(const CMatrix& b) {
  RequireSquare(b, "matrix");
  double scale = std::max(1.0, MaxAbs(b));
  if (MaxAbs(b - b.adjoint()) > 1e-10 * scale) {
    throw Error(ErrorCode::kNotHpsd, "matrix is not Hermitian");
  }
  const int n = static_cast<int>(b.rows());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(b);
  Decomposition out;
  out.u.resize(n, n);
  double lmax = std::max(0.0, es.eigenvalues()(n - 1));
  for (int k = 0; k < n; ++k) {
    int col = n - 1 - k;
    double lam = es.eigenvalues()(col);
    if (lam < -1e-10 * std::max(1.0, lmax)) {
      throw Error(ErrorCode::kNotHpsd, "negative eigenvalue " +
                                           std::to_string(lam));
    }
    out.u.col(k) = es.eigenvectors().col(col);
    out.lambda.push_back(std::max(lam, 0.0));
  }
  return out;
}

Interferometer HaarUnitary(int m, std::uint64_t seed) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "M must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      double re = normal(gen);
      double im = normal(gen);
      z(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  CMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < m; ++k) {
    Complex d = rr(k, k);
    double ad = std::abs(d);
    q.col(k) *= ad > 0.0 ? d / ad : Complex(1.0, 0.0);
  }
  return Interferometer{q};
}

const char* MatrixTagName(MatrixTag tag) {
  switch (tag) {
    case MatrixTag::kComplexSymmetricR: return "ComplexSymmetricR";
    case MatrixTag::kHpsdB: return "HpsdB";
    case MatrixTag::kBlockA: return "BlockA";
    case MatrixTag::kBlockAprime: return "BlockAprime";
    case MatrixTag::kBlockRprime: return "BlockRprime";
    case MatrixTag::kBlockBprime: return "BlockBprime";
  }
  return "?";
}

MatrixTag ParseMatrixTag(const std::string& name) {
  for (MatrixTag t :
       {MatrixTag::kComplexSymmetricR, MatrixTag::kHpsdB, MatrixTag::kBlockA,
        MatrixTag::kBlockAprime, MatrixTag::kBlockRprime,
        MatrixTag::kBlockBprime}) {
    if (name == MatrixTagName(t)) return t;
  }
  throw Error(ErrorCode::kSchemaError, "unknown matrix tag '" + name + "'");
}

int MatrixClass::num_modes() const {
  if (tag_ == MatrixTag::kComplexSymmetricR || tag_ == MatrixTag::kHpsdB) {
    return static_cast<int>(data_.rows());
  }
  return static_cast<int>(data_.rows() / 2);
}

MatrixClass MatrixClass::Make(MatrixTag tag, const CMatrix& data,
                              double scale) {
  RequireSquare(data, "matrix");
  if (!(scale > 1.0)) {
    throw Error(ErrorCode::kDomainError, "rescale factor must exceed 1");
  }
  MatrixClass mc;
  mc.tag_ = tag;
  mc.data_ = data;
  mc.scale_ = scale;
  if (tag == MatrixTag::kComplexSymmetricR) {
    mc.decomposition_ = Takagi(data);
    return mc;
  }
  if (tag == MatrixTag::kHpsdB) {
    mc.decomposition_ = HpsdEigendecompose(data);
    return mc;
  }
  if (data.rows() % 2 != 0) {
    throw Error(ErrorCode::kStructureMismatch,
                "block matrix must have even dimension");
  }
  const int m = static_cast<int>(data.rows() / 2);
  double tol = 1e-9 * std::max(1.0, MaxAbs(data));
  CMatrix ul = data.topLeftCorner(m, m);
  CMatrix ur = data.topRightCorner(m, m);
  CMatrix ll = data.bottomLeftCorner(m, m);
  CMatrix lr = data.bottomRightCorner(m, m);
  auto require = [&](bool ok, const char* what) {
    if (!ok) {
      throw Error(ErrorCode::kStructureMismatch,
                  std::string(MatrixTagName(tag)) + ": " + what);
    }
  };
  CMatrix r;
  CMatrix b;
  if (tag == MatrixTag::kBlockA) {
    r = ul;
    b = ur;
    require(MaxAbs(ll - b.transpose()) <= tol, "lower-left must be B^T");
    require(MaxAbs(lr - r.conjugate()) <= tol, "lower-right must be R*");
  } else {
    r = ll;
    b = lr;
    require(MaxAbs(ul - b.transpose()) <= tol, "upper-left must be B^T");
    require(MaxAbs(ur - r.conjugate()) <= tol, "upper-right must be R*");
  }
  require(MaxAbs(r - r.transpose()) <= tol, "R must be symmetric");
  require(MaxAbs(b - b.adjoint()) <= tol, "B must be Hermitian");
  if (tag == MatrixTag::kBlockRprime) {
    require(MaxAbs(b) <= tol, "B block must vanish");
    mc.decomposition_ = Takagi(r);
    for (double lam : mc.decomposition_.lambda) {
      require(lam < 1.0, "Takagi values must be below 1");
      mc.squeezing_.push_back(std::atanh(lam));
      mc.thermal_.push_back(0.0);
    }
    return mc;
  }
  if (tag == MatrixTag::kBlockBprime) {
    require(MaxAbs(r) <= tol, "R block must vanish");
    mc.decomposition_ = HpsdEigendecompose(b);
    for (double lam : mc.decomposition_.lambda) {
      require(lam < 1.0, "eigenvalues must be below 1");
      mc.squeezing_.push_back(0.0);
      mc.thermal_.push_back(lam / (1.0 - lam));
    }
    return mc;
  }
  SqueezedThermalParams st = ExtractSqueezedThermal(r, b);
  double n0 = st.n[0];
  for (double n : st.n) {
    require(std::abs(n - n0) <= 1e-7 * (1.0 + n0),
            "modes do not share a common thermal photon number");
  }
  mc.decomposition_.u = st.u;
  mc.decomposition_.lambda = st.d;
  mc.squeezing_ = st.r;
  mc.thermal_.assign(m, n0);
  return mc;
}

double Embedding::log_prefactor() const {
  return circuit.num_modes() * std::log(scale) + std::log(z);
}

Embedding EmbedHafnian(const CMatrix& r, double a) {
  if (!(a > 1.0)) {
    throw Error(ErrorCode::kDomainError, "rescale factor must exceed 1");
  }
  Decomposition tk = Takagi(r);
  double lmax = tk.lambda.front();
  if (!(lmax > 0.0)) throw Error(ErrorCode::kZeroMatrix, "R is zero");
  const int m = static_cast<int>(r.rows());
  Embedding e;
  e.scale = a * lmax;
  e.lambda = tk.lambda;
  e.circuit.unitary = Interferometer::FromTransfer(tk.u);
  e.circuit.pattern.assign(m, MeasurementOutcome::PhotonNumber(1));
  e.z = 1.0;
  for (double lam : tk.lambda) {
    double ls = lam / e.scale;
    e.lambda_scaled.push_back(ls);
    double ri = std::atanh(ls);
    e.circuit.modes.push_back({ri, 0.0});
    e.z *= std::cosh(ri);
  }
  return e;
}

Embedding EmbedPermanent(const CMatrix& b, double a) {
  if (!(a > 1.0)) {
    throw Error(ErrorCode::kDomainError, "rescale factor must exceed 1");
  }
  Decomposition ev = HpsdEigendecompose(b);
  double lmax = ev.lambda.front();
  if (!(lmax > 0.0)) throw Error(ErrorCode::kZeroMatrix, "B is zero");
  const int m = static_cast<int>(b.rows());
  Embedding e;
  e.scale = a * lmax;
  e.lambda = ev.lambda;
  e.circuit.unitary = Interferometer::FromTransfer(ev.u);
  e.circuit.pattern.assign(m, MeasurementOutcome::PhotonNumber(1));
  e.z = 1.0;
  for (double lam : ev.lambda) {
    double ls = lam / e.scale;
    e.lambda_scaled.push_back(ls);
    double ni = ls / (1.0 - ls);
    e.circuit.modes.push_back({0.0, ni});
    e.z *= 1.0 + ni;
  }
  return e;
}

BlockA BuildBlockA(double n, const std::vector<double>& r, const CMatrix& u) {
  if (!(n >= 0.0)) throw Error(ErrorCode::kDomainError, "need n >= 0");
  const int m = static_cast<int>(r.size());
  if (u.rows() != m || u.cols() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "U does not match r");
  }
  Interferometer::Make(u);
  Eigen::VectorXcd d(m);
  Eigen::VectorXcd dp(m);
  double sqrt_det = 1.0;
  for (int i = 0; i < m; ++i) {
    if (!(r[i] >= 0.0)) throw Error(ErrorCode::kDomainError, "need r >= 0");
    double den = 1.0 + 2.0 * n * (n + 1.0) + (2.0 * n + 1.0) * std::cosh(2.0 * r[i]);
    d(i) = (2.0 * n + 1.0) * std::sinh(2.0 * r[i]) / den;
    dp(i) = 2.0 * n * (n + 1.0) / den;
    sqrt_det *= std::sqrt(0.5 + n * (n + 1.0) + (n + 0.5) * std::cosh(2.0 * r[i]));
  }
  CMatrix rr = u * d.asDiagonal() * u.transpose();
  CMatrix bb = u * dp.asDiagonal() * u.adjoint();
  CMatrix a(2 * m, 2 * m);
  a << rr, bb, bb.transpose(), rr.conjugate();
  return BlockA{MatrixClass::Make(MatrixTag::kBlockA, a), sqrt_det};
}

CircuitSpec SqueezedThermalCircuit(double n, const std::vector<double>& r,
                                   const CMatrix& u,
                                   const MeasurementPattern& pattern) {
  CircuitSpec c;
  for (double ri : r) c.modes.push_back({ri, n});
  c.unitary = Interferometer::FromTransfer(u);
  c.pattern = pattern;
  c.Validate();
  return c;
}

RMatrix RealOrthogonal(const CMatrix& w) {
  const int m = static_cast<int>(w.rows());
  RMatrix s(2 * m, 2 * m);
  s << w.real(), -w.imag(), w.imag(), w.real();
  return s;
}

GbsMatrices GbsAMatrixReduced(const CircuitSpec& circuit,
                              const std::vector<int>& keep) {
  circuit.Validate();
  const int m = circuit.num_modes();
  std::vector<ModeCovariance> covs = circuit.covariances();
  RVector vin(2 * m);
  for (int i = 0; i < m; ++i) {
    vin(i) = 0.5 * covs[i].a_plus;
    vin(i + m) = 0.5 * covs[i].a_minus;
  }
  RMatrix s = RealOrthogonal(circuit.unitary.transfer());
  RMatrix vout = s * vin.asDiagonal() * s.transpose();
  const int k = static_cast<int>(keep.size());
  RMatrix vk(2 * k, 2 * k);
  for (int i = 0; i < 2 * k; ++i) {
    int gi = i < k ? keep[i] : keep[i - k] + m;
    for (int j = 0; j < 2 * k; ++j) {
      int gj = j < k ? keep[j] : keep[j - k] + m;
      vk(i, j) = vout(gi, gj);
    }
  }
  GbsMatrices out;
  if (k == 0) {
    out.sqrt_det_vq = 1.0;
    return out;
  }
  RMatrix vq_real = vk + 0.5 * RMatrix::Identity(2 * k, 2 * k);
  Eigen::LLT<RMatrix> llt(vq_real);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularVQ, "V + I/2 is not positive definite");
  }
  double log_det = 0.0;
  for (int i = 0; i < 2 * k; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
  out.sqrt_det_vq = std::exp(0.5 * log_det);
  CMatrix t = ComplexBasis(k);
  out.vq = t * vq_real.cast<Complex>() * t.adjoint();
  RMatrix vq_inv = llt.solve(RMatrix::Identity(2 * k, 2 * k));
  CMatrix vq_inv_c = t * vq_inv.cast<Complex>() * t.adjoint();
  out.o = CMatrix::Identity(2 * k, 2 * k) - vq_inv_c;
  out.a = SwapBlocks(k) * out.o;
  return out;
}

GbsMatrices GbsAMatrix(const CircuitSpec& circuit) {
  std::vector<int> all(circuit.num_modes());
  std::iota(all.begin(), all.end(), 0);
  return GbsAMatrixReduced(circuit, all);
}

}  // namespace phasegbs
