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

#ifndef PHASEGBS_LINEAR_OPTICS_HPP_
#define PHASEGBS_LINEAR_OPTICS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "phasegbs/phase_space.hpp"

namespace phasegbs {

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Passive interferometer. Output amplitudes are beta_i = sum_j u(j, i)
// alpha_j, so the transfer matrix acting on column vectors is u^T.
struct Interferometer {
  CMatrix u;

  static Interferometer Make(const CMatrix& u);
  static Interferometer Identity(int m);
  // Interferometer whose transfer matrix (beta = W alpha) is w.
  static Interferometer FromTransfer(const CMatrix& w);

  int dim() const { return static_cast<int>(u.rows()); }
  CMatrix transfer() const { return u.transpose(); }
};

struct ModeParams {
  double r = 0.0;  // squeezing
  double n = 0.0;  // mean thermal photons
};

struct CircuitSpec {
  std::vector<ModeParams> modes;
  double eta = 1.0;   // transmissivity in (0, 1]
  double n_th = 0.0;  // environment mean photons
  Interferometer unitary;
  MeasurementPattern pattern;

  int num_modes() const { return static_cast<int>(modes.size()); }
  // a_pm = eta (2n_i+1) e^{+-2r_i} + (1 - eta)(2 n_th + 1).
  std::vector<ModeCovariance> covariances() const;
  double s_max() const;
  double a_max() const;
  // Throws on inconsistent dimensions or out-of-range parameters.
  void Validate() const;
};

CVector Propagate(const Interferometer& u, const CVector& alpha);

struct Decomposition {
  CMatrix u;
  std::vector<double> lambda;  // descending
};

// R = U diag(lambda) U^T with unitary U.
Decomposition Takagi(const CMatrix& r);
// B = U diag(lambda) U^dagger.
Decomposition HpsdEigendecompose(const CMatrix& b);

Interferometer HaarUnitary(int m, std::uint64_t seed);

enum class MatrixTag {
  kComplexSymmetricR,
  kHpsdB,
  kBlockA,       // [[R, B], [B^T, R*]]
  kBlockAprime,  // [[B^T, R*], [R, B]]
  kBlockRprime,  // [[0, R*], [R, 0]]
  kBlockBprime,  // [[B^T, 0], [0, B]]
};

const char* MatrixTagName(MatrixTag tag);
MatrixTag ParseMatrixTag(const std::string& name);

// Tagged target matrix with its decomposition computed at construction.
// For block tags the decomposition holds the interferometer U (in the
// R = U D U^T, B = U D' U^dagger sense), the per-mode squeezing and the
// common thermal photon number.
class MatrixClass {
 public:
  static MatrixClass Make(MatrixTag tag, const CMatrix& data,
                          double scale = 1.001);

  MatrixTag tag() const { return tag_; }
  const CMatrix& data() const { return data_; }
  double scale() const { return scale_; }
  const Decomposition& decomposition() const { return decomposition_; }
  // Block tags only.
  const std::vector<double>& squeezing() const { return squeezing_; }
  const std::vector<double>& thermal() const { return thermal_; }
  int num_modes() const;

 private:
  MatrixTag tag_ = MatrixTag::kComplexSymmetricR;
  CMatrix data_;
  double scale_ = 1.001;
  Decomposition decomposition_;
  std::vector<double> squeezing_;
  std::vector<double> thermal_;
};

struct Embedding {
  CircuitSpec circuit;
  double scale = 1.0;  // a * lambda_max
  double z = 1.0;      // prod cosh r_i or prod (1 + n_i)
  std::vector<double> lambda;         // spectrum of the target, descending
  std::vector<double> lambda_scaled;  // lambda / (a lambda_max)
  double log_prefactor() const;       // M log(scale) + log z
};

// |Haf(R)|^2 = (a lambda_max)^M Z p, all-single-photon pure squeezed circuit.
Embedding EmbedHafnian(const CMatrix& r, double a);
// Per(B) = (a lambda_max)^M Z' p, all-single-photon thermal circuit.
Embedding EmbedPermanent(const CMatrix& b, double a);

struct BlockA {
  MatrixClass matrix;
  double sqrt_det_vq = 1.0;  // prod sqrt(1/2 + n(n+1) + (n+1/2) cosh 2r_i)
};

// A = [[R, B], [B^T, R*]] with R = U D U^T, B = U D' U^dagger.
BlockA BuildBlockA(double n, const std::vector<double>& r, const CMatrix& u);

// Squeezed-thermal circuit with transfer matrix u and common photon number.
CircuitSpec SqueezedThermalCircuit(double n, const std::vector<double>& r,
                                   const CMatrix& u,
                                   const MeasurementPattern& pattern);

// Real xxpp symplectic (orthogonal) map of the transfer matrix.
RMatrix RealOrthogonal(const CMatrix& w);

struct GbsMatrices {
  CMatrix a;    // X (I - V_Q^{-1}) in the (a, a^dagger) basis
  CMatrix vq;   // V + I/2
  CMatrix o;    // I - V_Q^{-1}
  double sqrt_det_vq = 1.0;
};

GbsMatrices GbsAMatrix(const CircuitSpec& circuit);
// Same, restricted to the given output modes (reduced state).
GbsMatrices GbsAMatrixReduced(const CircuitSpec& circuit,
                              const std::vector<int>& keep);

}  // namespace phasegbs

#endif  // PHASEGBS_LINEAR_OPTICS_HPP_
