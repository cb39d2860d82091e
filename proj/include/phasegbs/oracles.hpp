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

#ifndef PHASEGBS_ORACLES_HPP_
#define PHASEGBS_ORACLES_HPP_

#include "phasegbs/linear_optics.hpp"

namespace phasegbs {

struct OracleLimits {
  static constexpr int kMaxPermanentDim = 20;
  static constexpr int kMaxHafnianDim = 16;
  static constexpr int kMaxTorontonianModes = 12;
};

// Ryser formula with Gray-code row-sum updates. The parallel version splits
// the Gray sequence into blocks and reduces the block sums in order.
Complex PermanentExact(const CMatrix& a);
Complex PermanentExactSerial(const CMatrix& a);

// Sum over perfect matchings, Haf(A) = sum_{j>0} A_0j Haf(A \ {0, j}),
// memoized over vertex subsets. The diagonal is ignored.
Complex HafnianExact(const CMatrix& a);

// sum_{Z subset [M]} (-1)^|Z| / sqrt(det(I - A_(Z))), where A_(Z) deletes the
// rows and columns j and j+M for every j in Z.
Complex TorontonianExact(const CMatrix& a);
Complex TorontonianExactSerial(const CMatrix& a);

// Photon-number pattern probability from the hafnian of the repeated-index
// submatrix. Marginal modes are traced out; no-click counts as zero photons.
double ExactProbability(const CircuitSpec& circuit,
                        const MeasurementPattern& pattern);
double ExactProbability(const CircuitSpec& circuit);

// Threshold pattern probability via the Torontonian of the click block of the
// reduced state; photon number 0 counts as no-click.
double ExactThresholdProbability(const CircuitSpec& circuit,
                                 const MeasurementPattern& pattern);

// Any pattern: clicks expanded by inclusion-exclusion over vacuum events,
// each term evaluated by ExactProbability.
double ExactPatternProbability(const CircuitSpec& circuit,
                               const MeasurementPattern& pattern);

}  // namespace phasegbs

#endif  // PHASEGBS_ORACLES_HPP_
