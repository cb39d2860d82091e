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

#ifndef PHASEGBS_ACCEPTANCE_HPP_
#define PHASEGBS_ACCEPTANCE_HPP_

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "phasegbs/linear_optics.hpp"

namespace phasegbs {

// Seeded random instances shared by the acceptance suite and the tests.
std::vector<double> UniformSpectrum(int m, double lo, double hi,
                                    std::uint64_t seed);
// U diag(lambda) U^T with Haar U.
CMatrix SymmetricWithSpectrum(const std::vector<double>& lambda,
                              std::uint64_t seed);
// U diag(lambda) U^dagger with Haar U.
CMatrix HpsdWithSpectrum(const std::vector<double>& lambda, std::uint64_t seed);
// [[0, R*], [R, 0]]
CMatrix BlockRprimeOf(const CMatrix& r);
// [[B^T, 0], [0, B]]
CMatrix BlockBprimeOf(const CMatrix& b);
// [[B^T, R*], [R, B]] from A = [[R, B], [B^T, R*]]
CMatrix BlockAprimeOf(const CMatrix& a);

struct CriterionLine {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20260;
  std::set<int> only;  // empty: all criteria
};

std::string FormatLine(const CriterionLine& line);

// Runs the criteria, printing each line as it completes. Returns the lines.
std::vector<CriterionLine> RunAcceptance(const AcceptanceOptions& options,
                                         std::ostream& out);

}  // namespace phasegbs

#endif  // PHASEGBS_ACCEPTANCE_HPP_
