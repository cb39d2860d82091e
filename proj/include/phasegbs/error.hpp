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

#ifndef PHASEGBS_ERROR_HPP_
#define PHASEGBS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace phasegbs {

enum class ErrorCode {
  kSingularOrdering,
  kOrderingOutOfRange,
  kShiftOutOfRange,
  kDomainError,
  kDimensionMismatch,
  kNotSymmetric,
  kNotHpsd,
  kZeroMatrix,
  kSingularVQ,
  kNotPositiveDefinite,
  kBudgetOverflow,
  kStructureMismatch,
  kNegativeCoefficient,
  kNonPositiveFactor,
  kZeroEigenvalue,
  kNotLogConcave,
  kNonConvergent,
  kTooLarge,
  kOddDimension,
  kSingularSubmatrix,
  kPreconditionAminBelowOne,
  kUnsupported,
  kSchemaError,
  kInvalidArgument,
};

std::string_view ErrorName(ErrorCode code);

// Conditions that are properties of the input rather than malformed input.
// The CLI maps these to exit code 2.
bool IsConditionFailure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace phasegbs

#endif  // PHASEGBS_ERROR_HPP_
