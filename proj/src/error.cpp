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

#include "phasegbs/error.hpp"

namespace phasegbs {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingularOrdering: return "SingularOrdering";
    case ErrorCode::kOrderingOutOfRange: return "OrderingOutOfRange";
    case ErrorCode::kShiftOutOfRange: return "ShiftOutOfRange";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNotHpsd: return "NotHpsd";
    case ErrorCode::kZeroMatrix: return "ZeroMatrix";
    case ErrorCode::kSingularVQ: return "SingularVQ";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kBudgetOverflow: return "BudgetOverflow";
    case ErrorCode::kStructureMismatch: return "StructureMismatch";
    case ErrorCode::kNegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::kNonPositiveFactor: return "NonPositiveFactor";
    case ErrorCode::kZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorCode::kNotLogConcave: return "NotLogConcave";
    case ErrorCode::kNonConvergent: return "NonConvergent";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kOddDimension: return "OddDimension";
    case ErrorCode::kSingularSubmatrix: return "SingularSubmatrix";
    case ErrorCode::kPreconditionAminBelowOne: return "PreconditionAminBelowOne";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool IsConditionFailure(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotLogConcave:
    case ErrorCode::kZeroEigenvalue:
    case ErrorCode::kNonConvergent:
    case ErrorCode::kPreconditionAminBelowOne:
    case ErrorCode::kStructureMismatch:
    case ErrorCode::kUnsupported:
    case ErrorCode::kBudgetOverflow:
      return true;
    default:
      return false;
  }
}

}  // namespace phasegbs
