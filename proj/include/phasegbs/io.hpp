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

#ifndef PHASEGBS_IO_HPP_
#define PHASEGBS_IO_HPP_

#include <string>

#include "json.hpp"
#include "phasegbs/bounds.hpp"
#include "phasegbs/error.hpp"
#include "phasegbs/estimator.hpp"
#include "phasegbs/fpras.hpp"
#include "phasegbs/linear_optics.hpp"

namespace phasegbs {

using Json = nlohmann::ordered_json;

// Schema violation located by a JSON pointer into the input document.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& pointer, const std::string& message)
      : Error(ErrorCode::kSchemaError, pointer + ": " + message),
        pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

Json ParseJsonText(const std::string& text);
Json LoadJsonFile(const std::string& path);

// {"m": n, "re": [[...]], "im": [[...]]}; "m" and "im" may be omitted.
CMatrix ParseComplexMatrix(const Json& j, const std::string& pointer);
Json ComplexMatrixJson(const CMatrix& m);

// {"m": 2, "tag": "HpsdB", "re": ..., "im": ..., "scale": 1.001}; "m" and
// "scale" are optional.
MatrixClass ParseMatrix(const Json& j);
MatrixClass LoadMatrixFile(const std::string& path);
Json MatrixJson(const MatrixClass& m);

MeasurementOutcome ParseOutcome(const Json& j, const std::string& pointer);
MeasurementPattern ParsePattern(const Json& j, const std::string& pointer);

// {"modes": [{"r", "n"}], "eta", "n_th", "unitary": {"re","im"} or
//  {"haar_seed": k}, "pattern": [int | "click" | "noclick" | "marginal"]}
// The unitary is the transfer matrix: output amplitudes = U * input.
CircuitSpec ParseCircuit(const Json& j);
CircuitSpec LoadCircuitFile(const std::string& path);
Json CircuitJson(const CircuitSpec& c);

// Non-finite numbers become the strings "inf", "-inf", "nan".
Json Number(double x);

Json ReportJson(const EstimateReport& r, bool timing);
Json ReportJson(const MatrixEstimate& r, bool timing);
Json ReportJson(const MultiplicativeEstimate& r);
Json CertificateJson(const LogConcavityCertificate& c);
Json ConditionJson(const ConditionResult& c);
Json BudgetJson(const Budget& b);
Json BoundJson(const BoundReport& b);

// Two-space indented with a trailing newline.
std::string DumpJson(const Json& j);

}  // namespace phasegbs

#endif  // PHASEGBS_IO_HPP_
