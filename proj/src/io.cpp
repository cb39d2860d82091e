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

#include "phasegbs/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace phasegbs {
namespace {

using Kind = MeasurementOutcome::Kind;

void RequireObject(const Json& j, const std::string& ptr,
                   const std::set<std::string>& allowed) {
  if (!j.is_object()) throw SchemaError(ptr.empty() ? "/" : ptr, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw SchemaError(ptr + "/" + it.key(), "unknown field");
    }
  }
}

double GetNumber(const Json& j, const std::string& ptr) {
  if (!j.is_number()) throw SchemaError(ptr, "expected a number");
  return j.get<double>();
}

const char* DirectionName(ShiftDirection d) {
  return d == ShiftDirection::kForward ? "forward" : "reverse";
}

Json Numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(Number(x));
  return a;
}

Json RealRows(const RMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Json ParseJsonText(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
}

Json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseJsonText(ss.str());
}

CMatrix ParseComplexMatrix(const Json& j, const std::string& ptr) {
  RequireObject(j, ptr, {"m", "re", "im"});
  if (!j.contains("re")) throw SchemaError(ptr + "/re", "missing");
  auto read = [&](const Json& rows, const std::string& p) {
    if (!rows.is_array() || rows.empty()) throw SchemaError(p, "expected a nonempty array of rows");
    const std::size_t n = rows.size();
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string rp = p + "/" + std::to_string(i);
      if (!rows[i].is_array() || rows[i].size() != n) {
        throw SchemaError(rp, "expected a row of length " + std::to_string(n));
      }
      for (std::size_t k = 0; k < n; ++k) {
        m(i, k) = GetNumber(rows[i][k], rp + "/" + std::to_string(k));
      }
    }
    return m;
  };
  RMatrix re = read(j["re"], ptr + "/re");
  RMatrix im = RMatrix::Zero(re.rows(), re.cols());
  if (j.contains("im")) {
    im = read(j["im"], ptr + "/im");
    if (im.rows() != re.rows()) throw SchemaError(ptr + "/im", "shape differs from re");
  }
  if (j.contains("m") && !(j["m"].is_number_integer() && j["m"].get<long long>() == re.rows())) {
    throw SchemaError(ptr + "/m", "does not match the matrix dimension");
  }
  CMatrix out(re.rows(), re.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

Json ComplexMatrixJson(const CMatrix& m) {
  Json j;
  j["m"] = m.rows();
  j["re"] = RealRows(m.real());
  j["im"] = RealRows(m.imag());
  return j;
}

MatrixClass ParseMatrix(const Json& j) {
  RequireObject(j, "", {"m", "tag", "re", "im", "scale"});
  if (!j.contains("tag") || !j["tag"].is_string()) {
    throw SchemaError("/tag", "expected a matrix tag string");
  }
  MatrixTag tag;
  try {
    tag = ParseMatrixTag(j["tag"].get<std::string>());
  } catch (const Error& e) {
    throw SchemaError("/tag", e.what());
  }
  Json body = Json::object();
  body["re"] = j.contains("re") ? j["re"] : Json();
  if (!j.contains("re")) throw SchemaError("/re", "missing");
  if (j.contains("im")) body["im"] = j["im"];
  CMatrix data = ParseComplexMatrix(body, "");
  if (j.contains("m")) {
    // Either the matrix dimension or, for 2M x 2M block tags, the mode count.
    if (!j["m"].is_number_integer() && !j["m"].is_number_unsigned()) {
      throw SchemaError("/m", "expected an integer");
    }
    long long m = j["m"].get<long long>();
    bool block = tag != MatrixTag::kComplexSymmetricR && tag != MatrixTag::kHpsdB;
    bool ok = m == data.rows() || (block && 2 * m == data.rows());
    if (!ok) throw SchemaError("/m", "does not match the matrix dimension");
  }
  double scale = j.contains("scale") ? GetNumber(j["scale"], "/scale") : 1.001;
  try {
    return MatrixClass::Make(tag, data, scale);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchemaError) throw;
    throw SchemaError("/re", e.what());
  }
}

MatrixClass LoadMatrixFile(const std::string& path) {
  return ParseMatrix(LoadJsonFile(path));
}

Json MatrixJson(const MatrixClass& m) {
  Json j;
  j["m"] = m.data().rows();
  j["tag"] = MatrixTagName(m.tag());
  Json body = ComplexMatrixJson(m.data());
  j["re"] = body["re"];
  j["im"] = body["im"];
  j["scale"] = m.scale();
  return j;
}

MeasurementOutcome ParseOutcome(const Json& j, const std::string& ptr) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    long long v = j.get<long long>();
    if (v < 0) throw SchemaError(ptr, "photon number must be >= 0");
    return MeasurementOutcome::PhotonNumber(static_cast<int>(v));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "click") return MeasurementOutcome::Click();
    if (s == "noclick") return MeasurementOutcome::NoClick();
    if (s == "marginal") return MeasurementOutcome::Marginal();
  }
  throw SchemaError(ptr, "expected an integer >= 0, \"click\", \"noclick\" or \"marginal\"");
}

MeasurementPattern ParsePattern(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array");
  MeasurementPattern p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    p.push_back(ParseOutcome(j[i], ptr + "/" + std::to_string(i)));
  }
  return p;
}

CircuitSpec ParseCircuit(const Json& j) {
  RequireObject(j, "", {"modes", "eta", "n_th", "unitary", "pattern"});
  if (!j.contains("modes") || !j["modes"].is_array() || j["modes"].empty()) {
    throw SchemaError("/modes", "expected a nonempty array");
  }
  CircuitSpec c;
  for (std::size_t i = 0; i < j["modes"].size(); ++i) {
    const std::string p = "/modes/" + std::to_string(i);
    const Json& md = j["modes"][i];
    RequireObject(md, p, {"r", "n"});
    ModeParams mp;
    if (md.contains("r")) mp.r = GetNumber(md["r"], p + "/r");
    if (md.contains("n")) mp.n = GetNumber(md["n"], p + "/n");
    if (!(mp.r >= 0.0)) throw SchemaError(p + "/r", "squeezing must be >= 0");
    if (!(mp.n >= 0.0)) throw SchemaError(p + "/n", "thermal photons must be >= 0");
    c.modes.push_back(mp);
  }
  const int m = c.num_modes();
  if (j.contains("eta")) c.eta = GetNumber(j["eta"], "/eta");
  if (!(c.eta > 0.0 && c.eta <= 1.0)) throw SchemaError("/eta", "must lie in (0, 1]");
  if (j.contains("n_th")) c.n_th = GetNumber(j["n_th"], "/n_th");
  if (!(c.n_th >= 0.0)) throw SchemaError("/n_th", "must be >= 0");
  if (!j.contains("unitary")) {
    c.unitary = Interferometer::Identity(m);
  } else {
    const Json& u = j["unitary"];
    if (u.is_object() && u.contains("haar_seed")) {
      RequireObject(u, "/unitary", {"haar_seed"});
      if (!u["haar_seed"].is_number_unsigned() && !u["haar_seed"].is_number_integer()) {
        throw SchemaError("/unitary/haar_seed", "expected a nonnegative integer");
      }
      if (u["haar_seed"].get<long long>() < 0) {
        throw SchemaError("/unitary/haar_seed", "expected a nonnegative integer");
      }
      c.unitary = HaarUnitary(m, u["haar_seed"].get<std::uint64_t>());
    } else {
      CMatrix w = ParseComplexMatrix(u, "/unitary");
      if (w.rows() != m) throw SchemaError("/unitary", "dimension differs from mode count");
      try {
        c.unitary = Interferometer::FromTransfer(w);
      } catch (const Error& e) {
        throw SchemaError("/unitary", e.what());
      }
    }
  }
  if (j.contains("pattern")) {
    c.pattern = ParsePattern(j["pattern"], "/pattern");
    if (static_cast<int>(c.pattern.size()) != m) {
      throw SchemaError("/pattern", "length differs from mode count");
    }
  } else {
    c.pattern.assign(m, MeasurementOutcome::Marginal());
  }
  try {
    c.Validate();
  } catch (const Error& e) {
    throw SchemaError("/", e.what());
  }
  return c;
}

CircuitSpec LoadCircuitFile(const std::string& path) {
  return ParseCircuit(LoadJsonFile(path));
}

Json CircuitJson(const CircuitSpec& c) {
  Json j;
  Json modes = Json::array();
  for (const auto& md : c.modes) modes.push_back(Json{{"r", md.r}, {"n", md.n}});
  j["modes"] = modes;
  j["eta"] = c.eta;
  j["n_th"] = c.n_th;
  j["unitary"] = ComplexMatrixJson(c.unitary.transfer());
  Json pat = Json::array();
  for (const auto& o : c.pattern) {
    if (o.kind == Kind::kPhotonNumber) pat.push_back(o.count);
    else pat.push_back(o.ToString());
  }
  j["pattern"] = pat;
  return j;
}

Json Number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json ReportJson(const EstimateReport& r, bool timing) {
  Json j;
  j["estimate"] = Number(r.estimate);
  j["conf_radius"] = Number(r.conf_radius);
  j["std_error"] = Number(r.std_error);
  j["n_used"] = r.n_used;
  j["factor_bound"] = Number(r.factor_bound);
  j["factor_bound_max"] = Number(r.factor_bound_max);
  j["sup_weight"] = Number(r.sup_weight);
  j["neg_bound"] = Number(r.neg_bound);
  j["mod_neg_bound"] = Number(r.mod_neg_bound);
  j["s"] = Number(r.s);
  j["gamma"] = Number(r.gamma);
  j["direction"] = DirectionName(r.direction);
  j["raw_shift"] = Number(r.raw_shift);
  j["formula_id"] = r.gamma_source;
  j["per_mode_sups"] = Numbers(r.per_mode_sups);
  j["active_modes"] = r.active_modes;
  j["seed"] = r.seed;
  j["chunks"] = r.chunks;
  if (timing) j["wall_time"] = r.wall_time;
  return j;
}

Json ReportJson(const MatrixEstimate& r, bool timing) {
  Json j;
  j["estimate"] = Number(r.value);
  j["error_budget"] = Number(r.error_budget);
  j["uniform_budget"] = Number(r.uniform_budget);
  j["radius"] = Number(r.radius);
  j["log_prefactor"] = Number(r.log_prefactor);
  j["budget_factors"] = Numbers(r.budget_factors);
  j["formula_id"] = r.formula_id;
  if (r.beats_gurvits) j["beats_gurvits"] = *r.beats_gurvits;
  j["probability"] = ReportJson(r.probability, timing);
  return j;
}

Json ReportJson(const MultiplicativeEstimate& r) {
  Json j;
  j["estimate"] = Number(r.value);
  j["relative_half_width"] = Number(r.relative_half_width);
  j["ess"] = Number(r.ess);
  j["n_used"] = r.n_used;
  j["log_prefactor"] = Number(r.log_prefactor);
  j["formula_id"] = "multiplicative";
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(CertificateJson(c));
  j["certificates"] = certs;
  return j;
}

Json CertificateJson(const LogConcavityCertificate& c) {
  Json j;
  j["holds"] = c.holds;
  j["family"] = FactorFamilyName(c.family);
  j["formula_id"] = c.family == FactorFamily::kQuadraticFactor ? "lemma2" : "lemma1";
  j["margin"] = Number(c.margin);
  j["a"] = Number(c.a);
  j["b"] = Number(c.b);
  j["c"] = Number(c.c);
  if (c.witness_line) {
    const WitnessLine& w = *c.witness_line;
    j["witness_line"] = Json{
        {"origin", {w.origin[0], w.origin[1]}},
        {"direction", {w.direction[0], w.direction[1]}},
        {"tau", w.tau},
        {"second_difference", Number(w.second_difference)}};
  }
  return j;
}

Json ConditionJson(const ConditionResult& c) {
  Json j;
  j["holds"] = c.holds;
  j["margin"] = Number(c.margin);
  j["threshold"] = Number(c.threshold);
  j["formula_id"] = c.formula_id;
  j["coefficients_hold"] = c.coefficients_hold;
  Json certs = Json::array();
  for (const auto& cert : c.certificates) certs.push_back(CertificateJson(cert));
  j["certificates"] = certs;
  return j;
}

Json BudgetJson(const Budget& b) {
  Json j;
  j["factors"] = Numbers(b.factors);
  j["product"] = Number(b.product);
  j["formula_id"] = b.formula_id;
  return j;
}

Json BoundJson(const BoundReport& b) {
  Json j;
  j["family"] = b.family;
  j["formula_id"] = b.formula_id;
  j["lower"] = b.lower ? Number(*b.lower) : Json();
  j["upper"] = b.upper ? Number(*b.upper) : Json();
  return j;
}

std::string DumpJson(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace phasegbs
