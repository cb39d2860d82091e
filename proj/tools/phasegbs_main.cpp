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


// phasegbs: batch front end for the estimators, condition checks, bounds,
// exact oracles and the acceptance suite. Reports are JSON on stdout or
// --output; convergence traces are CSV.

#include <omp.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phasegbs/acceptance.hpp"
#include "phasegbs/bounds.hpp"
#include "phasegbs/error.hpp"
#include "phasegbs/estimator.hpp"
#include "phasegbs/fpras.hpp"
#include "phasegbs/io.hpp"
#include "phasegbs/oracles.hpp"

namespace {

using namespace phasegbs;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCondition = 2;

struct Options {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  int threads = 0;
  int chunks = 64;
  double epsilon = 0.05;
  double delta = 0.05;
  double a = 1.001;
  std::int64_t n_samples = 0;
  double s = 0.0;
  double gamma = 0.0;
  std::string direction = "forward";
  std::string method = "additive";
  std::int64_t max_samples = 100000000;
  bool no_fold = false;
  bool oracle_check = false;
  bool timing = false;

  // check-fpras / bounds parameters
  std::string family;
  std::vector<double> lambdas;
  std::vector<double> r;
  double n = 0.0;
  double r_max = 0.0;
  double eta = 1.0;
  double n_th = 0.0;
  int witness_lines = 0;

  int points = 20;
  std::vector<int> only;
};

// Set by the subcommand that was selected.
std::function<int()> g_run;
CLI::App* g_sub = nullptr;

bool Given(const char* flag) { return g_sub && g_sub->count(flag) > 0; }

void AddSampling(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "base seed (default 0)");
  sub->add_option("--threads", o.threads, "OpenMP threads; 1 runs the serial kernel")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--chunks", o.chunks, "independent sample streams")
      ->check(CLI::PositiveNumber);
  sub->add_option("--epsilon", o.epsilon, "additive (or relative) accuracy")
      ->check(CLI::PositiveNumber);
  sub->add_option("--delta", o.delta, "failure probability")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--n-samples", o.n_samples, "override the sample count")
      ->check(CLI::PositiveNumber);
  sub->add_option("--s", o.s, "ordering parameter (default s_max - 1e-9)");
  sub->add_option("--gamma", o.gamma, "fixed normalized shift in [0, 1]");
  sub->add_option("--direction", o.direction, "shift direction for --gamma")
      ->check(CLI::IsMember({"forward", "reverse"}));
  sub->add_flag("--no-fold", o.no_fold, "naive sampler: do not absorb Gaussian factors");
  sub->add_option("--output,-o", o.output, "write the report here instead of stdout");
  sub->add_flag("--timing", o.timing, "include wall time (breaks byte-identical reports)");
}

void AddMatrixEstimate(CLI::App* sub, Options& o) {
  sub->add_option("input", o.input, "matrix JSON file")->required();
  AddSampling(sub, o);
  sub->add_option("--a", o.a, "rescale factor a > 1");
  sub->add_option("--method", o.method, "additive or multiplicative")
      ->check(CLI::IsMember({"additive", "multiplicative"}));
  sub->add_option("--max-samples", o.max_samples, "cap for the multiplicative path")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--oracle-check", o.oracle_check, "compare with the exact value");
}

void ApplyThreads(const Options& o) {
  if (o.threads > 0) omp_set_num_threads(o.threads);
}

EstimatorConfig MakeConfig(const Options& o) {
  EstimatorConfig c;
  if (Given("--s")) c.s = o.s;
  if (Given("--gamma")) {
    c.gamma_mode = GammaMode::kFixed;
    c.gamma = o.gamma;
    c.direction = o.direction == "reverse" ? ShiftDirection::kReverse
                                           : ShiftDirection::kForward;
  }
  c.epsilon = o.epsilon;
  c.delta = o.delta;
  if (Given("--n-samples")) c.n_samples = o.n_samples;
  c.seed = o.seed;
  c.chunks = o.chunks;
  c.fold = !o.no_fold;
  c.parallel = o.threads != 1;
  return c;
}

MultiplicativeConfig MakeMultiplicative(const Options& o) {
  MultiplicativeConfig c;
  if (Given("--epsilon")) c.epsilon = o.epsilon;
  c.delta = o.delta;
  c.seed = o.seed;
  c.chunks = o.chunks;
  c.parallel = o.threads != 1;
  c.max_samples = o.max_samples;
  return c;
}

Json Envelope(const std::string& command, const Options& o) {
  Json j;
  j["tool"] = "phasegbs";
  j["version"] = PHASEGBS_VERSION;
  j["command"] = command;
  j["seed"] = o.seed;
  if (!o.input.empty()) j["input"] = o.input;
  return j;
}

Json ConfigJson(const Options& o) {
  Json j;
  j["epsilon"] = o.epsilon;
  j["delta"] = o.delta;
  j["chunks"] = o.chunks;
  j["a"] = o.a;
  j["fold"] = !o.no_fold;
  if (Given("--n-samples")) j["n_samples"] = o.n_samples;
  if (Given("--s")) j["s"] = o.s;
  if (Given("--gamma")) {
    j["gamma"] = o.gamma;
    j["direction"] = o.direction;
  }
  j["method"] = o.method;
  return j;
}

void Emit(const std::string& text, const Options& o) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + o.output);
  out << text;
}

Json OracleJson(double exact, double estimate, double tolerance,
                const char* tolerance_name) {
  Json j;
  j["value"] = Number(exact);
  j["abs_error"] = Number(std::abs(estimate - exact));
  j[tolerance_name] = Number(tolerance);
  j["within"] = std::abs(estimate - exact) <= tolerance;
  return j;
}

MatrixClass LoadTagged(const Options& o) {
  Json j = LoadJsonFile(o.input);
  if (j.is_object() && !j.contains("scale") && j.contains("tag")) {
    j["scale"] = o.a;
  }
  return ParseMatrix(j);
}

void RequireTag(const MatrixClass& m, std::initializer_list<MatrixTag> tags,
                const char* command) {
  for (MatrixTag t : tags) {
    if (m.tag() == t) return;
  }
  throw SchemaError("/tag", std::string("tag ") + MatrixTagName(m.tag()) +
                                " is not accepted by " + command);
}

int FinishMatrix(const std::string& command, const Options& o,
                 const MatrixClass& m,
                 const std::function<Complex()>& oracle) {
  Json rep = Envelope(command, o);
  rep["tag"] = MatrixTagName(m.tag());
  rep["config"] = ConfigJson(o);
  double value = 0.0;
  double tolerance = 0.0;
  double rel_tolerance = 0.0;  // multiplicative: |est - exact| <= eps |exact|
  const char* tol_name = "error_budget";
  if (o.method == "multiplicative") {
    MultiplicativeConfig cfg = MakeMultiplicative(o);
    MultiplicativeEstimate est;
    if (m.tag() == MatrixTag::kHpsdB) {
      est = EstimatePermanentMultiplicative(m.data(), cfg, m.scale());
    } else if (m.tag() == MatrixTag::kBlockA) {
      est = EstimateHafnianBlockMultiplicative(m, cfg);
    } else if (m.tag() == MatrixTag::kBlockRprime || m.tag() == MatrixTag::kBlockBprime ||
               m.tag() == MatrixTag::kBlockAprime) {
      est = EstimateTorontonianMultiplicative(m, cfg);
    } else {
      throw Error(ErrorCode::kUnsupported,
                  "no multiplicative estimator for |Haf(R)|^2");
    }
    rep["result"] = ReportJson(est);
    value = est.value;
    rel_tolerance = cfg.epsilon;
    tol_name = "relative_error_bound";
  } else {
    EstimatorConfig cfg = MakeConfig(o);
    MatrixEstimate est;
    switch (m.tag()) {
      case MatrixTag::kComplexSymmetricR:
        est = EstimateHafnianSq(m.data(), cfg, m.scale());
        break;
      case MatrixTag::kHpsdB:
        est = EstimatePermanentHpsd(m.data(), cfg, m.scale());
        break;
      case MatrixTag::kBlockA:
        est = EstimateHafnianBlock(m, cfg);
        break;
      default:
        est = EstimateTorontonian(m, cfg);
        break;
    }
    rep["result"] = ReportJson(est, o.timing);
    value = est.value;
    tolerance = est.error_budget;
  }
  if (o.oracle_check) {
    double exact = oracle().real();
    if (rel_tolerance > 0.0) tolerance = rel_tolerance * std::abs(exact);
    rep["oracle"] = OracleJson(exact, value, tolerance, tol_name);
  }
  Emit(DumpJson(rep), o);
  return kExitOk;
}

int RunEstimateHaf(const Options& o) {
  ApplyThreads(o);
  MatrixClass m = LoadTagged(o);
  RequireTag(m, {MatrixTag::kComplexSymmetricR, MatrixTag::kBlockA}, "estimate-haf");
  return FinishMatrix("estimate-haf", o, m, [&]() -> Complex {
    Complex h = HafnianExact(m.data());
    if (m.tag() == MatrixTag::kComplexSymmetricR) return std::norm(h);
    return h;
  });
}

int RunEstimatePer(const Options& o) {
  ApplyThreads(o);
  MatrixClass m = LoadTagged(o);
  RequireTag(m, {MatrixTag::kHpsdB}, "estimate-per");
  return FinishMatrix("estimate-per", o, m, [&] { return PermanentExact(m.data()); });
}

int RunEstimateTor(const Options& o) {
  ApplyThreads(o);
  MatrixClass m = LoadTagged(o);
  RequireTag(m, {MatrixTag::kBlockRprime, MatrixTag::kBlockBprime, MatrixTag::kBlockAprime},
             "estimate-tor");
  return FinishMatrix("estimate-tor", o, m, [&] { return TorontonianExact(m.data()); });
}

int RunEstimateProb(const Options& o) {
  ApplyThreads(o);
  CircuitSpec c = LoadCircuitFile(o.input);
  Json rep = Envelope("estimate-prob", o);
  rep["config"] = ConfigJson(o);
  double value = 0.0;
  double tolerance = 0.0;
  double rel_tolerance = 0.0;  // multiplicative: |est - exact| <= eps |exact|
  const char* tol_name = "conf_radius";
  if (o.method == "multiplicative") {
    MultiplicativeConfig cfg = MakeMultiplicative(o);
    MultiplicativeEstimate est = EstimateMultiplicative(c, cfg);
    rep["result"] = ReportJson(est);
    value = est.value;
    rel_tolerance = cfg.epsilon;
    tol_name = "relative_error_bound";
  } else {
    EstimateReport est = EstimateProbability(c, MakeConfig(o));
    rep["result"] = ReportJson(est, o.timing);
    value = est.estimate;
    tolerance = est.conf_radius;
  }
  if (o.oracle_check) {
    double exact = ExactPatternProbability(c, c.pattern);
    if (rel_tolerance > 0.0) tolerance = rel_tolerance * std::abs(exact);
    rep["oracle"] = OracleJson(exact, value, tolerance, tol_name);
  }
  Emit(DumpJson(rep), o);
  return kExitOk;
}

double MinOf(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double MaxOf(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

void NeedLambdas(const Options& o) {
  if (o.lambdas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--lambdas is required for family " + o.family);
  }
}

int RunCheckFpras(const Options& o) {
  Json rep = Envelope("check-fpras", o);
  bool holds = false;
  if (!o.input.empty()) {
    CircuitSpec c = LoadCircuitFile(o.input);
    std::vector<LogConcavityCertificate> certs = CircuitCertificates(c);
    Json arr = Json::array();
    holds = true;
    for (std::size_t i = 0; i < certs.size(); ++i) {
      LogConcavityCertificate cert = certs[i];
      if (o.witness_lines > 0 && std::isfinite(cert.margin)) {
        cert = WithNumericWitness(cert, o.witness_lines, o.seed + i);
      }
      holds = holds && cert.holds;
      arr.push_back(CertificateJson(cert));
    }
    rep["family"] = "circuit";
    rep["holds"] = holds;
    rep["certificates"] = arr;
  } else {
    ConditionResult res;
    if (o.family == "permanent") {
      NeedLambdas(o);
      res = FprasConditionPermanent(o.lambdas);
    } else if (o.family == "hafnian") {
      res = FprasConditionHafnian(o.n, Given("--r-max") ? o.r_max : MaxOf(o.r.empty() ? std::vector<double>{0.0} : o.r));
    } else if (o.family == "tor_thermal") {
      NeedLambdas(o);
      res = FprasConditionTorThermal(MinOf(o.lambdas), MaxOf(o.lambdas));
    } else if (o.family == "tor_squeezed_thermal") {
      res = FprasConditionTorSqueezedThermal(o.n, o.r_max);
    } else if (o.family == "gbs_noise") {
      res = FprasConditionGbsNoise(o.eta, o.r_max, o.n_th);
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "--family or a circuit file is required");
    }
    if (o.witness_lines > 0) {
      for (std::size_t i = 0; i < res.certificates.size(); ++i) {
        if (std::isfinite(res.certificates[i].margin)) {
          res.certificates[i] =
              WithNumericWitness(res.certificates[i], o.witness_lines, o.seed + i);
        }
      }
    }
    holds = res.holds;
    rep["family"] = o.family;
    rep["result"] = ConditionJson(res);
  }
  Emit(DumpJson(rep), o);
  if (!holds) {
    std::cerr << "NotLogConcave: the log-concavity condition does not hold\n";
    return kExitCondition;
  }
  return kExitOk;
}

// Budget and bounds for a tagged matrix or an explicit family.
int RunBounds(const Options& o) {
  Json rep = Envelope("bounds", o);
  std::optional<Budget> budget;
  std::function<BoundReport()> bounds;
  std::string family;
  if (!o.input.empty()) {
    MatrixClass m = LoadTagged(o);
    const std::vector<double>& lam = m.decomposition().lambda;
    family = MatrixTagName(m.tag());
    switch (m.tag()) {
      case MatrixTag::kComplexSymmetricR:
        budget = BudgetHafnian(lam);
        bounds = [lam] { return HafnianSqBounds(lam); };
        break;
      case MatrixTag::kHpsdB:
        try {
          budget = BudgetPermanent(lam, m.scale());
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kUnsupported) throw;
          rep["budget_unsupported"] = e.what();
        }
        // The bounds hold for spectra in [0, 1); rescale and undo.
        bounds = [lam, &m] {
          double scale = m.scale() * MaxOf(lam);
          std::vector<double> unit;
          for (double l : lam) unit.push_back(l / scale);
          BoundReport b = PermanentBounds(unit);
          double f = std::pow(scale, static_cast<double>(lam.size()));
          if (b.lower) *b.lower *= f;
          if (b.upper) *b.upper *= f;
          return b;
        };
        break;
      case MatrixTag::kBlockA:
        budget = BudgetHafnianBlock(m.thermal().front(), m.squeezing());
        bounds = [&m] { return HafnianBounds(m.thermal().front(), m.squeezing()); };
        break;
      case MatrixTag::kBlockRprime:
        budget = BudgetTorontonianSqueezed(lam);
        bounds = [lam] { return TorontonianSqueezedBounds(lam); };
        break;
      case MatrixTag::kBlockBprime:
        budget = BudgetTorontonianThermal(lam);
        bounds = [lam] { return TorontonianThermalBounds(lam); };
        break;
      case MatrixTag::kBlockAprime:
        budget = BudgetTorontonianSqueezedThermal(m.thermal().front(), m.squeezing());
        bounds = [&m] {
          return TorontonianSqueezedThermalBounds(m.thermal().front(), m.squeezing());
        };
        break;
    }
  } else {
    family = o.family;
    if (o.family == "permanent") {
      NeedLambdas(o);
      bounds = [&o] { return PermanentBounds(o.lambdas); };
    } else if (o.family == "hafnian") {
      bounds = [&o] { return HafnianBounds(o.n, o.r); };
    } else if (o.family == "tor_thermal") {
      NeedLambdas(o);
      bounds = [&o] { return TorontonianThermalBounds(o.lambdas); };
    } else if (o.family == "tor_squeezed_thermal") {
      bounds = [&o] { return TorontonianSqueezedThermalBounds(o.n, o.r); };
    } else {
      throw Error(ErrorCode::kInvalidArgument, "--family or a matrix file is required");
    }
  }
  rep["family"] = family;
  if (budget) rep["budget"] = BudgetJson(*budget);
  int code = kExitOk;
  try {
    rep["bounds"] = BoundJson(bounds());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnsupported) throw;
    rep["bounds"] = nullptr;
    rep["bounds_unsupported"] = e.what();
    code = kExitCondition;
  }
  Emit(DumpJson(rep), o);
  if (code != kExitOk) std::cerr << rep["bounds_unsupported"].get<std::string>() << "\n";
  return code;
}

int RunOracle(const Options& o) {
  Json doc = LoadJsonFile(o.input);
  Json rep = Envelope("oracle", o);
  Complex v;
  if (doc.is_object() && doc.contains("modes")) {
    CircuitSpec c = ParseCircuit(doc);
    rep["function"] = "probability";
    v = ExactPatternProbability(c, c.pattern);
  } else {
    MatrixClass m = ParseMatrix(doc);
    rep["tag"] = MatrixTagName(m.tag());
    switch (m.tag()) {
      case MatrixTag::kComplexSymmetricR:
        rep["function"] = "abs_hafnian_squared";
        v = std::norm(HafnianExact(m.data()));
        break;
      case MatrixTag::kHpsdB:
        rep["function"] = "permanent";
        v = PermanentExact(m.data());
        break;
      case MatrixTag::kBlockA:
        rep["function"] = "hafnian";
        v = HafnianExact(m.data());
        break;
      default:
        rep["function"] = "torontonian";
        v = TorontonianExact(m.data());
        break;
    }
  }
  rep["value"] = Number(v.real());
  rep["value_im"] = Number(v.imag());
  Emit(DumpJson(rep), o);
  return kExitOk;
}

int RunConvergence(const Options& o) {
  ApplyThreads(o);
  CircuitSpec c = LoadCircuitFile(o.input);
  std::vector<TracePoint> trace = ConvergenceTrace(c, MakeConfig(o), o.points);
  std::optional<double> exact;
  if (o.oracle_check) exact = ExactPatternProbability(c, c.pattern);
  std::ostringstream csv;
  csv.precision(17);
  csv << "# tool=phasegbs version=" << PHASEGBS_VERSION << " seed=" << o.seed << "\n";
  csv << "n,running_mean,running_radius" << (exact ? ",oracle_value" : "") << "\n";
  for (const TracePoint& p : trace) {
    csv << p.n << "," << p.running_mean << "," << p.running_radius;
    if (exact) csv << "," << *exact;
    csv << "\n";
  }
  Emit(csv.str(), o);
  return kExitOk;
}

int RunAcceptanceCommand(const Options& o) {
  ApplyThreads(o);
  AcceptanceOptions opt;
  if (Given("--seed")) opt.seed = o.seed;
  opt.only.insert(o.only.begin(), o.only.end());
  std::vector<CriterionLine> lines = RunAcceptance(opt, std::cout);
  for (const CriterionLine& l : lines) {
    if (!l.pass) return kExitInput;
  }
  return kExitOk;
}

int Dispatch(int argc, char** argv) {
  CLI::App app{"phase-space estimators for Gaussian boson sampling quantities"};
  app.set_version_flag("--version", PHASEGBS_VERSION);
  app.require_subcommand(1);
  Options o;

  auto bind = [&](CLI::App* sub, int (*fn)(const Options&)) {
    sub->callback([sub, fn, &o] {
      g_sub = sub;
      g_run = [fn, &o] { return fn(o); };
    });
  };

  CLI::App* haf = app.add_subcommand("estimate-haf", "|Haf(R)|^2 (ComplexSymmetricR) or Haf(A) (BlockA)");
  AddMatrixEstimate(haf, o);
  bind(haf, RunEstimateHaf);

  CLI::App* per = app.add_subcommand("estimate-per", "Per(B) of an HPSD matrix");
  AddMatrixEstimate(per, o);
  bind(per, RunEstimatePer);

  CLI::App* tor = app.add_subcommand("estimate-tor", "Torontonian of a block matrix");
  AddMatrixEstimate(tor, o);
  bind(tor, RunEstimateTor);

  CLI::App* prob = app.add_subcommand("estimate-prob", "outcome probability of a circuit");
  prob->add_option("input", o.input, "circuit JSON file")->required();
  AddSampling(prob, o);
  prob->add_option("--method", o.method, "additive or multiplicative")
      ->check(CLI::IsMember({"additive", "multiplicative"}));
  prob->add_option("--max-samples", o.max_samples, "cap for the multiplicative path");
  prob->add_flag("--oracle-check", o.oracle_check, "compare with the exact probability");
  bind(prob, RunEstimateProb);

  CLI::App* chk = app.add_subcommand("check-fpras", "log-concavity conditions");
  chk->add_option("input", o.input, "circuit JSON file (per-mode certificates)");
  chk->add_option("--family", o.family, "condition family")
      ->check(CLI::IsMember({"permanent", "hafnian", "tor_thermal", "tor_squeezed_thermal",
                             "gbs_noise"}));
  chk->add_option("--lambdas", o.lambdas, "spectrum, comma separated")->delimiter(',');
  chk->add_option("--r", o.r, "squeezing values, comma separated")->delimiter(',');
  chk->add_option("--n", o.n, "common thermal photon number");
  chk->add_option("--r-max", o.r_max, "largest squeezing");
  chk->add_option("--eta", o.eta, "transmission");
  chk->add_option("--n-th", o.n_th, "thermal noise photons");
  chk->add_option("--witness-lines", o.witness_lines, "numeric line scans per certificate");
  chk->add_option("--seed", o.seed, "seed for the line scans");
  chk->add_option("--output,-o", o.output, "report path");
  bind(chk, RunCheckFpras);

  CLI::App* bnd = app.add_subcommand("bounds", "budgets and lower/upper bounds");
  bnd->add_option("input", o.input, "matrix JSON file");
  bnd->add_option("--family", o.family, "bound family without a matrix file")
      ->check(CLI::IsMember({"permanent", "hafnian", "tor_thermal", "tor_squeezed_thermal"}));
  bnd->add_option("--lambdas", o.lambdas, "spectrum, comma separated")->delimiter(',');
  bnd->add_option("--r", o.r, "squeezing values, comma separated")->delimiter(',');
  bnd->add_option("--n", o.n, "common thermal photon number");
  bnd->add_option("--a", o.a, "rescale factor a > 1");
  bnd->add_option("--output,-o", o.output, "report path");
  bind(bnd, RunBounds);

  CLI::App* orc = app.add_subcommand("oracle", "exact value of a matrix function or probability");
  orc->add_option("input", o.input, "matrix or circuit JSON file")->required();
  orc->add_option("--output,-o", o.output, "report path");
  bind(orc, RunOracle);

  CLI::App* conv = app.add_subcommand("convergence", "running mean and radius as CSV");
  conv->add_option("input", o.input, "circuit JSON file")->required();
  AddSampling(conv, o);
  conv->add_option("--points", o.points, "trace rows")->check(CLI::PositiveNumber);
  conv->add_flag("--oracle-check", o.oracle_check, "append the exact probability column");
  bind(conv, RunConvergence);

  CLI::App* acc = app.add_subcommand("acceptance", "run the acceptance suite");
  acc->add_option("--only", o.only, "criterion numbers, comma separated")->delimiter(',');
  acc->add_option("--seed", o.seed, "suite seed");
  acc->add_option("--threads", o.threads, "OpenMP threads");
  bind(acc, RunAcceptanceCommand);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  return g_run();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Dispatch(argc, argv);
  } catch (const phasegbs::Error& e) {
    std::cerr << e.what() << "\n";
    return phasegbs::IsConditionFailure(e.code()) ? kExitCondition : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
