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


// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "phasegbs/estimator.hpp"
#include "phasegbs/oracles.hpp"

namespace phasegbs {
namespace {

CircuitSpec BenchCircuit(int m) {
  CircuitSpec c;
  c.modes.assign(m, ModeParams{0.3, 0.2});
  c.eta = 0.9;
  c.unitary = HaarUnitary(m, 1);
  c.pattern.assign(m, MeasurementOutcome::PhotonNumber(1));
  return c;
}

void Estimator(benchmark::State& st, bool parallel) {
  CircuitSpec c = BenchCircuit(static_cast<int>(st.range(0)));
  EstimatorConfig cfg;
  cfg.n_samples = 200000;
  cfg.parallel = parallel;
  for (auto _ : st) benchmark::DoNotOptimize(EstimateProbability(c, cfg).estimate);
  st.SetItemsProcessed(st.iterations() * *cfg.n_samples);
}
void BM_EstimatorSerial(benchmark::State& st) { Estimator(st, false); }
void BM_EstimatorOpenMP(benchmark::State& st) { Estimator(st, true); }
BENCHMARK(BM_EstimatorSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimatorOpenMP)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

CMatrix BenchMatrix(int n) {
  std::srand(3);
  return CMatrix::Random(n, n);
}
void BM_PermanentSerial(benchmark::State& st) {
  CMatrix a = BenchMatrix(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(PermanentExactSerial(a));
}
void BM_PermanentOpenMP(benchmark::State& st) {
  CMatrix a = BenchMatrix(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(PermanentExact(a));
}
BENCHMARK(BM_PermanentSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PermanentOpenMP)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

CMatrix BenchTorMatrix(int m) {
  std::srand(5);
  CMatrix x = CMatrix::Random(m, m);
  CMatrix b = 0.5 * x * x.adjoint() / x.squaredNorm();
  CMatrix o = CMatrix::Zero(2 * m, 2 * m);
  o.topLeftCorner(m, m) = b.transpose();
  o.bottomRightCorner(m, m) = b;
  return o;
}
void BM_TorontonianSerial(benchmark::State& st) {
  CMatrix o = BenchTorMatrix(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(TorontonianExactSerial(o));
}
void BM_TorontonianOpenMP(benchmark::State& st) {
  CMatrix o = BenchTorMatrix(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(TorontonianExact(o));
}
BENCHMARK(BM_TorontonianSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TorontonianOpenMP)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace phasegbs

BENCHMARK_MAIN();
