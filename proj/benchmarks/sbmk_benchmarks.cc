// Copyright 2026 The sbmk Authors.
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

#include <benchmark/benchmark.h>

#include "sbmk/generators.h"
#include "sbmk/smt.h"
#include "sbmk/spectral.h"

namespace sbmk {
namespace {

AdjacencyMatrix Er(int n, double degree, uint64_t seed) {
  SbmParams params;
  params.n = n;
  params.probs = BlockProbabilityMatrix::Planted(1, degree / (n - 1), 0.0);
  return SampleSbm(params, seed);
}

// Top two eigenvalues of a scaled block: Lanczos on the sparse operator
// against LAPACK on the densified matrix.
void BM_TopEigsLanczos(benchmark::State& state) {
  const auto a = Er(static_cast<int>(state.range(0)), 20, 1);
  ScaledAdjacencyOperator op(a, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(LanczosTopEigs(op, 2).values);
}
BENCHMARK(BM_TopEigsLanczos)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_TopEigsDense(benchmark::State& state) {
  const auto a = Er(static_cast<int>(state.range(0)), 20, 1);
  const Eigen::MatrixXd m = 0.2 * a.ToDense();
  for (auto _ : state) benchmark::DoNotOptimize(TopEigs(m, 2).values);
}
BENCHMARK(BM_TopEigsDense)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SampleSbm(benchmark::State& state) {
  const auto params =
      PlantedPartitionParams::FromDegree(static_cast<int>(state.range(0)), 4, 20, 0.2).ToSbm();
  uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(SampleSbm(params, ++seed).num_edges());
}
BENCHMARK(BM_SampleSbm)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_BlockStatistic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = Er(n, 50, 2);
  const double p = 2.0 * a.num_edges() / (static_cast<double>(n) * (n - 1));
  for (auto _ : state) benchmark::DoNotOptimize(BlockStatistic(a, p));
}
BENCHMARK(BM_BlockStatistic)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_EstimateK(benchmark::State& state) {
  const auto a = SampleSbm(PlantedPartitionParams::FromDegree(2000, 4, 40, 0.1).ToSbm(), 3);
  SmtConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(EstimateK(a, config).k_hat);
}
BENCHMARK(BM_EstimateK)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sbmk

BENCHMARK_MAIN();
