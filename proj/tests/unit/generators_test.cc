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

#include <cmath>

#include "sbmk/generators.h"
#include "sbmk/smt.h"
#include "unit/test_util.h"

namespace sbmk {
namespace {

using testing::PlantedSbm;

double Variance(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  m /= xs.size();
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  return v / (xs.size() - 1);
}

std::vector<double> Degrees(const AdjacencyMatrix& a) {
  std::vector<double> d(a.size());
  for (int i = 0; i < a.size(); ++i) d[i] = a.Degree(i);
  return d;
}

TEST_SUITE("generators") {

TEST_CASE("sbm extremes") {
  const auto empty = SampleSbm(PlantedSbm(30, 3, 0.0, 0.0), 1);
  CHECK(empty.num_edges() == 0);
  const auto full = SampleSbm(PlantedSbm(30, 3, 1.0, 1.0), 1);
  CHECK(full.num_edges() == 30 * 29 / 2);
}

TEST_CASE("sbm is reproducible per seed and stream") {
  const auto params = PlantedSbm(200, 2, 0.1, 0.02);
  CHECK(SampleSbm(params, 7) == SampleSbm(params, 7));
  CHECK_FALSE(SampleSbm(params, 7) == SampleSbm(params, 8));
  CHECK_FALSE(SampleSbm(params, 7, 0) == SampleSbm(params, 7, 1));
}

TEST_CASE("sbm within-block density is binomially concentrated") {
  const auto params = PlantedSbm(1000, 2, 0.2, 0.05);
  const LabelVector g = params.ResolvedLabels();
  double within_edges = 0.0;
  double within_pairs = 0.0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const Eigen::MatrixXd gh = EstimateBlockMatrixLenient(SampleSbm(params, seed), g);
    const double pairs = 2.0 * 500.0 * 499.0 / 2.0;
    within_edges += 0.5 * (gh(0, 0) + gh(1, 1)) * pairs;
    within_pairs += pairs;
  }
  const double density = within_edges / within_pairs;
  const double se = std::sqrt(0.2 * 0.8 / within_pairs);
  CHECK(std::abs(density - 0.2) < 3.0 * se);
}

TEST_CASE("expected edge count") {
  const auto params = PlantedSbm(120, 3, 0.3, 0.1);
  const LabelVector g = params.ResolvedLabels();
  double mean = 0.0, var = 0.0;
  for (int i = 0; i < 120; ++i) {
    for (int j = i + 1; j < 120; ++j) {
      const double p = g[i] == g[j] ? 0.3 : 0.1;
      mean += p;
      var += p * (1 - p);
    }
  }
  double total = 0.0;
  const int reps = 40;
  for (int s = 0; s < reps; ++s) total += SampleSbm(params, s).num_edges();
  CHECK(std::abs(total / reps - mean) < 4.0 * std::sqrt(var / reps));
}

TEST_CASE("balanced labels") {
  CHECK(BalancedLabels(4, 2).BlockSizes() == std::vector<int>{2, 2});
  CHECK(BalancedLabels(5, 2).BlockSizes() == std::vector<int>{3, 2});
  CHECK_THROWS_CODE(BalancedLabels(5, 6), ErrorCode::kTooManyBlocks);
}

TEST_CASE("planted partition parametrization") {
  PlantedPartitionParams p{100, 4, 0.05, 0.15};
  CHECK(p.within() == doctest::Approx(0.2));
  CHECK(p.out_in_ratio() == doctest::Approx(0.25));
  CHECK_NOTHROW(p.Check());
  CHECK_THROWS_CODE((PlantedPartitionParams{100, 4, 0.5, 0.6}.Check()),
                    ErrorCode::kInvalidProbability);
  CHECK_THROWS_CODE((PlantedPartitionParams{100, 4, 0.1, 0.0}.Check()),
                    ErrorCode::kInvalidProbability);

  // Expected degree: (n/K - 1) within partners and (n - n/K) between ones.
  const auto q = PlantedPartitionParams::FromDegree(5000, 10, 100.0, 1.0 / 3.0);
  CHECK(q.out_in_ratio() == doctest::Approx(1.0 / 3.0));
  CHECK(q.within() * 499.0 + q.between * 4500.0 == doctest::Approx(100.0));
  const auto er = PlantedPartitionParams::FromDegree(1000, 1, 10.0, 0.5);
  CHECK(er.within() * 999.0 == doctest::Approx(10.0));
}

TEST_CASE("btsbm level structure") {
  CHECK(BtsbmParams::SharedLevel(0, 0) == 0);
  CHECK(BtsbmParams::SharedLevel(0, 1) == 1);
  CHECK(BtsbmParams::SharedLevel(1, 2) == 2);
  CHECK(BtsbmParams::SharedLevel(0, 7) == 3);
  CHECK(LeafAddress(5, 3) == "101");
  CHECK(LeafAddress(0, 0).empty());

  BtsbmParams p{2, 0.4, 0.5, 16};
  const auto q = p.LevelProbabilities();
  REQUIRE(q.size() == 3);
  CHECK(q[0] == doctest::Approx(0.4));
  CHECK(q[1] == doctest::Approx(0.2));
  CHECK(q[2] == doctest::Approx(0.1));
  CHECK_THROWS_CODE((BtsbmParams{2, 0.4, 0.5, 15}.Check()), ErrorCode::kIndivisibleN);
  CHECK_THROWS_CODE((BtsbmParams{2, 1.4, 0.5, 16}.Check()), ErrorCode::kInvalidProbability);
}

TEST_CASE("btsbm shapes and degenerate depths") {
  const auto [a, g] = SampleBtsbm(BtsbmParams{2, 0.5, 0.2, 16}, 1);
  CHECK(a.size() == 16);
  CHECK(g.num_blocks() == 4);
  CHECK(g.BlockSizes() == std::vector<int>{4, 4, 4, 4});

  // Depth 0: one leaf, a plain ER graph at q0.
  const auto [er, single] = SampleBtsbm(BtsbmParams{0, 0.3, 0.5, 10}, 4);
  CHECK(single.num_blocks() == 1);
  CHECK(er == SampleSbm(PlantedSbm(10, 1, 0.3, 0.0), 4));

  // Depth 1 has the same pair probabilities as a planted 2-block SBM.
  const BtsbmParams d1{1, 0.6, 0.25, 40};
  const auto [bt, bl] = SampleBtsbm(d1, 9);
  CHECK(bt == SampleSbm(PlantedSbm(40, 2, 0.6, 0.15), 9));
}

TEST_CASE("btsbm expected matrix") {
  const Eigen::MatrixXd q0 = BtsbmExpectedMatrix(BtsbmParams{0, 0.3, 0.5, 3});
  const Eigen::MatrixXd expect0 =
      0.3 * (Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3));
  CHECK((q0 - expect0).norm() < 1e-15);

  // Round-robin leaves: nodes 0, 2 share leaf 0 and 1, 3 leaf 1.
  const Eigen::MatrixXd q1 = BtsbmExpectedMatrix(BtsbmParams{1, 0.8, 0.5, 4});
  Eigen::MatrixXd expect1(4, 4);
  expect1 << 0, 0.4, 0.8, 0.4,
             0.4, 0, 0.4, 0.8,
             0.8, 0.4, 0, 0.4,
             0.4, 0.8, 0.4, 0;
  CHECK((q1 - expect1).norm() < 1e-15);

  for (int depth = 0; depth <= 3; ++depth) {
    const BtsbmParams p{depth, 0.7, 0.3, 32};
    const Eigen::MatrixXd m =
        BtsbmExpectedMatrix(p) + 0.7 * Eigen::MatrixXd::Identity(32, 32);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    CHECK(lu.rank() <= (1 << depth));
  }
}

TEST_CASE("btsbm block densities match level probabilities") {
  BtsbmParams p;
  p.n = 1600;
  p.depth = 2;
  p.a = 0.2;
  p.rho = BtsbmParams::RhoForDegree(p.n, p.depth, p.a, 50.0);
  const auto [a, g] = SampleBtsbm(p, 3);
  const Eigen::MatrixXd gh = EstimateBlockMatrix(a, g).matrix();
  const auto q = p.LevelProbabilities();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double expected = q[BtsbmParams::SharedLevel(i, j)];
      const double pairs = i == j ? 400.0 * 399.0 / 2.0 : 400.0 * 400.0;
      const double se = std::sqrt(expected * (1 - expected) / pairs);
      CHECK_MESSAGE(std::abs(gh(i, j) - expected) < 3.0 * se, i, " ", j);
      if (i != j) CHECK(gh(i, i) > gh(i, j));
    }
  }
  // Degree calibration.
  CHECK(2.0 * a.num_edges() / p.n == doctest::Approx(50.0).epsilon(0.03));
}

TEST_CASE("dcsbm") {
  const auto base = PlantedSbm(200, 2, 0.1, 0.02);
  DcsbmParams unit{base, std::vector<double>(200, 1.0)};
  CHECK(SampleDcsbm(unit, 5).adjacency == SampleSbm(base, 5));

  DcsbmParams zero{PlantedSbm(50, 2, 0.0, 0.0), std::vector<double>(50, 1.5)};
  CHECK(SampleDcsbm(zero, 1).adjacency.num_edges() == 0);

  const LabelVector g = base.ResolvedLabels();
  const auto theta = UniformPropensities(g, 0.2, 1.8, 3);
  std::vector<double> block_sum(2, 0.0);
  for (int i = 0; i < 200; ++i) {
    CHECK(theta[i] > 0.0);
    block_sum[g[i]] += theta[i];
  }
  CHECK(block_sum[0] / 100.0 == doctest::Approx(1.0));
  CHECK(block_sum[1] / 100.0 == doctest::Approx(1.0));

  DcsbmParams over{PlantedSbm(20, 1, 0.9, 0.0), std::vector<double>(20, 1.2)};
  CHECK_THROWS_CODE(SampleDcsbm(over, 1), ErrorCode::kProbabilityOverflow);
  const auto clipped = SampleDcsbm(over, 1, 0, OverflowPolicy::kClip);
  CHECK(clipped.clipped_pairs == 190);
  CHECK(clipped.adjacency.num_edges() == 190);
}

TEST_CASE("dcsbm degrees are more dispersed than the matched sbm") {
  const int n = 1000;
  const auto base = PlantedSbm(n, 2, 10.0 / 599.5, 0.2 * 10.0 / 599.5);
  const LabelVector g = base.ResolvedLabels();
  double dc_var = 0.0, sbm_var = 0.0;
  for (uint64_t s = 0; s < 50; ++s) {
    DcsbmParams p{base, UniformPropensities(g, 0.2, 1.8, s, 1)};
    dc_var += Variance(Degrees(SampleDcsbm(p, s).adjacency));
    sbm_var += Variance(Degrees(SampleSbm(base, s)));
  }
  CHECK(dc_var > sbm_var);
}

}  // TEST_SUITE

}  // namespace
}  // namespace sbmk
