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

#include "sbmk/smt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sbmk/error.h"
#include "sbmk/random.h"
#include "sbmk/tracy_widom.h"

namespace sbmk {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void SmtConfig::Check() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kOutOfRangeProbability, "alpha must lie in (0, 1)");
  }
  if (k_max && *k_max < 1) {
    throw Error(ErrorCode::kInvalidArgument, "k_max must be >= 1");
  }
  if (n_min < 2) throw Error(ErrorCode::kInvalidArgument, "n_min must be >= 2");
  if (!custom_detector && detector != "rsc") {
    throw Error(ErrorCode::kInvalidArgument, "unknown detector '" + detector + "'");
  }
  if (!(tau >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "tau must be >= 0");
}

int SmtConfig::ResolvedKMax(int n) const {
  if (k_max) return *k_max;
  int k = static_cast<int>(std::lround(std::cbrt(static_cast<double>(n))));
  while (static_cast<int64_t>(k) * k * k > n) --k;
  return std::clamp(k, 1, 100);
}

Eigen::MatrixXd EstimateBlockMatrixLenient(const AdjacencyMatrix& adjacency,
                                           const LabelVector& labels) {
  if (labels.size() != adjacency.size()) {
    throw Error(ErrorCode::kLengthMismatch, "labels length != node count");
  }
  const int k = labels.num_blocks();
  Eigen::MatrixXd edges = Eigen::MatrixXd::Zero(k, k);
  for (const auto& [u, v] : adjacency.Edges()) {
    const int a = labels[u], b = labels[v];
    edges(a, b) += 1.0;
    if (a != b) edges(b, a) += 1.0;
  }
  const auto sizes = labels.BlockSizes();
  Eigen::MatrixXd g(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const double pairs =
          a == b ? 0.5 * sizes[a] * (sizes[a] - 1.0)
                 : static_cast<double>(sizes[a]) * sizes[b];
      g(a, b) = pairs > 0.0 ? edges(a, b) / pairs : kNaN;
    }
  }
  return g;
}

BlockProbabilityMatrix EstimateBlockMatrix(const AdjacencyMatrix& adjacency,
                                           const LabelVector& labels) {
  Eigen::MatrixXd g = EstimateBlockMatrixLenient(adjacency, labels);
  for (int a = 0; a < g.rows(); ++a) {
    for (int b = 0; b < g.cols(); ++b) {
      if (std::isnan(g(a, b))) {
        throw Error(ErrorCode::kEmptyBlockPair,
                    "blocks (" + std::to_string(a) + ", " + std::to_string(b) +
                        ") have no node pairs");
      }
    }
  }
  return BlockProbabilityMatrix(std::move(g));
}

double ScaledSecondEigenvalue(const AdjacencyMatrix& block, double p_hat,
                              const EigenOptions& opts) {
  const ScaledBlockMatrix scaled = BuildScaledMatrix(block, p_hat);
  return TopEigs(scaled.AsOperator(), 2, opts).values(1);
}

double BlockStatistic(const AdjacencyMatrix& block, double p_hat,
                      const EigenOptions& opts) {
  if (block.size() < 2) {
    throw Error(ErrorCode::kBlockTooSmall, "block needs at least 2 nodes");
  }
  if (!(p_hat > 0.0 && p_hat < 1.0)) {
    throw Error(ErrorCode::kDegenerateProbability,
                "p_hat = " + std::to_string(p_hat) + " not in (0, 1)");
  }
  const double lambda2 = ScaledSecondEigenvalue(block, p_hat, opts);
  const double n = block.size();
  return std::pow(n, 2.0 / 3.0) * (lambda2 - 2.0 - 1.0 / (n * p_hat));
}

CandidateReport MultipleTest(const AdjacencyMatrix& adjacency,
                             const LabelVector& labels, double alpha,
                             int n_min, const EigenOptions& opts) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kOutOfRangeProbability, "alpha must lie in (0, 1)");
  }
  const int n = adjacency.size();
  const int k = labels.num_blocks();
  CandidateReport row;
  row.k = k;
  row.labels = labels;
  row.g_hat = EstimateBlockMatrixLenient(adjacency, labels);
  row.threshold = Tw1Quantile(1.0 - alpha);

  const auto sizes = labels.BlockSizes();
  int usable = 0;
  for (int i = 0; i < k; ++i) {
    BlockTest test;
    test.block = i;
    test.size = sizes[i];
    test.p_hat = row.g_hat(i, i);
    test.mu_hat = test.size * test.p_hat;
    if (test.size < std::max(n_min, 2)) {
      test.degenerate = true;
      test.reason = "size " + std::to_string(test.size) + " below n_min";
    } else if (!(test.p_hat > 0.0 && test.p_hat < 1.0)) {
      test.degenerate = true;
      test.reason = "p_hat not in (0, 1)";
    } else {
      const AdjacencyMatrix block = BlockSubmatrix(adjacency, labels, i);
      test.lambda2 = ScaledSecondEigenvalue(block, test.p_hat, opts);
      test.statistic = std::pow(static_cast<double>(test.size), 2.0 / 3.0) *
                       (*test.lambda2 - 2.0 - 1.0 / test.mu_hat);
      ++usable;
      row.t_stat = std::max(row.t_stat.value_or(*test.statistic), *test.statistic);
    }
    if (test.degenerate) {
      row.diagnostics.push_back("block " + std::to_string(i) +
                                " degenerate: " + test.reason);
    }
    row.blocks.push_back(std::move(test));
  }
  if (usable == 0) {
    throw Error(ErrorCode::kNoUsableBlocks,
                "all " + std::to_string(k) + " blocks are degenerate");
  }

  const bool any_degenerate = usable < k;
  row.decision = !any_degenerate && *row.t_stat <= row.threshold
                     ? Decision::kAccept
                     : Decision::kReject;
  if (any_degenerate) {
    row.diagnostics.push_back("rejected: degenerate blocks present");
  }

  const double floor_rate = std::pow(static_cast<double>(n) / k, -2.0 / 3.0);
  row.validity_condition = true;
  row.delta0_hat = 0.0;
  for (int i = 0; i < k; ++i) {
    const double gii = row.g_hat(i, i);
    if (!(gii >= floor_rate)) row.validity_condition = false;
    for (int j = 0; j < k; ++j) {
      const double gap = gii - row.g_hat(i, j);
      if (!std::isnan(gap)) row.delta0_hat = std::max(row.delta0_hat, gap);
    }
  }
  return row;
}

SmtReport EstimateK(const AdjacencyMatrix& adjacency, const SmtConfig& config) {
  config.Check();
  const int n = adjacency.size();
  if (n < 2 * config.n_min) {
    throw Error(ErrorCode::kInvalidArgument,
                "n = " + std::to_string(n) + " below 2 * n_min");
  }
  SmtReport report;
  report.n = n;
  report.alpha = config.alpha;
  report.k_max = config.ResolvedKMax(n);
  report.n_min = config.n_min;
  report.detector = config.custom_detector ? "custom" : config.detector;
  report.tau = config.tau;
  report.seed = config.seed;

  for (int k = 1; k <= report.k_max; ++k) {
    const uint64_t stream_seed = MixStream(config.seed, k);
    CandidateReport row;
    row.k = k;
    row.threshold = Tw1Quantile(1.0 - config.alpha);
    try {
      LabelVector labels;
      if (k == 1) {
        labels = LabelVector::Constant(n);
      } else if (config.custom_detector) {
        labels = config.custom_detector(adjacency, k, stream_seed);
      } else {
        labels = RscCluster(adjacency, k, config.tau, stream_seed, config.eigen);
      }
      row = MultipleTest(adjacency, labels, config.alpha, config.n_min,
                         config.eigen);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoUsableBlocks &&
          e.code() != ErrorCode::kKMeansDegenerate &&
          e.code() != ErrorCode::kConvergenceFailure) {
        throw;
      }
      row.decision = Decision::kReject;
      row.diagnostics.push_back(e.what());
    }
    row.k = k;
    const bool accepted = row.decision == Decision::kAccept;
    report.candidates.push_back(std::move(row));
    if (accepted) {
      report.k_hat = k;
      break;
    }
  }
  return report;
}

}  // namespace sbmk
