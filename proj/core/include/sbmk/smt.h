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

// Sequential multiple testing for the number of SBM blocks.
//
// For a candidate K the graph is clustered into K blocks, each block's
// within-block rate p_i is estimated, and the block is scaled so that a
// genuine Erdos-Renyi block has a second eigenvalue near 2 + 1/(N_i p_i).
// The centred and N_i^{2/3}-scaled second eigenvalues are compared, through
// their maximum T_{n,K}, against the Tracy-Widom (beta = 1) quantile at
// 1 - alpha. K is increased until the test accepts.
//
// The maximum is compared with the single-block quantile; there is no
// multiplicity correction across the K blocks.

#ifndef SBMK_SMT_H_
#define SBMK_SMT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sbmk/graph.h"
#include "sbmk/spectral.h"

namespace sbmk {

// Community detector plugged into the sequential search: (graph, K, seed) ->
// labels with K blocks.
using Detector =
    std::function<LabelVector(const AdjacencyMatrix&, int, uint64_t)>;

struct SmtConfig {
  double alpha = 0.05;
  // Defaults to min(floor(n^{1/3}), 100).
  std::optional<int> k_max;
  int n_min = 30;
  // Name recorded in reports; "rsc" selects RscCluster(tau).
  std::string detector = "rsc";
  // Overrides `detector` when set.
  Detector custom_detector;
  double tau = 0.1;
  uint64_t seed = 0;
  EigenOptions eigen;

  void Check() const;
  int ResolvedKMax(int n) const;
};

enum class Decision { kAccept, kReject };

struct BlockTest {
  int block = 0;
  int size = 0;
  double p_hat = 0.0;  // NaN when the block has no node pairs
  double mu_hat = 0.0;
  std::optional<double> lambda2;
  std::optional<double> statistic;
  bool degenerate = false;
  std::string reason;  // why a block was degenerate
};

// One row of the sequential search.
struct CandidateReport {
  int k = 0;
  LabelVector labels;
  Eigen::MatrixXd g_hat;  // NaN where a block pair has no node pairs
  std::vector<BlockTest> blocks;
  std::optional<double> t_stat;  // max over usable blocks
  double threshold = 0.0;        // TW1 quantile at 1 - alpha
  Decision decision = Decision::kReject;
  // min_i G(i,i) >= (n/K)^{-2/3}; reported only.
  bool validity_condition = false;
  double delta0_hat = 0.0;
  std::vector<std::string> diagnostics;
};

struct SmtReport {
  int n = 0;
  double alpha = 0.0;
  int k_max = 0;
  int n_min = 0;
  std::string detector;
  double tau = 0.0;
  uint64_t seed = 0;
  std::vector<CandidateReport> candidates;
  std::optional<int> k_hat;  // empty: KMaxExceeded

  bool k_max_exceeded() const { return !k_hat.has_value(); }
};

// Edge count over pair count per block pair. Within-block pairs exclude the
// diagonal. Throws EmptyBlockPair when a block pair has no node pairs.
BlockProbabilityMatrix EstimateBlockMatrix(const AdjacencyMatrix& adjacency,
                                           const LabelVector& labels);

// Same counts, but undefined entries become NaN instead of throwing.
Eigen::MatrixXd EstimateBlockMatrixLenient(const AdjacencyMatrix& adjacency,
                                           const LabelVector& labels);

// Second-largest eigenvalue of the scaled block matrix.
double ScaledSecondEigenvalue(const AdjacencyMatrix& block, double p_hat,
                              const EigenOptions& opts = {});

// N^{2/3} (lambda_2(M) - 2 - 1/(N p_hat)). Throws DegenerateProbability or
// BlockTooSmall.
double BlockStatistic(const AdjacencyMatrix& block, double p_hat,
                      const EigenOptions& opts = {});

// Tests "all K blocks are Erdos-Renyi" for the given labels. Blocks with
// p_hat in {0, 1} or fewer than n_min nodes are degenerate and force a
// rejection; throws NoUsableBlocks if every block is degenerate.
CandidateReport MultipleTest(const AdjacencyMatrix& adjacency,
                             const LabelVector& labels, double alpha,
                             int n_min = 30, const EigenOptions& opts = {});

// Sequential search K = 1, 2, ... up to k_max. Throws InvalidArgument if
// n < 2 n_min. A missing k_hat in the report means KMaxExceeded.
SmtReport EstimateK(const AdjacencyMatrix& adjacency, const SmtConfig& config);

}  // namespace sbmk

#endif  // SBMK_SMT_H_
