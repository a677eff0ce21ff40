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

// Seeded samplers for SBM, planted partition, degree-corrected SBM and the
// binary-tree SBM. Every sampler is a pure function of (params, seed, stream).

#ifndef SBMK_GENERATORS_H_
#define SBMK_GENERATORS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sbmk/graph.h"

namespace sbmk {

// Round-robin assignment: node i joins block i mod K, so sizes differ by at
// most one. Throws TooManyBlocks when K > n.
LabelVector BalancedLabels(int n, int k);

AdjacencyMatrix SampleSbm(const SbmParams& params, uint64_t seed,
                          uint64_t stream = 0);

// Planted partition: within = between + gap on the diagonal.
struct PlantedPartitionParams {
  int n = 0;
  int k = 1;
  double between = 0.0;
  double gap = 0.0;

  double within() const { return between + gap; }
  // Between-block probability over within-block probability.
  double out_in_ratio() const { return between / within(); }
  void Check() const;
  SbmParams ToSbm() const;

  // Balanced planted partition whose expected node degree is `degree`:
  // within * (n/K - 1) + between * (n - n/K) = degree, between = ratio *
  // within.
  static PlantedPartitionParams FromDegree(int n, int k, double degree,
                                           double out_in_ratio);
};

// Binary-tree SBM: K = 2^depth leaves, level probabilities
// q_l = rho * a^l for l = 0..depth.
struct BtsbmParams {
  int depth = 0;
  double rho = 0.0;
  double a = 0.0;
  int n = 0;

  int num_leaves() const { return 1 << depth; }
  std::vector<double> LevelProbabilities() const;
  // Lowest shared tree level of two leaves (0 for the same leaf).
  static int SharedLevel(int leaf_a, int leaf_b);
  BlockProbabilityMatrix BlockMatrix() const;
  void Check() const;

  // rho such that the expected node degree equals `degree`.
  static double RhoForDegree(int n, int depth, double a, double degree);
};

// Leaf i corresponds to the depth-bit binary address of i ("01" is leaf 1).
std::string LeafAddress(int leaf, int depth);

// Returns the graph and the leaf labels (node i in leaf i mod 2^depth).
std::pair<AdjacencyMatrix, LabelVector> SampleBtsbm(const BtsbmParams& params,
                                                    uint64_t seed,
                                                    uint64_t stream = 0);

// Q = Z G Z^T - q_0 I (n x n).
Eigen::MatrixXd BtsbmExpectedMatrix(const BtsbmParams& params);

enum class OverflowPolicy { kError, kClip };

// Degree-corrected SBM: P(u ~ v) = theta_u theta_v rho G(g_u, g_v).
struct DcsbmParams {
  SbmParams base;
  std::vector<double> theta;

  void Check() const;
};

// theta ~ Uniform(low, high), rescaled to mean 1 within each block.
std::vector<double> UniformPropensities(const LabelVector& labels, double low,
                                        double high, uint64_t seed,
                                        uint64_t stream = 0);

struct DcsbmSample {
  AdjacencyMatrix adjacency;
  int64_t clipped_pairs = 0;
  int64_t total_pairs = 0;
};

// kError throws ProbabilityOverflow if any pair probability exceeds 1; kClip
// caps at 1 and reports the number of clipped pairs.
DcsbmSample SampleDcsbm(const DcsbmParams& params, uint64_t seed,
                        uint64_t stream = 0,
                        OverflowPolicy policy = OverflowPolicy::kError);

}  // namespace sbmk

#endif  // SBMK_GENERATORS_H_
