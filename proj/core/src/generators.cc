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

#include "sbmk/generators.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "sbmk/error.h"
#include "sbmk/random.h"

namespace sbmk {
namespace {

void CheckProbability(double p, const char* what) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw Error(ErrorCode::kInvalidProbability,
                std::string(what) + " = " + std::to_string(p));
  }
}

// Upper-triangle Bernoulli sweep; prob(u, v) must already lie in [0, 1].
template <typename ProbFn>
AdjacencyMatrix SweepPairs(int n, Rng& rng, ProbFn prob) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double p = prob(u, v);
      if (p > 0.0 && rng.Uniform() < p) edges.emplace_back(u, v);
    }
  }
  return AdjacencyMatrix::FromEdges(n, edges);
}

}  // namespace

LabelVector BalancedLabels(int n, int k) {
  if (k < 1 || n < 0) {
    throw Error(ErrorCode::kInvalidArgument, "need K >= 1 and n >= 0");
  }
  if (k > n) {
    throw Error(ErrorCode::kTooManyBlocks, "K = " + std::to_string(k) +
                                               " exceeds n = " +
                                               std::to_string(n));
  }
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i % k;
  return LabelVector(std::move(labels), k);
}

LabelVector SbmParams::ResolvedLabels() const {
  return labels ? *labels : BalancedLabels(n, probs.num_blocks());
}

AdjacencyMatrix SampleSbm(const SbmParams& params, uint64_t seed,
                          uint64_t stream) {
  params.Check();
  const LabelVector labels = params.ResolvedLabels();
  const Eigen::MatrixXd p = params.rho * params.probs.matrix();
  Rng rng(seed, stream);
  return SweepPairs(params.n, rng,
                    [&](int u, int v) { return p(labels[u], labels[v]); });
}

void PlantedPartitionParams::Check() const {
  if (n < 1 || k < 1) throw Error(ErrorCode::kInvalidArgument, "n, K >= 1");
  if (k > n) throw Error(ErrorCode::kTooManyBlocks, "K > n");
  if (!(between >= 0.0)) {
    throw Error(ErrorCode::kInvalidProbability, "between must be >= 0");
  }
  if (!(gap > 0.0)) {
    throw Error(ErrorCode::kInvalidProbability, "gap must be > 0");
  }
  if (between + gap > 1.0) {
    throw Error(ErrorCode::kInvalidProbability, "within = between + gap > 1");
  }
}

SbmParams PlantedPartitionParams::ToSbm() const {
  Check();
  SbmParams sbm;
  sbm.n = n;
  sbm.probs = BlockProbabilityMatrix::Planted(k, within(), between);
  return sbm;
}

PlantedPartitionParams PlantedPartitionParams::FromDegree(int n, int k,
                                                          double degree,
                                                          double ratio) {
  if (n < 2 || k < 1 || k > n || !(degree > 0.0) || !(ratio >= 0.0) ||
      !(ratio < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "need n >= 2, 1 <= K <= n, degree > 0, 0 <= ratio < 1");
  }
  const double block = static_cast<double>(n) / k;
  const double within = degree / ((block - 1.0) + ratio * (n - block));
  PlantedPartitionParams out;
  out.n = n;
  out.k = k;
  out.between = ratio * within;
  out.gap = within - out.between;
  out.Check();
  return out;
}

std::vector<double> BtsbmParams::LevelProbabilities() const {
  std::vector<double> q(depth + 1);
  for (int l = 0; l <= depth; ++l) q[l] = rho * std::pow(a, l);
  return q;
}

int BtsbmParams::SharedLevel(int leaf_a, int leaf_b) {
  // Highest differing address bit decides how far up the two leaves meet.
  return std::bit_width(static_cast<unsigned>(leaf_a ^ leaf_b));
}

BlockProbabilityMatrix BtsbmParams::BlockMatrix() const {
  const auto q = LevelProbabilities();
  const int k = num_leaves();
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) g(i, j) = q[SharedLevel(i, j)];
  }
  return BlockProbabilityMatrix(std::move(g));
}

void BtsbmParams::Check() const {
  if (depth < 0 || depth > 20) {
    throw Error(ErrorCode::kInvalidArgument, "depth must lie in 0..20");
  }
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (n % num_leaves() != 0) {
    throw Error(ErrorCode::kIndivisibleN,
                "n = " + std::to_string(n) + " not divisible by 2^" +
                    std::to_string(depth));
  }
  if (!std::isfinite(a) || a < 0.0) {
    throw Error(ErrorCode::kInvalidProbability, "a must be >= 0");
  }
  for (double q : LevelProbabilities()) CheckProbability(q, "q_l");
}

double BtsbmParams::RhoForDegree(int n, int depth, double a, double degree) {
  // A node shares level 0 with (n/K - 1) others and level l >= 1 with
  // 2^(l-1) * n/K others.
  const double leaf = static_cast<double>(n) / (1 << depth);
  double weight = leaf - 1.0;
  for (int l = 1; l <= depth; ++l) weight += std::pow(a, l) * leaf * (1 << (l - 1));
  return degree / weight;
}

std::string LeafAddress(int leaf, int depth) {
  std::string s(depth, '0');
  for (int b = 0; b < depth; ++b) {
    if ((leaf >> (depth - 1 - b)) & 1) s[b] = '1';
  }
  return s;
}

std::pair<AdjacencyMatrix, LabelVector> SampleBtsbm(const BtsbmParams& params,
                                                    uint64_t seed,
                                                    uint64_t stream) {
  params.Check();
  const int k = params.num_leaves();
  LabelVector labels = BalancedLabels(params.n, k);
  const auto q = params.LevelProbabilities();
  Rng rng(seed, stream);
  auto adjacency = SweepPairs(params.n, rng, [&](int u, int v) {
    return q[BtsbmParams::SharedLevel(labels[u], labels[v])];
  });
  return {std::move(adjacency), std::move(labels)};
}

Eigen::MatrixXd BtsbmExpectedMatrix(const BtsbmParams& params) {
  params.Check();
  const LabelVector labels = BalancedLabels(params.n, params.num_leaves());
  const auto q = params.LevelProbabilities();
  Eigen::MatrixXd out(params.n, params.n);
  for (int u = 0; u < params.n; ++u) {
    for (int v = 0; v < params.n; ++v) {
      out(u, v) = q[BtsbmParams::SharedLevel(labels[u], labels[v])];
    }
    out(u, u) -= q[0];
  }
  return out;
}

void DcsbmParams::Check() const {
  base.Check();
  if (static_cast<int>(theta.size()) != base.n) {
    throw Error(ErrorCode::kLengthMismatch, "theta length != n");
  }
  for (double t : theta) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw Error(ErrorCode::kInvalidArgument, "theta must be positive");
    }
  }
}

std::vector<double> UniformPropensities(const LabelVector& labels, double low,
                                        double high, uint64_t seed,
                                        uint64_t stream) {
  if (!(low > 0.0) || !(high >= low)) {
    throw Error(ErrorCode::kInvalidArgument, "need 0 < low <= high");
  }
  Rng rng(seed, stream);
  std::vector<double> theta(labels.size());
  for (auto& t : theta) t = low + (high - low) * rng.Uniform();
  std::vector<double> sum(labels.num_blocks(), 0.0);
  const auto sizes = labels.BlockSizes();
  for (int i = 0; i < labels.size(); ++i) sum[labels[i]] += theta[i];
  for (int i = 0; i < labels.size(); ++i) {
    theta[i] *= sizes[labels[i]] / sum[labels[i]];
  }
  return theta;
}

DcsbmSample SampleDcsbm(const DcsbmParams& params, uint64_t seed,
                        uint64_t stream, OverflowPolicy policy) {
  params.Check();
  const LabelVector labels = params.base.ResolvedLabels();
  const Eigen::MatrixXd g = params.base.rho * params.base.probs.matrix();
  const auto& theta = params.theta;
  const int n = params.base.n;

  DcsbmSample out;
  out.total_pairs = static_cast<int64_t>(n) * (n - 1) / 2;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (theta[u] * theta[v] * g(labels[u], labels[v]) > 1.0) {
        if (policy == OverflowPolicy::kError) {
          throw Error(ErrorCode::kProbabilityOverflow,
                      "pair (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") has probability > 1");
        }
        ++out.clipped_pairs;
      }
    }
  }
  Rng rng(seed, stream);
  out.adjacency = SweepPairs(n, rng, [&](int u, int v) {
    return std::min(1.0, theta[u] * theta[v] * g(labels[u], labels[v]));
  });
  return out;
}

}  // namespace sbmk
