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

#include "sbmk/spectral.h"

#include <cmath>
#include <string>

#include "sbmk/error.h"

namespace sbmk {

void ScaledAdjacencyOperator::Apply(std::span<const double> x,
                                    std::span<double> y) const {
  a_.Multiply(x, y);
  for (double& v : y) v *= scale_;
}

RegularizedLaplacian::RegularizedLaplacian(const AdjacencyMatrix& a, double tau)
    : a_(a), inv_sqrt_deg_(a.size(), 0.0), scratch_(a.size(), 0.0) {
  if (!(tau >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tau must be >= 0");
  }
  const int n = a.size();
  const double mean_degree = n > 0 ? 2.0 * a.num_edges() / n : 0.0;
  shift_ = n > 0 ? tau * mean_degree / n : 0.0;
  for (int i = 0; i < n; ++i) {
    // Row sum of A + shift * 1 1^T.
    const double d = a.Degree(i) + shift_ * n;
    inv_sqrt_deg_[i] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
}

void RegularizedLaplacian::Apply(std::span<const double> x,
                                 std::span<double> y) const {
  const int n = a_.size();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    scratch_[i] = inv_sqrt_deg_[i] * x[i];
    total += scratch_[i];
  }
  a_.Multiply(scratch_, y);
  for (int i = 0; i < n; ++i) {
    y[i] = inv_sqrt_deg_[i] * (y[i] + shift_ * total);
  }
}

ScaledBlockMatrix BuildScaledMatrix(const AdjacencyMatrix& block, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::kDegenerateProbability,
                "p = " + std::to_string(p) + " must lie in (0, 1)");
  }
  if (block.size() < 2) {
    throw Error(ErrorCode::kBlockTooSmall, "block needs at least two nodes");
  }
  ScaledBlockMatrix out;
  out.pattern = block;
  out.scale = 1.0 / std::sqrt(block.size() * p * (1.0 - p));
  return out;
}

LabelVector SesBipartition(const AdjacencyMatrix& adjacency,
                           const EigenOptions& opts) {
  const int n = adjacency.size();
  if (n < 2) throw Error(ErrorCode::kBlockTooSmall, "SES needs n >= 2");
  ScaledAdjacencyOperator op(adjacency, 1.0);
  const EigenResult eig = TopEigs(op, 2, opts);

  Eigen::VectorXd v2 = eig.vectors.col(1);
  const double tie_tol =
      1e-9 * std::max(1.0, std::abs(eig.values(0)));
  if (eig.values(0) - eig.values(1) <= tie_tol) {
    // Repeated leading eigenvalue: choose the basis of the top eigenspace in
    // which the first vector is the projection of the all-ones vector.
    const Eigen::MatrixXd top = eig.vectors.leftCols(2);
    Eigen::VectorXd u = top * (top.transpose() * Eigen::VectorXd::Ones(n));
    if (u.norm() > 1e-12) {
      u.normalize();
      // Complement of u inside span(top).
      Eigen::VectorXd c = top.col(0) - u.dot(top.col(0)) * u;
      if (c.norm() < 1e-6) c = top.col(1) - u.dot(top.col(1)) * u;
      v2 = c.normalized();
    }
  }

  const double sum = v2.sum();
  bool flip = sum < 0.0;
  if (std::abs(sum) <= 1e-12 * std::sqrt(static_cast<double>(n))) {
    flip = false;
    for (int i = 0; i < n; ++i) {
      if (std::abs(v2(i)) > 1e-12) {
        flip = v2(i) < 0.0;
        break;
      }
    }
  }
  if (flip) v2 = -v2;
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = v2(i) >= 0.0 ? 0 : 1;
  return LabelVector(std::move(labels), 2);
}

LabelVector RscCluster(const AdjacencyMatrix& adjacency, int k, double tau,
                       uint64_t seed, const EigenOptions& opts) {
  const int n = adjacency.size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "K = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  if (k == 1) return LabelVector::Constant(n);
  RegularizedLaplacian laplacian(adjacency, tau);
  const EigenResult eig = TopEigs(laplacian, k, opts);
  return KMeans(eig.vectors, k, seed).labels;
}

}  // namespace sbmk
