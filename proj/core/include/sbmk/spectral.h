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

// Symmetric eigen-computation, scaled block matrices, the SES and RSC
// bipartitioners, K-way regularized spectral clustering and k-means.

#ifndef SBMK_SPECTRAL_H_
#define SBMK_SPECTRAL_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sbmk/graph.h"

namespace sbmk {

// Leading eigenpairs, values in descending order. For every pair,
// ||M v - lambda v|| <= residual_tol * ||M||.
struct EigenResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // one column per value
  double residual_tol = 0.0;
};

struct EigenOptions {
  // Explicit matrices at or below this size go to the dense LAPACK solver;
  // larger ones run Lanczos.
  int dense_limit = 4096;
  // Same cutoff for matrix-free operators. Sparse graph operators reach the
  // edge eigenvalues far faster by Lanczos than by densifying.
  int operator_dense_limit = 256;
  double tol = 1e-8;
  // Lanczos iteration cap as a multiple of the dimension.
  int max_iterations_factor = 5;
  uint64_t seed = 0x5eed;
};

// Symmetric linear map x -> M x.
class SymmetricOperator {
 public:
  virtual ~SymmetricOperator() = default;
  virtual int size() const = 0;
  virtual void Apply(std::span<const double> x, std::span<double> y) const = 0;
  // Dense copy, for the small-dimension path.
  Eigen::MatrixXd ToDense() const;
};

class DenseOperator final : public SymmetricOperator {
 public:
  explicit DenseOperator(const Eigen::MatrixXd& m) : m_(m) {}
  int size() const override { return static_cast<int>(m_.rows()); }
  void Apply(std::span<const double> x, std::span<double> y) const override;

 private:
  const Eigen::MatrixXd& m_;
};

// scale * A for an adjacency matrix A.
class ScaledAdjacencyOperator final : public SymmetricOperator {
 public:
  ScaledAdjacencyOperator(const AdjacencyMatrix& a, double scale)
      : a_(a), scale_(scale) {}
  int size() const override { return a_.size(); }
  void Apply(std::span<const double> x, std::span<double> y) const override;

 private:
  const AdjacencyMatrix& a_;
  double scale_;
};

// L_tau = D_tau^{-1/2} (A + tau * (dbar / n) 1 1^T) D_tau^{-1/2}, applied
// without forming the dense rank-one term. Zero-degree rows (tau = 0 only)
// are mapped to zero.
class RegularizedLaplacian final : public SymmetricOperator {
 public:
  RegularizedLaplacian(const AdjacencyMatrix& a, double tau);
  int size() const override { return a_.size(); }
  void Apply(std::span<const double> x, std::span<double> y) const override;

  double shift() const { return shift_; }  // tau * dbar / n
  const std::vector<double>& inv_sqrt_degree() const { return inv_sqrt_deg_; }

 private:
  const AdjacencyMatrix& a_;
  double shift_;
  std::vector<double> inv_sqrt_deg_;
  mutable std::vector<double> scratch_;
};

// Throws InvalidArgument unless 1 <= k <= dimension; ConvergenceFailure (with
// the achieved residual in the message) if Lanczos does not reach opts.tol.
EigenResult TopEigs(const Eigen::MatrixXd& matrix, int k,
                    const EigenOptions& opts = {});
EigenResult TopEigs(const SymmetricOperator& op, int k,
                    const EigenOptions& opts = {});

// Lanczos with full reorthogonalization regardless of size. Exposed so the
// Krylov path can be tested against the dense path directly.
EigenResult LanczosTopEigs(const SymmetricOperator& op, int k,
                           const EigenOptions& opts = {});

// Pattern of a block adjacency with every edge weighted by
// 1 / sqrt(N p (1 - p)).
struct ScaledBlockMatrix {
  AdjacencyMatrix pattern;
  double scale = 0.0;

  int size() const { return pattern.size(); }
  Eigen::MatrixXd ToDense() const { return scale * pattern.ToDense(); }
  ScaledAdjacencyOperator AsOperator() const {
    return ScaledAdjacencyOperator(pattern, scale);
  }
};

// Throws DegenerateProbability unless 0 < p < 1 and BlockTooSmall for fewer
// than two nodes.
ScaledBlockMatrix BuildScaledMatrix(const AdjacencyMatrix& block, double p);

// Algorithm: sign of the eigenvector of the second-largest adjacency
// eigenvalue. The vector is canonicalized to a nonnegative entry sum (ties:
// first nonzero entry positive); entries >= 0 go to block 0. When the top
// eigenvalue is repeated (e.g. disconnected components of equal spectral
// radius) the pair is first rotated so the leading vector is the projection
// of the all-ones vector.
LabelVector SesBipartition(const AdjacencyMatrix& adjacency,
                           const EigenOptions& opts = {});

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 100;
};

struct KMeansResult {
  LabelVector labels;  // canonical: blocks numbered by first appearance
  double objective = 0.0;  // within-cluster sum of squares
  Eigen::MatrixXd centers;
};

// Lloyd iterations from k-means++ seeding; best of opts.restarts runs.
// An emptied cluster takes the point farthest from its own center; throws
// KMeansDegenerate if no such point can be spared.
KMeansResult KMeans(const Eigen::MatrixXd& points, int k, uint64_t seed,
                    const KMeansOptions& opts = {});

// k-means on rows of the n x K leading-eigenvector matrix of L_tau. K = 1
// short-circuits to a single block.
LabelVector RscCluster(const AdjacencyMatrix& adjacency, int k, double tau = 0.1,
                       uint64_t seed = 0, const EigenOptions& opts = {});

inline LabelVector RscBipartition(const AdjacencyMatrix& adjacency,
                                  double tau = 0.1, uint64_t seed = 0,
                                  const EigenOptions& opts = {}) {
  return RscCluster(adjacency, 2, tau, seed, opts);
}

}  // namespace sbmk

#endif  // SBMK_SPECTRAL_H_
