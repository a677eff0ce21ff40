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

// Canonical graph, label and block-probability types.
//
// Node ids and community ids are 0-based throughout the library; file
// formats (see ingest.h) are 1-based.

#ifndef SBMK_GRAPH_H_
#define SBMK_GRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sbmk {

using Edge = std::pair<int, int>;

// Symmetric 0/1 matrix with zero diagonal. Immutable once built.
//
// Neighbor lists are always kept sorted (CSR). Graphs with at most
// kDenseLimit nodes additionally carry a packed bit matrix for O(1) edge
// lookup; larger graphs answer HasEdge by binary search. Both paths expose
// identical semantics.
class AdjacencyMatrix {
 public:
  static constexpr int kDenseLimit = 16384;

  AdjacencyMatrix() = default;

  // Undirected edges with 0-based endpoints. Duplicates and (v, u) copies of
  // (u, v) collapse. Throws SelfLoopPresent or NodeIndexOutOfRange.
  static AdjacencyMatrix FromEdges(int n, std::span<const Edge> edges);

  // Validates (see Validate) and converts a dense matrix.
  static AdjacencyMatrix FromDense(const Eigen::MatrixXd& entries);

  int size() const { return n_; }
  int64_t num_edges() const {
    return static_cast<int64_t>(neighbors_.size()) / 2;
  }
  bool HasEdge(int u, int v) const;
  std::span<const int> Neighbors(int u) const {
    return {neighbors_.data() + offsets_[u],
            static_cast<size_t>(offsets_[u + 1] - offsets_[u])};
  }
  int Degree(int u) const {
    return static_cast<int>(offsets_[u + 1] - offsets_[u]);
  }
  bool has_bit_matrix() const { return !bits_.empty(); }

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> Edges() const;
  Eigen::MatrixXd ToDense() const;

  // Induced subgraph on `nodes`, in the given order.
  AdjacencyMatrix Induced(std::span<const int> nodes) const;

  // y = A x.
  void Multiply(std::span<const double> x, std::span<double> y) const;

  friend bool operator==(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ &&
           a.neighbors_ == b.neighbors_;
  }

 private:
  void BuildBits();

  int n_ = 0;
  std::vector<int64_t> offsets_ = {0};
  std::vector<int> neighbors_;
  std::vector<uint64_t> bits_;
  int64_t words_per_row_ = 0;
};

// Throws AsymmetricMatrix, SelfLoopPresent or NonBinaryEntry naming the first
// offending (row, column) in row-major order. Non-square input is reported as
// InvalidArgument.
void Validate(const Eigen::MatrixXd& entries);

// Community assignment: one 0-based block id per node, with an explicit block
// count that may exceed the largest id in use (empty blocks are allowed).
class LabelVector {
 public:
  LabelVector() = default;
  // num_blocks defaults to max(label) + 1. Throws InvalidArgument on
  // negative ids or ids >= num_blocks.
  explicit LabelVector(std::vector<int> labels,
                       std::optional<int> num_blocks = std::nullopt);

  static LabelVector Constant(int n) {
    return LabelVector(std::vector<int>(n, 0), n > 0 ? 1 : 0);
  }

  int size() const { return static_cast<int>(labels_.size()); }
  int num_blocks() const { return num_blocks_; }
  int operator[](int i) const { return labels_[i]; }
  const std::vector<int>& values() const { return labels_; }

  std::vector<int> BlockSizes() const;
  std::vector<int> Members(int block) const;
  // Number of blocks with at least one member.
  int NumNonEmpty() const;
  // Relabels blocks in order of first appearance and drops empty ones.
  LabelVector Canonical() const;

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<int> labels_;
  int num_blocks_ = 0;
};

// K x K symmetric matrix of probabilities in [0, 1].
class BlockProbabilityMatrix {
 public:
  BlockProbabilityMatrix() = default;
  // Throws InvalidProbability (entry outside [0, 1] or non-finite) or
  // AsymmetricMatrix.
  explicit BlockProbabilityMatrix(Eigen::MatrixXd probs);

  // within on the diagonal, between elsewhere.
  static BlockProbabilityMatrix Planted(int k, double within, double between);

  int num_blocks() const { return static_cast<int>(probs_.rows()); }
  double operator()(int i, int j) const { return probs_(i, j); }
  const Eigen::MatrixXd& matrix() const { return probs_; }

 private:
  Eigen::MatrixXd probs_;
};

// Stochastic block model: labels, block matrix G and the sparsity scale rho.
// Edge probability between u and v is rho * G(g_u, g_v).
struct SbmParams {
  int n = 0;
  std::optional<LabelVector> labels;  // balanced round-robin when absent
  BlockProbabilityMatrix probs;
  double rho = 1.0;

  // Throws InvalidArgument / InvalidProbability when inconsistent.
  void Check() const;
  LabelVector ResolvedLabels() const;
};

// Principal submatrix on the nodes of `block`, preserving node order. Throws
// EmptyBlock if the block has no members or is out of range.
AdjacencyMatrix BlockSubmatrix(const AdjacencyMatrix& adjacency,
                               const LabelVector& labels, int block);

// delta_0 = max_i max_j (G(i,i) - G(i,j)).
double MaxBlockGap(const BlockProbabilityMatrix& g);

}  // namespace sbmk

#endif  // SBMK_GRAPH_H_
