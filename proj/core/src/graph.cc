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

#include "sbmk/graph.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbmk/error.h"

namespace sbmk {
namespace {

std::string Cell(int64_t i, int64_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

AdjacencyMatrix AdjacencyMatrix::FromEdges(int n, std::span<const Edge> edges) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative node count");
  std::vector<Edge> directed;
  directed.reserve(2 * edges.size());
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::kNodeIndexOutOfRange,
                  "edge " + Cell(u, v) + " outside 0.." + std::to_string(n - 1));
    }
    if (u == v) {
      throw Error(ErrorCode::kSelfLoopPresent, "self-loop at node " +
                                                   std::to_string(u));
    }
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  AdjacencyMatrix a;
  a.n_ = n;
  a.offsets_.assign(static_cast<size_t>(n) + 1, 0);
  a.neighbors_.reserve(directed.size());
  for (const auto& [u, v] : directed) {
    ++a.offsets_[u + 1];
    a.neighbors_.push_back(v);
  }
  for (int i = 0; i < n; ++i) a.offsets_[i + 1] += a.offsets_[i];
  a.BuildBits();
  return a;
}

AdjacencyMatrix AdjacencyMatrix::FromDense(const Eigen::MatrixXd& entries) {
  Validate(entries);
  const int n = static_cast<int>(entries.rows());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (entries(i, j) == 1.0) edges.emplace_back(i, j);
    }
  }
  return FromEdges(n, edges);
}

void AdjacencyMatrix::BuildBits() {
  bits_.clear();
  words_per_row_ = 0;
  if (n_ == 0 || n_ > kDenseLimit) return;
  words_per_row_ = (n_ + 63) / 64;
  bits_.assign(static_cast<size_t>(words_per_row_) * n_, 0);
  for (int u = 0; u < n_; ++u) {
    for (int v : Neighbors(u)) {
      bits_[u * words_per_row_ + v / 64] |= uint64_t{1} << (v % 64);
    }
  }
}

bool AdjacencyMatrix::HasEdge(int u, int v) const {
  if (!bits_.empty()) {
    return (bits_[u * words_per_row_ + v / 64] >> (v % 64)) & 1;
  }
  auto row = Neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> AdjacencyMatrix::Edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<size_t>(num_edges()));
  for (int u = 0; u < n_; ++u) {
    for (int v : Neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Eigen::MatrixXd AdjacencyMatrix::ToDense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
  for (int u = 0; u < n_; ++u) {
    for (int v : Neighbors(u)) m(u, v) = 1.0;
  }
  return m;
}

AdjacencyMatrix AdjacencyMatrix::Induced(std::span<const int> nodes) const {
  std::vector<int> position(n_, -1);
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 0 || nodes[i] >= n_) {
      throw Error(ErrorCode::kNodeIndexOutOfRange,
                  "node " + std::to_string(nodes[i]));
    }
    position[nodes[i]] = static_cast<int>(i);
  }
  AdjacencyMatrix sub;
  sub.n_ = static_cast<int>(nodes.size());
  sub.offsets_.assign(nodes.size() + 1, 0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (int v : Neighbors(nodes[i])) {
      if (position[v] >= 0) sub.neighbors_.push_back(position[v]);
    }
    // Reordering can unsort a row.
    std::sort(sub.neighbors_.begin() + sub.offsets_[i], sub.neighbors_.end());
    sub.offsets_[i + 1] = static_cast<int64_t>(sub.neighbors_.size());
  }
  sub.BuildBits();
  return sub;
}

void AdjacencyMatrix::Multiply(std::span<const double> x,
                               std::span<double> y) const {
  for (int u = 0; u < n_; ++u) {
    double acc = 0.0;
    for (int64_t e = offsets_[u]; e < offsets_[u + 1]; ++e) {
      acc += x[neighbors_[e]];
    }
    y[u] = acc;
  }
}

void Validate(const Eigen::MatrixXd& entries) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "adjacency matrix is not square");
  }
  const int64_t n = entries.rows();
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < n; ++j) {
      const double x = entries(i, j);
      if (x != 0.0 && x != 1.0) {
        throw Error(ErrorCode::kNonBinaryEntry, "entry " + Cell(i, j));
      }
      if (i == j && x != 0.0) {
        throw Error(ErrorCode::kSelfLoopPresent, "entry " + Cell(i, j));
      }
      if (x != entries(j, i)) {
        throw Error(ErrorCode::kAsymmetricMatrix, "entry " + Cell(i, j));
      }
    }
  }
}

LabelVector::LabelVector(std::vector<int> labels, std::optional<int> num_blocks)
    : labels_(std::move(labels)) {
  int max_label = -1;
  for (int g : labels_) {
    if (g < 0) throw Error(ErrorCode::kInvalidArgument, "negative label");
    max_label = std::max(max_label, g);
  }
  num_blocks_ = num_blocks.value_or(max_label + 1);
  if (max_label >= num_blocks_) {
    throw Error(ErrorCode::kInvalidArgument,
                "label " + std::to_string(max_label) + " >= block count " +
                    std::to_string(num_blocks_));
  }
}

std::vector<int> LabelVector::BlockSizes() const {
  std::vector<int> sizes(num_blocks_, 0);
  for (int g : labels_) ++sizes[g];
  return sizes;
}

std::vector<int> LabelVector::Members(int block) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (labels_[i] == block) out.push_back(i);
  }
  return out;
}

int LabelVector::NumNonEmpty() const {
  const auto sizes = BlockSizes();
  return static_cast<int>(
      std::count_if(sizes.begin(), sizes.end(), [](int s) { return s > 0; }));
}

LabelVector LabelVector::Canonical() const {
  std::vector<int> remap(num_blocks_, -1);
  std::vector<int> out(labels_.size());
  int next = 0;
  for (size_t i = 0; i < labels_.size(); ++i) {
    int& r = remap[labels_[i]];
    if (r < 0) r = next++;
    out[i] = r;
  }
  return LabelVector(std::move(out), next);
}

BlockProbabilityMatrix::BlockProbabilityMatrix(Eigen::MatrixXd probs)
    : probs_(std::move(probs)) {
  if (probs_.rows() != probs_.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "block matrix is not square");
  }
  for (int64_t i = 0; i < probs_.rows(); ++i) {
    for (int64_t j = 0; j < probs_.cols(); ++j) {
      const double p = probs_(i, j);
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw Error(ErrorCode::kInvalidProbability,
                    "G" + Cell(i, j) + " = " + std::to_string(p));
      }
      if (p != probs_(j, i)) {
        throw Error(ErrorCode::kAsymmetricMatrix, "G" + Cell(i, j));
      }
    }
  }
}

BlockProbabilityMatrix BlockProbabilityMatrix::Planted(int k, double within,
                                                       double between) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(k, k, between);
  g.diagonal().setConstant(within);
  return BlockProbabilityMatrix(std::move(g));
}

void SbmParams::Check() const {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw Error(ErrorCode::kInvalidProbability, "rho must lie in (0, 1]");
  }
  if (probs.num_blocks() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "empty block matrix");
  }
  if (labels) {
    if (labels->size() != n) {
      throw Error(ErrorCode::kLengthMismatch, "labels length != n");
    }
    if (labels->num_blocks() > probs.num_blocks()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "labels use more blocks than the block matrix has");
    }
  } else if (probs.num_blocks() > n) {
    throw Error(ErrorCode::kTooManyBlocks, "K > n");
  }
}

AdjacencyMatrix BlockSubmatrix(const AdjacencyMatrix& adjacency,
                               const LabelVector& labels, int block) {
  if (labels.size() != adjacency.size()) {
    throw Error(ErrorCode::kLengthMismatch, "labels length != node count");
  }
  if (block < 0 || block >= labels.num_blocks()) {
    throw Error(ErrorCode::kEmptyBlock,
                "block " + std::to_string(block) + " not present");
  }
  const auto members = labels.Members(block);
  if (members.empty()) {
    throw Error(ErrorCode::kEmptyBlock,
                "block " + std::to_string(block) + " has no members");
  }
  return adjacency.Induced(members);
}

double MaxBlockGap(const BlockProbabilityMatrix& g) {
  double gap = 0.0;
  for (int i = 0; i < g.num_blocks(); ++i) {
    for (int j = 0; j < g.num_blocks(); ++j) {
      gap = std::max(gap, g(i, i) - g(i, j));
    }
  }
  return gap;
}

}  // namespace sbmk
