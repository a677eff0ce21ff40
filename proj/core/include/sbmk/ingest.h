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

// File formats and the expression-matrix to graph pipeline.
//
// Edge lists are whitespace-separated 1-based "u v" lines. Lines starting
// with '#' are comments, except "# nodes N", which fixes the node count
// (otherwise it is the largest index seen). Label files hold one 1-based
// label per line after an optional non-numeric header.

#ifndef SBMK_INGEST_H_
#define SBMK_INGEST_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sbmk/graph.h"

namespace sbmk {

// Throws ParseError (with the line number), SelfLoopPresent,
// NodeIndexOutOfRange, or IoError.
AdjacencyMatrix ParseEdgeList(std::istream& in,
                              std::optional<int> num_nodes = std::nullopt);
AdjacencyMatrix ReadEdgeList(const std::string& path,
                             std::optional<int> num_nodes = std::nullopt);
void WriteEdgeList(const AdjacencyMatrix& adjacency, std::ostream& out);
void WriteEdgeList(const AdjacencyMatrix& adjacency, const std::string& path);

struct DenseMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> row_names;  // empty unless a name column was read
  std::vector<std::string> col_names;  // empty unless a header row was read
};

// Comma-separated values. A first row with any non-numeric field is a
// header; a first column that is non-numeric on every data row holds row
// names. Throws ParseError, RaggedRows or IoError.
DenseMatrix ParseDenseMatrix(std::istream& in);
DenseMatrix ReadDenseMatrix(const std::string& path);
void WriteDenseMatrix(const DenseMatrix& matrix, std::ostream& out);
void WriteDenseMatrix(const DenseMatrix& matrix, const std::string& path);

// Labels are mapped to 0-based ids in increasing order of their values.
LabelVector ParseLabels(std::istream& in);
LabelVector ReadLabels(const std::string& path);
// Writes a "label" header and 1-based ids.
void WriteLabels(const LabelVector& labels, std::ostream& out);
void WriteLabels(const LabelVector& labels, const std::string& path);

struct ExpressionOptions {
  double variance_quantile = 0.5;
  double edge_quantile = 0.95;
  // Cells whose total count falls outside [min, max] are dropped first.
  std::optional<double> min_total_count;
  std::optional<double> max_total_count;
};

struct ExpressionGraph {
  AdjacencyMatrix adjacency;
  std::vector<int> kept_cells;  // column indices of the input
  std::vector<int> kept_genes;  // row indices of the input
  double edge_cutoff = 0.0;
};

// Nearest-rank quantile: the ceil(q m)-th smallest of m values (at least the
// first). Throws InvalidArgument on empty input or q outside [0, 1].
double NearestRankQuantile(std::vector<double> values, double q);

// genes x cells counts -> cell graph. Keeps genes whose count variance is at
// least the variance_quantile of gene variances, maps x to log2(1 + x/1e4),
// and joins cells whose Pearson correlation exceeds the edge_quantile of the
// off-diagonal correlations. Throws DegenerateCell, TooFewGenes or
// InvalidArgument.
ExpressionGraph ExpressionToAdjacency(const Eigen::MatrixXd& counts,
                                      const ExpressionOptions& options = {});

}  // namespace sbmk

#endif  // SBMK_INGEST_H_
