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

#include "sbmk/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "sbmk/error.h"

namespace sbmk {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  s = Trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const size_t comma = line.find(',');
    out.push_back(Trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

std::string FormatDouble(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return in;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  return out;
}

void CheckWritten(std::ostream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write to '" + path + "' failed");
}

std::string LineError(size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

}  // namespace

AdjacencyMatrix ParseEdgeList(std::istream& in, std::optional<int> num_nodes) {
  std::vector<Edge> edges;
  std::optional<int> header_nodes;
  int max_index = 0;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = Trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      const auto fields = SplitWhitespace(view.substr(1));
      int value = 0;
      if (fields.size() == 2 && fields[0] == "nodes" &&
          ParseNumber(fields[1], value)) {
        if (value < 0) {
          throw Error(ErrorCode::kParseError, LineError(line_no, "negative node count"));
        }
        header_nodes = value;
      }
      continue;
    }
    const auto fields = SplitWhitespace(view);
    int64_t u = 0, v = 0;
    if (fields.size() != 2 || !ParseNumber(fields[0], u) ||
        !ParseNumber(fields[1], v)) {
      throw Error(ErrorCode::kParseError,
                  LineError(line_no, "expected two integers, got '" + line + "'"));
    }
    if (u < 1 || v < 1 || u > INT32_MAX || v > INT32_MAX) {
      throw Error(ErrorCode::kNodeIndexOutOfRange,
                  LineError(line_no, "node ids are 1-based"));
    }
    if (u == v) {
      throw Error(ErrorCode::kSelfLoopPresent,
                  LineError(line_no, "self-loop at node " + std::to_string(u)));
    }
    max_index = std::max({max_index, static_cast<int>(u), static_cast<int>(v)});
    edges.push_back({static_cast<int>(u) - 1, static_cast<int>(v) - 1});
  }
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed");
  const int n = num_nodes.value_or(header_nodes.value_or(max_index));
  if (max_index > n) {
    throw Error(ErrorCode::kNodeIndexOutOfRange,
                "node " + std::to_string(max_index) + " exceeds node count " +
                    std::to_string(n));
  }
  return AdjacencyMatrix::FromEdges(n, edges);
}

AdjacencyMatrix ReadEdgeList(const std::string& path,
                             std::optional<int> num_nodes) {
  std::ifstream in = OpenIn(path);
  return ParseEdgeList(in, num_nodes);
}

void WriteEdgeList(const AdjacencyMatrix& adjacency, std::ostream& out) {
  out << "# nodes " << adjacency.size() << '\n';
  for (const auto& [u, v] : adjacency.Edges()) {
    out << u + 1 << ' ' << v + 1 << '\n';
  }
}

void WriteEdgeList(const AdjacencyMatrix& adjacency, const std::string& path) {
  std::ofstream out = OpenOut(path);
  WriteEdgeList(adjacency, out);
  CheckWritten(out, path);
}

DenseMatrix ParseDenseMatrix(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<size_t> line_numbers;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> fields;
    for (auto f : SplitCommas(line)) fields.emplace_back(f);
    rows.push_back(std::move(fields));
    line_numbers.push_back(line_no);
  }
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed");
  DenseMatrix out;
  if (rows.empty()) return out;

  auto numeric = [](const std::string& s) {
    double x = 0.0;
    return ParseNumber(std::string_view(s), x);
  };
  size_t first = 0;
  if (!std::all_of(rows[0].begin(), rows[0].end(), numeric)) first = 1;
  bool names = first < rows.size();
  for (size_t r = first; r < rows.size() && names; ++r) {
    names = !numeric(rows[r][0]);
  }
  const size_t width = rows[first < rows.size() ? first : 0].size();
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw Error(ErrorCode::kRaggedRows,
                  LineError(line_numbers[r],
                            std::to_string(rows[r].size()) + " fields, expected " +
                                std::to_string(width)));
    }
  }
  const size_t skip = names ? 1 : 0;
  if (first == 1) {
    for (size_t c = skip; c < width; ++c) out.col_names.push_back(rows[0][c]);
  }
  out.values.resize(static_cast<Eigen::Index>(rows.size() - first),
                    static_cast<Eigen::Index>(width - skip));
  for (size_t r = first; r < rows.size(); ++r) {
    if (names) out.row_names.push_back(rows[r][0]);
    for (size_t c = skip; c < width; ++c) {
      double x = 0.0;
      if (!ParseNumber(std::string_view(rows[r][c]), x)) {
        throw Error(ErrorCode::kParseError,
                    LineError(line_numbers[r], "non-numeric field '" + rows[r][c] + "'"));
      }
      out.values(static_cast<Eigen::Index>(r - first),
                 static_cast<Eigen::Index>(c - skip)) = x;
    }
  }
  return out;
}

DenseMatrix ReadDenseMatrix(const std::string& path) {
  std::ifstream in = OpenIn(path);
  return ParseDenseMatrix(in);
}

void WriteDenseMatrix(const DenseMatrix& matrix, std::ostream& out) {
  const bool names = !matrix.row_names.empty();
  if (!matrix.col_names.empty()) {
    if (names) out << "name,";
    for (size_t c = 0; c < matrix.col_names.size(); ++c) {
      out << (c ? "," : "") << matrix.col_names[c];
    }
    out << '\n';
  }
  for (Eigen::Index r = 0; r < matrix.values.rows(); ++r) {
    if (names) out << matrix.row_names[r] << ',';
    for (Eigen::Index c = 0; c < matrix.values.cols(); ++c) {
      out << (c ? "," : "") << FormatDouble(matrix.values(r, c));
    }
    out << '\n';
  }
}

void WriteDenseMatrix(const DenseMatrix& matrix, const std::string& path) {
  std::ofstream out = OpenOut(path);
  WriteDenseMatrix(matrix, out);
  CheckWritten(out, path);
}

LabelVector ParseLabels(std::istream& in) {
  std::vector<int64_t> raw;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    int64_t value = 0;
    if (!ParseNumber(view, value)) {
      if (raw.empty() && line_no == 1) continue;  // header
      throw Error(ErrorCode::kParseError,
                  LineError(line_no, "expected an integer label"));
    }
    raw.push_back(value);
  }
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed");
  std::map<int64_t, int> ids;
  for (int64_t v : raw) ids.emplace(v, 0);
  int next = 0;
  for (auto& [value, id] : ids) id = next++;
  std::vector<int> labels;
  labels.reserve(raw.size());
  for (int64_t v : raw) labels.push_back(ids[v]);
  return LabelVector(std::move(labels), next);
}

LabelVector ReadLabels(const std::string& path) {
  std::ifstream in = OpenIn(path);
  return ParseLabels(in);
}

void WriteLabels(const LabelVector& labels, std::ostream& out) {
  out << "label\n";
  for (int v : labels.values()) out << v + 1 << '\n';
}

void WriteLabels(const LabelVector& labels, const std::string& path) {
  std::ofstream out = OpenOut(path);
  WriteLabels(labels, out);
  CheckWritten(out, path);
}

double NearestRankQuantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "no values");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "quantile must lie in [0, 1]");
  }
  const size_t m = values.size();
  size_t rank = static_cast<size_t>(std::ceil(q * static_cast<double>(m)));
  rank = std::clamp<size_t>(rank, 1, m);
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[rank - 1];
}

ExpressionGraph ExpressionToAdjacency(const Eigen::MatrixXd& counts,
                                      const ExpressionOptions& options) {
  for (double q : {options.variance_quantile, options.edge_quantile}) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "quantile must lie in [0, 1]");
    }
  }
  if (!counts.allFinite() || (counts.array() < 0.0).any()) {
    throw Error(ErrorCode::kInvalidArgument, "counts must be finite and >= 0");
  }
  ExpressionGraph out;
  for (Eigen::Index c = 0; c < counts.cols(); ++c) {
    const double total = counts.col(c).sum();
    if (options.min_total_count && total < *options.min_total_count) continue;
    if (options.max_total_count && total > *options.max_total_count) continue;
    out.kept_cells.push_back(static_cast<int>(c));
  }
  const int cells = static_cast<int>(out.kept_cells.size());
  if (cells < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 2 cells");
  }
  if (counts.rows() < 2) {
    throw Error(ErrorCode::kTooFewGenes, "need at least 2 genes");
  }
  const Eigen::MatrixXd kept = counts(Eigen::all, out.kept_cells);

  std::vector<double> variances(kept.rows());
  for (Eigen::Index g = 0; g < kept.rows(); ++g) {
    const double mean = kept.row(g).mean();
    variances[g] = (kept.row(g).array() - mean).square().sum() / (cells - 1);
  }
  const double variance_cut =
      NearestRankQuantile(variances, options.variance_quantile);
  for (Eigen::Index g = 0; g < kept.rows(); ++g) {
    if (variances[g] >= variance_cut) out.kept_genes.push_back(static_cast<int>(g));
  }
  if (out.kept_genes.size() < 2) {
    throw Error(ErrorCode::kTooFewGenes,
                std::to_string(out.kept_genes.size()) + " genes survive filtering");
  }

  Eigen::MatrixXd z =
      (1.0 + kept(out.kept_genes, Eigen::all).array() / 10000.0).log() /
      std::log(2.0);
  for (int c = 0; c < cells; ++c) {
    z.col(c).array() -= z.col(c).mean();
    const double norm = z.col(c).norm();
    if (!(norm > 0.0)) {
      throw Error(ErrorCode::kDegenerateCell,
                  "cell " + std::to_string(out.kept_cells[c] + 1) +
                      " has zero variance");
    }
    z.col(c) /= norm;
  }
  Eigen::MatrixXd corr(cells, cells);
  corr.triangularView<Eigen::Upper>() = z.transpose() * z;

  std::vector<double> upper;
  upper.reserve(static_cast<size_t>(cells) * (cells - 1) / 2);
  for (int j = 1; j < cells; ++j) {
    for (int i = 0; i < j; ++i) upper.push_back(corr(i, j));
  }
  out.edge_cutoff = NearestRankQuantile(upper, options.edge_quantile);
  std::vector<Edge> edges;
  for (int j = 1; j < cells; ++j) {
    for (int i = 0; i < j; ++i) {
      if (corr(i, j) > out.edge_cutoff) edges.push_back({i, j});
    }
  }
  out.adjacency = AdjacencyMatrix::FromEdges(cells, edges);
  return out;
}

}  // namespace sbmk
