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

#include "sbmk/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sbmk/error.h"

namespace sbmk {
namespace {

struct Contingency {
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> rows;
  std::map<int, double> cols;
  double n = 0.0;
};

Contingency Tabulate(const LabelVector& u, const LabelVector& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(u.size()) + " vs " + std::to_string(v.size()) +
                    " labels");
  }
  if (u.size() == 0) throw Error(ErrorCode::kInvalidArgument, "empty labels");
  Contingency t;
  for (int i = 0; i < u.size(); ++i) {
    t.joint[{u[i], v[i]}] += 1.0;
    t.rows[u[i]] += 1.0;
    t.cols[v[i]] += 1.0;
  }
  t.n = u.size();
  return t;
}

double Entropy(const std::map<int, double>& counts, double n) {
  double h = 0.0;
  for (const auto& [label, c] : counts) h -= c / n * std::log(c / n);
  return h;
}

double Choose2(double x) { return 0.5 * x * (x - 1.0); }

}  // namespace

double Nmi(const LabelVector& truth, const LabelVector& estimate) {
  const Contingency t = Tabulate(truth, estimate);
  const double hu = Entropy(t.rows, t.n);
  const double hv = Entropy(t.cols, t.n);
  if (t.rows.size() == 1 && t.cols.size() == 1) return 1.0;
  if (t.rows.size() == 1 || t.cols.size() == 1) return 0.0;
  double mi = 0.0;
  for (const auto& [key, c] : t.joint) {
    mi += c / t.n *
          std::log(c * t.n / (t.rows.at(key.first) * t.cols.at(key.second)));
  }
  // Guard the tiny negative or >1 values rounding can produce.
  return std::clamp(mi / std::sqrt(hu * hv), 0.0, 1.0);
}

double Ari(const LabelVector& truth, const LabelVector& estimate) {
  const Contingency t = Tabulate(truth, estimate);
  if (t.n < 2) return 1.0;
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, c] : t.joint) index += Choose2(c);
  for (const auto& [label, c] : t.rows) sum_rows += Choose2(c);
  for (const auto& [label, c] : t.cols) sum_cols += Choose2(c);
  const double expected = sum_rows * sum_cols / Choose2(t.n);
  const double max_index = 0.5 * (sum_rows + sum_cols);
  const double denom = max_index - expected;
  if (denom == 0.0) {
    const bool same = t.joint.size() == t.rows.size() &&
                      t.joint.size() == t.cols.size();
    return same ? 1.0 : 0.0;
  }
  return (index - expected) / denom;
}

}  // namespace sbmk
