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

// Direct, unoptimized evaluations of the block-matrix estimate and the
// clustering metrics, for exhaustive comparison on small instances.

#ifndef SBMK_TESTS_ORACLES_BRUTE_FORCE_H_
#define SBMK_TESTS_ORACLES_BRUTE_FORCE_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <Eigen/Dense>

#include "sbmk/graph.h"

namespace sbmk::oracle {

// Counts every unordered node pair once and tallies edges per block pair.
inline Eigen::MatrixXd PairEnumerationBlockMatrix(const AdjacencyMatrix& a,
                                                  const LabelVector& g) {
  const int k = g.num_blocks();
  Eigen::MatrixXd edges = Eigen::MatrixXd::Zero(k, k);
  Eigen::MatrixXd pairs = Eigen::MatrixXd::Zero(k, k);
  const Eigen::MatrixXd dense = a.ToDense();
  for (int s = 0; s < a.size(); ++s) {
    for (int t = s + 1; t < a.size(); ++t) {
      const int x = std::min(g[s], g[t]), y = std::max(g[s], g[t]);
      pairs(x, y) += 1;
      edges(x, y) += dense(s, t);
    }
  }
  Eigen::MatrixXd out(k, k);
  for (int x = 0; x < k; ++x) {
    for (int y = x; y < k; ++y) {
      out(x, y) = out(y, x) =
          pairs(x, y) > 0 ? edges(x, y) / pairs(x, y)
                          : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

// Entropies and mutual information from empirical frequencies, natural logs.
inline double Nmi(const LabelVector& u, const LabelVector& v) {
  const double n = u.size();
  std::map<int, double> cu, cv;
  std::map<std::pair<int, int>, double> joint;
  for (int i = 0; i < u.size(); ++i) {
    cu[u[i]] += 1;
    cv[v[i]] += 1;
    joint[{u[i], v[i]}] += 1;
  }
  auto entropy = [n](const std::map<int, double>& counts) {
    double h = 0.0;
    for (const auto& [key, c] : counts) h -= c / n * std::log(c / n);
    return h;
  };
  if (cu.size() == 1 && cv.size() == 1) return 1.0;
  if (cu.size() == 1 || cv.size() == 1) return 0.0;
  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    mi += c / n * std::log(c * n / (cu[key.first] * cv[key.second]));
  }
  return mi / std::sqrt(entropy(cu) * entropy(cv));
}

// Hubert-Arabie adjusted Rand index from the contingency table.
inline double Ari(const LabelVector& u, const LabelVector& v) {
  const int n = u.size();
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> a, b;
  for (int i = 0; i < n; ++i) {
    joint[{u[i], v[i]}] += 1;
    a[u[i]] += 1;
    b[v[i]] += 1;
  }
  auto c2 = [](double x) { return x * (x - 1) / 2; };
  double index = 0, sa = 0, sb = 0;
  for (const auto& [k, c] : joint) index += c2(c);
  for (const auto& [k, c] : a) sa += c2(c);
  for (const auto& [k, c] : b) sb += c2(c);
  const double expected = n < 2 ? 0.0 : sa * sb / c2(n);
  const double max_index = 0.5 * (sa + sb);
  if (max_index == expected) return u.Canonical() == v.Canonical() ? 1.0 : 0.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace sbmk::oracle

#endif  // SBMK_TESTS_ORACLES_BRUTE_FORCE_H_
