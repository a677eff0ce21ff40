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

#include "oracles/tw1_oracle.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/airy.hpp>

namespace sbmk::oracle {
namespace {

struct Rule {
  std::vector<double> x;  // on [-1, 1]
  std::vector<double> w;
};

// Golub-Welsch: nodes are eigenvalues of the Legendre Jacobi matrix, weights
// 2 * (first eigenvector component)^2.
Rule GaussLegendre(int m) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  Rule r;
  for (int i = 0; i < m; ++i) {
    r.x.push_back(es.eigenvalues()(i));
    const double v = es.eigenvectors()(0, i);
    r.w.push_back(2.0 * v * v);
  }
  return r;
}

const Rule& CachedRule(int m) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, GaussLegendre(m)).first;
  return it->second;
}

}  // namespace

double Tw1Cdf(double s, int nodes) {
  if (s > 16.0) return 1.0;
  // Ai(t) is negligible beyond t ~ 16, so truncate (0, inf) at the point
  // where x + y + s stays below that for y = 0.
  const double upper = std::max(16.0 - s, 4.0);
  const Rule& rule = CachedRule(nodes);
  const int m = nodes;
  std::vector<double> x(m), sw(m);
  for (int i = 0; i < m; ++i) {
    x[i] = 0.5 * upper * (rule.x[i] + 1.0);
    sw[i] = std::sqrt(0.5 * upper * rule.w[i]);
  }
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double k = boost::math::airy_ai(x[i] + x[j] + s);
      a(i, j) = a(j, i) = (i == j ? 1.0 : 0.0) - sw[i] * k * sw[j];
    }
  }
  return std::clamp(a.partialPivLu().determinant(), 0.0, 1.0);
}

double Tw1Quantile(double p, int nodes) {
  double lo = -8.0, hi = 8.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (Tw1Cdf(mid, nodes) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace sbmk::oracle
