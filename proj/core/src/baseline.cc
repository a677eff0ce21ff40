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

#include "sbmk/baseline.h"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sbmk/error.h"

namespace sbmk {

int NegativeInertia(Eigen::MatrixXd matrix) {
  const lapack_int n = static_cast<lapack_int>(matrix.rows());
  if (matrix.cols() != n) {
    throw Error(ErrorCode::kInvalidArgument, "matrix must be square");
  }
  if (n == 0) return 0;
  std::vector<lapack_int> ipiv(n);
  const lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n,
                                         matrix.data(), n, ipiv.data());
  if (info < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "dsytrf argument " + std::to_string(-info));
  }
  // info > 0 means an exactly zero pivot, which is neither negative nor a
  // failure for counting purposes.
  int negative = 0;
  for (lapack_int k = 0; k < n; ++k) {
    if (ipiv[k] > 0) {
      negative += matrix(k, k) < 0.0;
      continue;
    }
    const double a = matrix(k, k), b = matrix(k + 1, k), c = matrix(k + 1, k + 1);
    const double det = a * c - b * b;
    if (det < 0.0) {
      negative += 1;
    } else if (det > 0.0 && a + c < 0.0) {
      negative += 2;
    }
    ++k;
  }
  return negative;
}

BhmcResult Bhmc(const AdjacencyMatrix& adjacency, uint64_t seed, int k_max,
                double tau, const EigenOptions& opts) {
  if (k_max < 1) throw Error(ErrorCode::kInvalidArgument, "k_max must be >= 1");
  const int n = adjacency.size();
  BhmcResult out;
  double sum_d = 0.0, sum_d2 = 0.0;
  for (int v = 0; v < n; ++v) {
    const double d = adjacency.Degree(v);
    sum_d += d;
    sum_d2 += d * d;
  }
  if (sum_d > 0.0) {
    out.r = std::sqrt(std::max(sum_d2 / sum_d - 1.0, 0.0));
    Eigen::MatrixXd h = -out.r * adjacency.ToDense();
    for (int v = 0; v < n; ++v) {
      h(v, v) = out.r * out.r - 1.0 + adjacency.Degree(v);
    }
    out.negative_eigenvalues = NegativeInertia(std::move(h));
  }
  out.k_hat = std::clamp(out.negative_eigenvalues, 1, std::min(k_max, std::max(n, 1)));
  out.labels = RscCluster(adjacency, out.k_hat, tau, seed, opts);
  return out;
}

}  // namespace sbmk
