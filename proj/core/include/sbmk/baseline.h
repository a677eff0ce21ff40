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

// Bethe-Hessian community count (BHMC), used as a comparison baseline.
//
// K is the number of negative eigenvalues of H(r) = (r^2 - 1) I - r A + D
// with r = sqrt(sum d^2 / sum d - 1). The count comes from the inertia of an
// LDL^T factorization, so no eigenvectors are needed. Nodes are then
// clustered by regularized spectral clustering at that K.

#ifndef SBMK_BASELINE_H_
#define SBMK_BASELINE_H_

#include <cstdint>

#include "sbmk/graph.h"
#include "sbmk/spectral.h"

namespace sbmk {

struct BhmcResult {
  int k_hat = 1;
  double r = 0.0;
  int negative_eigenvalues = 0;
  LabelVector labels;
};

// Negative eigenvalue count of the dense symmetric matrix.
int NegativeInertia(Eigen::MatrixXd matrix);

BhmcResult Bhmc(const AdjacencyMatrix& adjacency, uint64_t seed = 0,
                int k_max = 100, double tau = 0.1,
                const EigenOptions& opts = {});

}  // namespace sbmk

#endif  // SBMK_BASELINE_H_
