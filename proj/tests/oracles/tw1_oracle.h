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

// Reference Tracy-Widom (beta = 1) CDF computed from scratch, independent of
// the shipped table: F1(s) = det(I - K_s) on L^2(0, inf) with
// K_s(x, y) = Ai(x + y + s), discretized by Gauss-Legendre Nystrom.

#ifndef SBMK_TESTS_ORACLES_TW1_ORACLE_H_
#define SBMK_TESTS_ORACLES_TW1_ORACLE_H_

namespace sbmk::oracle {

double Tw1Cdf(double s, int nodes = 120);

// Bisection on Tw1Cdf.
double Tw1Quantile(double p, int nodes = 120);

}  // namespace sbmk::oracle

#endif  // SBMK_TESTS_ORACLES_TW1_ORACLE_H_
