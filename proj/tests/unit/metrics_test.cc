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

#include <cmath>

#include "oracles/brute_force.h"
#include "sbmk/metrics.h"
#include "unit/test_util.h"

namespace sbmk {
namespace {

using testing::RandomLabels;

TEST_SUITE("metrics") {

TEST_CASE("hand example") {
  const LabelVector t({0, 0, 1, 1});
  const LabelVector e({0, 1, 1, 1});
  // H(U) = ln 2, H(V) = -(1/4 ln 1/4 + 3/4 ln 3/4),
  // I = 1/4 ln 2 + 1/4 ln(2/3) * 1 + 1/2 ln(4/3).
  const double hu = std::log(2.0);
  const double hv = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
  const double mi = 0.25 * std::log(2.0) + 0.25 * std::log(2.0 / 3.0) +
                    0.5 * std::log(4.0 / 3.0);
  CHECK(Nmi(t, e) == doctest::Approx(mi / std::sqrt(hu * hv)).epsilon(1e-12));
  // Pairs: index 1, sums 2 and 3, expected 1, max 2.5.
  CHECK(std::abs(Ari(t, e)) < 1e-12);
}

TEST_CASE("identity, permutation and symmetry") {
  Rng rng(21, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = RandomLabels(30, 4, rng);
    const auto v = RandomLabels(30, 3, rng);
    std::vector<int> renamed(30);
    for (int i = 0; i < 30; ++i) renamed[i] = 3 - u[i];
    const LabelVector w(renamed);
    CHECK(Nmi(u, w) == doctest::Approx(1.0));
    CHECK(Ari(u, w) == doctest::Approx(1.0));
    CHECK(Nmi(u, v) == doctest::Approx(Nmi(v, u)).epsilon(1e-14));
    CHECK(Ari(u, v) == doctest::Approx(Ari(v, u)).epsilon(1e-14));
    CHECK(Nmi(w, v) == doctest::Approx(Nmi(u, v)).epsilon(1e-14));
    CHECK(Nmi(u, v) >= 0.0);
    CHECK(Nmi(u, v) <= 1.0);
    CHECK(Ari(u, v) <= 1.0);
  }
}

TEST_CASE("exhaustive small instances match the oracles") {
  Rng rng(8, 8);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.Below(11));
    const auto u = RandomLabels(n, 1 + static_cast<int>(rng.Below(4)), rng);
    const auto v = RandomLabels(n, 1 + static_cast<int>(rng.Below(4)), rng);
    CHECK(std::abs(Nmi(u, v) - oracle::Nmi(u, v)) <= 1e-12);
    CHECK(std::abs(Ari(u, v) - oracle::Ari(u, v)) <= 1e-12);
  }
}

TEST_CASE("degenerate conventions") {
  const auto one = LabelVector::Constant(5);
  CHECK(Nmi(one, one) == 1.0);
  CHECK(Ari(one, one) == 1.0);
  const LabelVector split({0, 0, 1, 1, 1});
  CHECK(Nmi(one, split) == 0.0);
  CHECK(Nmi(split, one) == 0.0);
  const LabelVector singletons({0, 1, 2, 3, 4});
  CHECK(Ari(singletons, singletons) == 1.0);
  CHECK_THROWS_CODE(Nmi(one, LabelVector::Constant(4)), ErrorCode::kLengthMismatch);
  CHECK_THROWS_CODE(Ari(one, LabelVector::Constant(4)), ErrorCode::kLengthMismatch);
}

TEST_CASE("random labels have ARI near zero") {
  const auto truth = BalancedLabels(1000, 2);
  Rng rng(5, 5);
  double sum = 0.0;
  for (int s = 0; s < 100; ++s) sum += Ari(truth, RandomLabels(1000, 2, rng));
  CHECK(std::abs(sum / 100) <= 0.05);
}

}  // TEST_SUITE

}  // namespace
}  // namespace sbmk
