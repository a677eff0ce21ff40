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
#include <set>

#include "sbmk/random.h"
#include "unit/test_util.h"

namespace sbmk {
namespace {

TEST_SUITE("random") {

// Known-answer vector of the Random123 reference implementation:
// philox4x32-10 with counter {0,0,0,0} and key {0,0}.
TEST_CASE("philox known answer") {
  Rng rng(0, 0);
  const uint64_t a = rng();
  const uint64_t b = rng();
  CHECK(static_cast<uint32_t>(a) == 0x6627e8d5u);
  CHECK(static_cast<uint32_t>(a >> 32) == 0xe169c58du);
  CHECK(static_cast<uint32_t>(b) == 0xbc57ac4cu);
  CHECK(static_cast<uint32_t>(b >> 32) == 0x9b00dbd8u);
}

TEST_CASE("streams and seeds are reproducible and distinct") {
  Rng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::set<uint64_t> firsts;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a();
    CHECK(x == b());
    firsts.insert(x);
  }
  CHECK(Rng(42, 7)() != c());
  CHECK(Rng(42, 7)() != d());
  CHECK(firsts.size() == 100);
}

TEST_CASE("uniform moments") {
  Rng rng(5);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.Uniform();
    CHECK_MESSAGE((u >= 0.0 && u < 1.0), u);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sum2 / n - mean * mean - 1.0 / 12.0) < 2e-3);
}

TEST_CASE("bounded integers are unbiased") {
  Rng rng(9);
  std::vector<int> counts(6, 0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++counts[rng.Below(6)];
  for (int c : counts) CHECK(std::abs(c - n / 6) < 4.0 * std::sqrt(n / 6.0));
  CHECK(rng.Below(1) == 0);
}

TEST_CASE("mix stream separates pairs") {
  std::set<uint64_t> seen;
  for (uint64_t a = 0; a < 50; ++a) {
    for (uint64_t b = 0; b < 50; ++b) seen.insert(MixStream(a, b));
  }
  CHECK(seen.size() == 2500);
  CHECK(MixStream(1, 2) != MixStream(2, 1));
}

}  // TEST_SUITE

}  // namespace
}  // namespace sbmk
