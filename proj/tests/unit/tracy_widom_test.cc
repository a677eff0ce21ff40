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

#include "oracles/tw1_oracle.h"
#include "sbmk/tracy_widom.h"
#include "unit/test_util.h"

namespace sbmk {
namespace {

TEST_SUITE("tracy_widom") {

TEST_CASE("known quantiles and moments") {
  CHECK(std::abs(Tw1Quantile(0.95) - 0.9793) < 1e-3);
  CHECK(std::abs(Tw1Quantile(0.99) - 2.0234) < 2e-3);

  // Mean and standard deviation from the table by the trapezoid rule on
  // the density.
  const auto& x = DefaultTw1Table().grid();
  const auto& f = DefaultTw1Table().cdf();
  double mean = 0.0, second = 0.0;
  for (size_t i = 0; i + 1 < x.size(); ++i) {
    const double mass = f[i + 1] - f[i];
    const double mid = 0.5 * (x[i] + x[i + 1]);
    mean += mid * mass;
    second += mid * mid * mass;
  }
  CHECK(std::abs(mean - (-1.2065)) < 2e-3);
  CHECK(std::abs(std::sqrt(second - mean * mean) - 1.2680) < 2e-3);
}

TEST_CASE("cdf and quantile are inverse and monotone") {
  CHECK(Tw1Cdf(-12.0) == 0.0);
  CHECK(Tw1Cdf(13.0) == 1.0);
  CHECK(Tw1Cdf(-10.0) < 1e-12);
  CHECK(Tw1Cdf(12.0) > 1.0 - 1e-9);
  double prev = 0.0;
  for (double s = -9.0; s < 11.0; s += 0.0137) {
    const double c = Tw1Cdf(s);
    CHECK(c >= prev);
    prev = c;
  }
  for (double p : {0.01, 0.1, 0.5, 0.9, 0.95, 0.999}) {
    CHECK(Tw1Cdf(Tw1Quantile(p)) == doctest::Approx(p).epsilon(1e-9));
  }
  CHECK_THROWS_CODE(Tw1Quantile(0.0), ErrorCode::kOutOfRangeProbability);
  CHECK_THROWS_CODE(Tw1Quantile(1.0), ErrorCode::kOutOfRangeProbability);
}

TEST_CASE("table matches the independent determinant oracle") {
  for (double s : {-6.0, -4.005, -2.5, -1.2065, 0.0, 0.9793, 2.345, 4.0}) {
    CHECK_MESSAGE(std::abs(Tw1Cdf(s) - oracle::Tw1Cdf(s)) < 1e-4, s);
  }
}

TEST_CASE("table parser rejects malformed input") {
  CHECK_THROWS_CODE(Tw1Table::FromCsv("x,cdf\n0,0.1\n1,0.05\n2,0.2\n"),
                    ErrorCode::kParseError);
  CHECK_THROWS_CODE(Tw1Table::FromCsv("x,cdf\n0,0.1\n1,0.2\n"), ErrorCode::kParseError);
  CHECK_THROWS_CODE(Tw1Table::FromCsv("x,cdf\n0,0.1\n1,abc\n2,0.3\n"),
                    ErrorCode::kParseError);
  const auto t = Tw1Table::FromCsv("# c\nx,cdf\n0,0\n1,0.5\n2,1\n");
  CHECK(t.Cdf(1.0) == doctest::Approx(0.5));
  CHECK(t.Quantile(0.5) == doctest::Approx(1.0));
}

}  // TEST_SUITE

}  // namespace
}  // namespace sbmk
