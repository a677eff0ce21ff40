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

#include "sbmk/tracy_widom.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "sbmk/error.h"

namespace sbmk {
namespace internal {
extern const char kTw1CsvData[];
}  // namespace internal

namespace {

bool ParseDouble(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Tw1Table Tw1Table::FromCsv(std::string_view csv) {
  Tw1Table t;
  size_t line_no = 0;
  while (!csv.empty()) {
    const size_t end = csv.find('\n');
    std::string_view line = csv.substr(0, end);
    csv.remove_prefix(end == std::string_view::npos ? csv.size() : end + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const size_t comma = line.find(',');
    double x = 0.0, f = 0.0;
    if (comma == std::string_view::npos ||
        !ParseDouble(line.substr(0, comma), x) ||
        !ParseDouble(line.substr(comma + 1), f)) {
      if (t.x_.empty()) continue;  // header row
      throw Error(ErrorCode::kParseError,
                  "TW1 table line " + std::to_string(line_no));
    }
    if (!t.x_.empty() && (x <= t.x_.back() || f < t.f_.back())) {
      throw Error(ErrorCode::kParseError,
                  "TW1 table not monotone at line " + std::to_string(line_no));
    }
    if (f < 0.0 || f > 1.0) {
      throw Error(ErrorCode::kParseError,
                  "TW1 cdf outside [0, 1] at line " + std::to_string(line_no));
    }
    t.x_.push_back(x);
    t.f_.push_back(f);
  }
  const size_t n = t.x_.size();
  if (n < 3) throw Error(ErrorCode::kParseError, "TW1 table too short");

  // Fritsch-Carlson slopes.
  std::vector<double> h(n - 1), delta(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = t.x_[i + 1] - t.x_[i];
    delta[i] = (t.f_[i + 1] - t.f_[i]) / h[i];
  }
  t.slope_.assign(n, 0.0);
  t.slope_[0] = delta[0];
  t.slope_[n - 1] = delta[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    t.slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  return t;
}

double Tw1Table::Cdf(double x) const {
  if (std::isnan(x)) return x;
  if (x <= x_.front()) return x == x_.front() ? f_.front() : 0.0;
  if (x >= x_.back()) return x == x_.back() ? f_.back() : 1.0;
  const size_t i = static_cast<size_t>(
      std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1);
  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double value = (2 * s3 - 3 * s2 + 1) * f_[i] +
                       (s3 - 2 * s2 + s) * h * slope_[i] +
                       (-2 * s3 + 3 * s2) * f_[i + 1] +
                       (s3 - s2) * h * slope_[i + 1];
  return std::clamp(value, 0.0, 1.0);
}

double Tw1Table::Quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::kOutOfRangeProbability,
                "p = " + std::to_string(p) + " must lie in (0, 1)");
  }
  if (p <= f_.front()) return x_.front();
  if (p >= f_.back()) return x_.back();
  // Bracket on the grid, then bisect the interpolant.
  const size_t i = static_cast<size_t>(
      std::lower_bound(f_.begin(), f_.end(), p) - f_.begin());
  double lo = x_[i - 1], hi = x_[i];
  for (int iter = 0; iter < 80 && hi - lo > 1e-14; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (Cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

const Tw1Table& DefaultTw1Table() {
  static const Tw1Table table = Tw1Table::FromCsv(internal::kTw1CsvData);
  return table;
}

}  // namespace sbmk
