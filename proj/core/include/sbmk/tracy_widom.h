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

// Tracy-Widom (beta = 1) distribution from a precomputed CDF table.
//
// The table (core/data/tw1_cdf.csv) holds F1 on a 0.01 grid over [-10, 12],
// computed as a Fredholm determinant of the Airy kernel by
// tools/gen_tw1_table.py. Lookups use monotone cubic (Fritsch-Carlson)
// interpolation.

#ifndef SBMK_TRACY_WIDOM_H_
#define SBMK_TRACY_WIDOM_H_

#include <string_view>
#include <vector>

namespace sbmk {

class Tw1Table {
 public:
  // Parses "x,cdf" rows; '#' lines and a non-numeric header are skipped.
  // Throws ParseError unless x is strictly increasing and cdf nondecreasing
  // within [0, 1].
  static Tw1Table FromCsv(std::string_view csv);

  // Monotone interpolated CDF, clamped to 0 / 1 outside the grid.
  double Cdf(double x) const;
  // Inverse of Cdf. Throws OutOfRangeProbability unless 0 < p < 1.
  double Quantile(double p) const;

  const std::vector<double>& grid() const { return x_; }
  const std::vector<double>& cdf() const { return f_; }

 private:
  std::vector<double> x_;
  std::vector<double> f_;
  std::vector<double> slope_;
};

// The table shipped with the library, parsed once on first use.
const Tw1Table& DefaultTw1Table();

inline double Tw1Cdf(double x) { return DefaultTw1Table().Cdf(x); }
inline double Tw1Quantile(double p) { return DefaultTw1Table().Quantile(p); }

}  // namespace sbmk

#endif  // SBMK_TRACY_WIDOM_H_
