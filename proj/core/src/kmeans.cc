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

#include <limits>
#include <string>
#include <vector>

#include "sbmk/error.h"
#include "sbmk/random.h"
#include "sbmk/spectral.h"

namespace sbmk {
namespace {

struct Run {
  std::vector<int> assignment;
  Eigen::MatrixXd centers;
  double objective = std::numeric_limits<double>::infinity();
};

Eigen::MatrixXd SeedPlusPlus(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const int n = static_cast<int>(points.rows());
  Eigen::MatrixXd centers(k, points.cols());
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(n, false);
  int pick = static_cast<int>(rng.Below(n));
  for (int c = 0; c < k; ++c) {
    if (c > 0) {
      double total = 0.0;
      for (int i = 0; i < n; ++i) total += d2[i];
      if (total > 0.0) {
        double target = rng.Uniform() * total;
        pick = -1;
        for (int i = 0; i < n; ++i) {
          target -= d2[i];
          if (target < 0.0 && d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
        if (pick < 0) {
          for (int i = n - 1; i >= 0; --i) {
            if (d2[i] > 0.0) {
              pick = i;
              break;
            }
          }
        }
      } else {
        // Every point coincides with a center; take any unused index.
        std::vector<int> unused;
        for (int i = 0; i < n; ++i) {
          if (!chosen[i]) unused.push_back(i);
        }
        pick = unused[rng.Below(unused.size())];
      }
    }
    chosen[pick] = true;
    centers.row(c) = points.row(pick);
    for (int i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (points.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

// Moves the farthest-from-center point of a multi-member cluster into each
// empty cluster.
void RefillEmpty(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                 std::vector<int>& assignment, int k) {
  const int n = static_cast<int>(points.rows());
  std::vector<int> sizes(k, 0);
  for (int a : assignment) ++sizes[a];
  std::vector<bool> moved(n, false);
  for (int c = 0; c < k; ++c) {
    if (sizes[c] > 0) continue;
    int best = -1;
    double best_d = -1.0;
    for (int i = 0; i < n; ++i) {
      if (moved[i] || sizes[assignment[i]] < 2) continue;
      const double d = (points.row(i) - centers.row(assignment[i])).squaredNorm();
      if (d > best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best < 0) {
      throw Error(ErrorCode::kKMeansDegenerate,
                  "cluster " + std::to_string(c) + " emptied and cannot refill");
    }
    --sizes[assignment[best]];
    assignment[best] = c;
    ++sizes[c];
    moved[best] = true;
  }
}

Run Lloyd(const Eigen::MatrixXd& points, int k, Eigen::MatrixXd centers,
          int max_iterations) {
  const int n = static_cast<int>(points.rows());
  Run run;
  run.assignment.assign(n, -1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (points.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      next[i] = best;
    }
    RefillEmpty(points, centers, next, k);
    changed = next != run.assignment;
    run.assignment = std::move(next);

    centers.setZero();
    std::vector<int> sizes(k, 0);
    for (int i = 0; i < n; ++i) {
      centers.row(run.assignment[i]) += points.row(i);
      ++sizes[run.assignment[i]];
    }
    for (int c = 0; c < k; ++c) centers.row(c) /= sizes[c];
    if (!changed) break;
  }
  run.objective = 0.0;
  for (int i = 0; i < n; ++i) {
    run.objective += (points.row(i) - centers.row(run.assignment[i])).squaredNorm();
  }
  run.centers = std::move(centers);
  return run;
}

}  // namespace

KMeansResult KMeans(const Eigen::MatrixXd& points, int k, uint64_t seed,
                    const KMeansOptions& opts) {
  const int n = static_cast<int>(points.rows());
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "K = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  Run best;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    Rng rng(seed, 0x6b6d0000 + r);
    Run run = Lloyd(points, k, SeedPlusPlus(points, k, rng), opts.max_iterations);
    if (run.objective < best.objective) best = std::move(run);
  }
  KMeansResult out;
  LabelVector raw(best.assignment, k);
  out.labels = raw.Canonical();
  out.objective = best.objective;
  // Reorder centers to match the canonical labels.
  out.centers.resize(k, points.cols());
  for (int i = 0; i < n; ++i) out.centers.row(out.labels[i]) = best.centers.row(raw[i]);
  return out;
}

}  // namespace sbmk
