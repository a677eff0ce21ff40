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

// Monte-Carlo experiment grids.
//
// A grid is a JSON object
//
//   {"alpha": 0.05, "reps": 100, "n_min": 30, "cells": [ {...}, ... ]}
//
// where every key but "cells" is optional. Cell keys by experiment:
//
//   size-power   model ("sbm" | "dcsbm" | "er"), n, k, test_k (default k),
//                either degree + out_in_ratio or within + between (er: p or
//                degree), theta_low / theta_high (dcsbm, default 0.2 / 1.8),
//                labels ("detector" | "truth", default "detector").
//   nmi-table    n, k, degree + out_in_ratio or within + between, k_max.
//   btsbm-table  n, depth, a, degree or rho, partitioner ("ses" | "rsc"),
//                max_depth.
//
// Replicate r of cell c samples from Philox stream MixStream(c, r) under the
// run seed, so results do not depend on the worker count.

#ifndef SBMK_EXPERIMENT_H_
#define SBMK_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sbmk {

inline constexpr int kCsvSchemaVersion = 1;

enum class ExperimentKind { kSizePower, kNmiTable, kBtsbmTable };

// Throws InvalidArgument for unknown names.
ExperimentKind ParseExperimentKind(const std::string& name);
std::string ExperimentKindName(ExperimentKind kind);

struct ExperimentOptions {
  int reps = 0;  // 0: take "reps" from the grid, else 100
  uint64_t seed = 0;
  int jobs = 1;
  bool bhmc_baseline = false;  // nmi-table only
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> warnings;

  void Write(std::ostream& out) const;
  // Index of a header column; throws InvalidArgument if absent.
  int Column(const std::string& name) const;
};

// Throws InvalidGrid for malformed grids.
CsvTable RunExperiment(ExperimentKind kind, const nlohmann::json& grid,
                       const ExperimentOptions& options);

}  // namespace sbmk

#endif  // SBMK_EXPERIMENT_H_
