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

// Hierarchical community detection by recursive bipartition, with the
// single-block SMT test deciding when to stop.
//
// Every tree node is named by a binary string: the root is "", and the two
// children of node w are w + "0" and w + "1".

#ifndef SBMK_HCD_H_
#define SBMK_HCD_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sbmk/graph.h"
#include "sbmk/smt.h"
#include "sbmk/spectral.h"

namespace sbmk {

struct StopDecision {
  bool stop = true;
  // Empty when the test ran; otherwise the guard or error that fired.
  std::string reason;
  std::optional<CandidateReport> report;
};

// stop iff the one-block multiple test accepts. Graphs below 2 * n_min nodes
// stop by guard, and an all-degenerate graph stops with a diagnostic.
StopDecision StoppingRule(const AdjacencyMatrix& adjacency, double alpha,
                          int n_min = 30, const EigenOptions& opts = {});

enum class Partitioner { kSes, kRsc };

struct HierarchyNode {
  std::string address;
  std::vector<int> members;  // global node ids, ascending
  StopDecision decision;
  std::string diagnostic;    // set when a split failed
  int children[2] = {-1, -1};
  int community = -1;        // leaf id, -1 for internal nodes

  int depth() const { return static_cast<int>(address.size()); }
  bool is_leaf() const { return children[0] < 0; }
};

// Flat storage, root at index 0.
struct HierarchyTree {
  std::vector<HierarchyNode> nodes;

  int num_leaves() const;
};

struct HcdOptions {
  Partitioner partitioner = Partitioner::kSes;
  double alpha = 0.05;
  int max_depth = 10;
  int n_min = 30;
  double tau = 0.1;  // RSC only
  uint64_t seed = 0;
  EigenOptions eigen;

  void Check() const;
};

struct HcdResult {
  LabelVector labels;  // leaf ids in depth-first address order
  HierarchyTree tree;
};

HcdResult HcdRecover(const AdjacencyMatrix& adjacency,
                     const HcdOptions& options = {});

}  // namespace sbmk

#endif  // SBMK_HCD_H_
