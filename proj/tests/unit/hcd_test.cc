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

#include <algorithm>
#include <set>

#include "sbmk/hcd.h"
#include "sbmk/metrics.h"
#include "unit/test_util.h"

namespace sbmk {
namespace {

using testing::CliqueLabels;
using testing::DisjointCliques;
using testing::ErGraph;
using testing::PlantedSbm;

// Leaves partition 0..n-1, addresses extend the parent's, labels match
// leaf ids, and internal nodes all chose to continue.
void CheckTree(const HcdResult& r, int n) {
  const auto& nodes = r.tree.nodes;
  REQUIRE_FALSE(nodes.empty());
  CHECK(nodes[0].address.empty());
  std::vector<int> seen(n, 0);
  std::set<int> communities;
  for (const auto& node : nodes) {
    if (node.is_leaf()) {
      CHECK(node.community >= 0);
      communities.insert(node.community);
      for (int v : node.members) {
        ++seen[v];
        CHECK(r.labels[v] == node.community);
      }
      continue;
    }
    CHECK_FALSE(node.decision.stop);
    const auto& left = nodes[node.children[0]];
    const auto& right = nodes[node.children[1]];
    CHECK(left.address == node.address + "0");
    CHECK(right.address == node.address + "1");
    std::vector<int> joined = left.members;
    joined.insert(joined.end(), right.members.begin(), right.members.end());
    std::sort(joined.begin(), joined.end());
    CHECK(joined == node.members);
  }
  for (int v = 0; v < n; ++v) CHECK(seen[v] == 1);
  CHECK(static_cast<int>(communities.size()) == r.tree.num_leaves());
  CHECK(r.labels.NumNonEmpty() == r.tree.num_leaves());
}

TEST_SUITE("hcd") {

TEST_CASE("stopping rule guards") {
  const auto two = AdjacencyMatrix::FromEdges(2, std::vector<Edge>{{0, 1}});
  const auto d = StoppingRule(two, 0.05);
  CHECK(d.stop);
  CHECK_FALSE(d.reason.empty());
  CHECK_FALSE(d.report.has_value());

  const auto k = testing::CompleteGraph(80);
  const auto full = StoppingRule(k, 0.05);
  CHECK(full.stop);
  CHECK_FALSE(full.reason.empty());
}

TEST_CASE("stopping rule on null and split graphs") {
  int stops = 0;
  for (int s = 0; s < 200; ++s) {
    if (StoppingRule(ErGraph(800, 0.1, 100 + s), 0.05).stop) ++stops;
  }
  CHECK(stops >= 184);

  int splits = 0;
  for (int s = 0; s < 100; ++s) {
    const auto a = SampleSbm(PlantedSbm(800, 2, 0.2, 0.02), 300 + s);
    const auto d = StoppingRule(a, 0.05);
    REQUIRE(d.report.has_value());
    if (!d.stop) ++splits;
  }
  CHECK(splits >= 95);
}

TEST_CASE("two disjoint cliques are recovered exactly") {
  for (auto partitioner : {Partitioner::kSes, Partitioner::kRsc}) {
    HcdOptions opts;
    opts.partitioner = partitioner;
    const auto r = HcdRecover(DisjointCliques(2, 50), opts);
    CheckTree(r, 100);
    CHECK(r.tree.num_leaves() == 2);
    CHECK(Nmi(CliqueLabels(2, 50), r.labels) == doctest::Approx(1.0));
  }
}

TEST_CASE("max depth zero gives one community") {
  HcdOptions opts;
  opts.max_depth = 0;
  const auto r = HcdRecover(SampleSbm(PlantedSbm(400, 4, 0.3, 0.01), 2), opts);
  CheckTree(r, 400);
  CHECK(r.tree.nodes.size() == 1);
  CHECK(r.labels.NumNonEmpty() == 1);
  CHECK(r.tree.nodes[0].decision.reason.find("max_depth") != std::string::npos);
}

TEST_CASE("null graph collapses to one community") {
  int single = 0;
  for (int s = 0; s < 20; ++s) {
    const auto r = HcdRecover(ErGraph(600, 0.1, 700 + s));
    CheckTree(r, 600);
    if (r.tree.num_leaves() == 1) ++single;
  }
  CHECK(single >= 18);
}

TEST_CASE("binary tree model: structure, determinism and addresses") {
  BtsbmParams params;
  params.n = 800;
  params.depth = 2;
  params.a = 0.15;
  params.rho = 0.4;
  const auto [a, truth] = SampleBtsbm(params, 5);
  HcdOptions opts;
  opts.seed = 9;
  const auto r = HcdRecover(a, opts);
  CheckTree(r, 800);
  CHECK(r.tree.num_leaves() == 4);
  CHECK(Nmi(truth, r.labels) > 0.9);
  for (const auto& node : r.tree.nodes) CHECK(node.depth() <= 2);
  const auto again = HcdRecover(a, opts);
  CHECK(again.labels == r.labels);

  opts.partitioner = Partitioner::kRsc;
  CheckTree(HcdRecover(a, opts), 800);
}

TEST_CASE("options are validated") {
  HcdOptions opts;
  opts.alpha = 0.0;
  CHECK_THROWS_CODE(opts.Check(), ErrorCode::kOutOfRangeProbability);
  opts.alpha = 0.05;
  opts.max_depth = -1;
  CHECK_THROWS_CODE(opts.Check(), ErrorCode::kInvalidArgument);
}

}  // TEST_SUITE

}  // namespace
}  // namespace sbmk
