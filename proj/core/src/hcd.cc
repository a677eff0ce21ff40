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

#include "sbmk/hcd.h"

#include <numeric>
#include <string>
#include <utility>

#include "sbmk/error.h"
#include "sbmk/random.h"

namespace sbmk {

StopDecision StoppingRule(const AdjacencyMatrix& adjacency, double alpha,
                          int n_min, const EigenOptions& opts) {
  StopDecision out;
  const int n = adjacency.size();
  if (n < 2 * n_min) {
    out.reason = "size " + std::to_string(n) + " below 2 * n_min";
    return out;
  }
  try {
    out.report =
        MultipleTest(adjacency, LabelVector::Constant(n), alpha, n_min, opts);
    out.stop = out.report->decision == Decision::kAccept;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoUsableBlocks) throw;
    out.reason = e.what();
  }
  return out;
}

int HierarchyTree::num_leaves() const {
  int leaves = 0;
  for (const auto& node : nodes) leaves += node.is_leaf();
  return leaves;
}

void HcdOptions::Check() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kOutOfRangeProbability, "alpha must lie in (0, 1)");
  }
  if (max_depth < 0) throw Error(ErrorCode::kInvalidArgument, "max_depth < 0");
  if (n_min < 2) throw Error(ErrorCode::kInvalidArgument, "n_min must be >= 2");
}

namespace {

class Recursion {
 public:
  Recursion(const AdjacencyMatrix& adjacency, const HcdOptions& options)
      : adjacency_(adjacency), options_(options) {}

  HierarchyTree Run() {
    HierarchyNode root;
    root.members.resize(adjacency_.size());
    std::iota(root.members.begin(), root.members.end(), 0);
    tree_.nodes.push_back(std::move(root));
    Visit(0);
    return std::move(tree_);
  }

 private:
  // Stream id unique to each address: a leading 1 bit followed by the path.
  static uint64_t AddressStream(const std::string& address) {
    uint64_t id = 1;
    for (char c : address) id = (id << 1) | static_cast<uint64_t>(c == '1');
    return id;
  }

  void MakeLeaf(int index) { tree_.nodes[index].community = next_leaf_++; }

  void Visit(int index) {
    const std::vector<int> members = tree_.nodes[index].members;
    const std::string address = tree_.nodes[index].address;
    const AdjacencyMatrix sub = static_cast<int>(members.size()) == adjacency_.size()
                                    ? adjacency_
                                    : adjacency_.Induced(members);
    if (static_cast<int>(address.size()) >= options_.max_depth) {
      tree_.nodes[index].decision.reason = "max_depth reached";
      MakeLeaf(index);
      return;
    }
    StopDecision decision = StoppingRule(sub, options_.alpha, options_.n_min,
                                         options_.eigen);
    const bool stop = decision.stop;
    tree_.nodes[index].decision = std::move(decision);
    if (stop) {
      MakeLeaf(index);
      return;
    }

    LabelVector split;
    try {
      if (options_.partitioner == Partitioner::kSes) {
        split = SesBipartition(sub, options_.eigen);
      } else {
        split = RscCluster(sub, 2, options_.tau,
                           MixStream(options_.seed, AddressStream(address)),
                           options_.eigen);
      }
    } catch (const Error& e) {
      tree_.nodes[index].diagnostic = std::string("split failed: ") + e.what();
      MakeLeaf(index);
      return;
    }
    std::vector<int> sides[2];
    for (int i = 0; i < sub.size(); ++i) sides[split[i]].push_back(members[i]);
    if (sides[0].empty() || sides[1].empty()) {
      tree_.nodes[index].diagnostic = "split failed: one side empty";
      MakeLeaf(index);
      return;
    }
    for (int side = 0; side < 2; ++side) {
      HierarchyNode child;
      child.address = address + static_cast<char>('0' + side);
      child.members = std::move(sides[side]);
      tree_.nodes.push_back(std::move(child));
      tree_.nodes[index].children[side] =
          static_cast<int>(tree_.nodes.size()) - 1;
    }
    Visit(tree_.nodes[index].children[0]);
    Visit(tree_.nodes[index].children[1]);
  }

  const AdjacencyMatrix& adjacency_;
  const HcdOptions& options_;
  HierarchyTree tree_;
  int next_leaf_ = 0;
};

}  // namespace

HcdResult HcdRecover(const AdjacencyMatrix& adjacency,
                     const HcdOptions& options) {
  options.Check();
  if (adjacency.size() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "empty graph");
  }
  HcdResult result;
  result.tree = Recursion(adjacency, options).Run();
  std::vector<int> labels(adjacency.size(), -1);
  for (const auto& node : result.tree.nodes) {
    if (!node.is_leaf()) continue;
    for (int v : node.members) labels[v] = node.community;
  }
  result.labels = LabelVector(std::move(labels), result.tree.num_leaves());
  return result;
}

}  // namespace sbmk
