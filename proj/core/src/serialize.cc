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

#include "sbmk/serialize.h"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sbmk/error.h"

namespace sbmk {
namespace {

using nlohmann::json;

json Number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json Number(const std::optional<double>& x) {
  return x ? Number(*x) : json(nullptr);
}

// Runs a reader, mapping JSON access errors to InvalidArgument.
template <typename F>
auto Read(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad params JSON: ") + e.what());
  }
}

json NodeToJson(const HierarchyTree& tree, int index) {
  const HierarchyNode& node = tree.nodes[index];
  json out = {{"address", node.address},
              {"depth", node.depth()},
              {"size", node.members.size()},
              {"decision", ToJson(node.decision)}};
  if (!node.diagnostic.empty()) out["diagnostic"] = node.diagnostic;
  if (node.is_leaf()) {
    out["community"] = node.community + 1;
    json members = json::array();
    for (int v : node.members) members.push_back(v + 1);
    out["members"] = std::move(members);
  } else {
    out["children"] = {NodeToJson(tree, node.children[0]),
                       NodeToJson(tree, node.children[1])};
  }
  return out;
}

}  // namespace

json LabelsToJson(const LabelVector& labels) {
  json out = json::array();
  for (int v : labels.values()) out.push_back(v + 1);
  return out;
}

json MatrixToJson(const Eigen::MatrixXd& matrix) {
  json out = json::array();
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) row.push_back(Number(matrix(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json ToJson(const CandidateReport& row) {
  json blocks = json::array();
  for (const BlockTest& b : row.blocks) {
    json block = {{"block", b.block + 1},
                  {"size", b.size},
                  {"p_hat", Number(b.p_hat)},
                  {"mu_hat", Number(b.mu_hat)},
                  {"lambda2", Number(b.lambda2)},
                  {"statistic", Number(b.statistic)},
                  {"degenerate", b.degenerate}};
    if (b.degenerate) block["reason"] = b.reason;
    blocks.push_back(std::move(block));
  }
  return {{"k", row.k},
          {"labels", row.labels.size() ? LabelsToJson(row.labels) : json::array()},
          {"g_hat", MatrixToJson(row.g_hat)},
          {"blocks", std::move(blocks)},
          {"t_stat", Number(row.t_stat)},
          {"threshold", Number(row.threshold)},
          {"decision", row.decision == Decision::kAccept ? "accept" : "reject"},
          {"validity_condition", row.validity_condition},
          {"delta0_hat", Number(row.delta0_hat)},
          {"diagnostics", row.diagnostics}};
}

json ToJson(const SmtReport& report) {
  json candidates = json::array();
  for (const auto& row : report.candidates) candidates.push_back(ToJson(row));
  return {{"schema_version", kJsonSchemaVersion},
          {"n", report.n},
          {"alpha", report.alpha},
          {"k_max", report.k_max},
          {"n_min", report.n_min},
          {"detector", report.detector},
          {"tau", report.tau},
          {"seed", report.seed},
          {"k_hat", report.k_hat ? json(*report.k_hat) : json(nullptr)},
          {"k_max_exceeded", report.k_max_exceeded()},
          {"candidates", std::move(candidates)}};
}

json ToJson(const StopDecision& decision) {
  json out = {{"stop", decision.stop}};
  if (!decision.reason.empty()) out["reason"] = decision.reason;
  if (decision.report) {
    out["t_stat"] = Number(decision.report->t_stat);
    out["threshold"] = Number(decision.report->threshold);
    if (!decision.report->blocks.empty()) {
      out["p_hat"] = Number(decision.report->blocks[0].p_hat);
    }
  }
  return out;
}

json ToJson(const HierarchyTree& tree) {
  return {{"schema_version", kJsonSchemaVersion},
          {"num_communities", tree.num_leaves()},
          {"root", tree.nodes.empty() ? json(nullptr) : NodeToJson(tree, 0)}};
}

json ToJson(const SbmParams& params) {
  return {{"n", params.n},
          {"labels", LabelsToJson(params.ResolvedLabels())},
          {"G", MatrixToJson(params.probs.matrix())},
          {"rho", params.rho}};
}

json ToJson(const PlantedPartitionParams& params) {
  return {{"n", params.n},
          {"K", params.k},
          {"between", params.between},
          {"gap", params.gap},
          {"out_in_ratio", params.out_in_ratio()}};
}

json ToJson(const BtsbmParams& params) {
  return {{"n", params.n},
          {"depth", params.depth},
          {"a", params.a},
          {"rho", params.rho},
          {"level_probabilities", params.LevelProbabilities()}};
}

json ToJson(const DcsbmParams& params) {
  return {{"base", ToJson(params.base)}, {"theta", params.theta}};
}

LabelVector LabelsFromJson(const json& doc) {
  return Read([&] {
    std::vector<int> labels;
    for (const auto& v : doc) {
      const int label = v.get<int>();
      if (label < 1) throw Error(ErrorCode::kInvalidArgument, "labels are 1-based");
      labels.push_back(label - 1);
    }
    return LabelVector(std::move(labels));
  });
}

SbmParams SbmParamsFromJson(const json& doc) {
  return Read([&] {
    SbmParams params;
    params.n = doc.at("n").get<int>();
    const json& g = doc.at("G");
    Eigen::MatrixXd probs(g.size(), g.size());
    for (size_t i = 0; i < g.size(); ++i) {
      if (g[i].size() != g.size()) {
        throw Error(ErrorCode::kInvalidArgument, "G is not square");
      }
      for (size_t j = 0; j < g.size(); ++j) probs(i, j) = g[i][j].get<double>();
    }
    params.probs = BlockProbabilityMatrix(std::move(probs));
    params.rho = doc.value("rho", 1.0);
    if (doc.contains("labels")) {
      params.labels = LabelVector(LabelsFromJson(doc["labels"]).values(),
                                  params.probs.num_blocks());
    }
    params.Check();
    return params;
  });
}

PlantedPartitionParams PlantedPartitionParamsFromJson(const json& doc) {
  return Read([&] {
    PlantedPartitionParams params;
    params.n = doc.at("n").get<int>();
    params.k = doc.at("K").get<int>();
    params.between = doc.at("between").get<double>();
    params.gap = doc.at("gap").get<double>();
    params.Check();
    return params;
  });
}

BtsbmParams BtsbmParamsFromJson(const json& doc) {
  return Read([&] {
    BtsbmParams params;
    params.depth = doc.at("depth").get<int>();
    params.rho = doc.at("rho").get<double>();
    params.a = doc.at("a").get<double>();
    params.n = doc.at("n").get<int>();
    params.Check();
    return params;
  });
}

DcsbmParams DcsbmParamsFromJson(const json& doc) {
  return Read([&] {
    DcsbmParams params;
    params.base = SbmParamsFromJson(doc.at("base"));
    params.theta = doc.at("theta").get<std::vector<double>>();
    params.Check();
    return params;
  });
}

}  // namespace sbmk
