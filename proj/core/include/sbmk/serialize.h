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

// JSON views of reports and model parameters. Labels are written 1-based and
// undefined numbers (NaN) as null. Top-level documents carry
// "schema_version".

#ifndef SBMK_SERIALIZE_H_
#define SBMK_SERIALIZE_H_

#include <nlohmann/json.hpp>

#include "sbmk/generators.h"
#include "sbmk/graph.h"
#include "sbmk/hcd.h"
#include "sbmk/smt.h"

namespace sbmk {

inline constexpr int kJsonSchemaVersion = 1;

nlohmann::json LabelsToJson(const LabelVector& labels);
nlohmann::json MatrixToJson(const Eigen::MatrixXd& matrix);

nlohmann::json ToJson(const CandidateReport& row);
nlohmann::json ToJson(const SmtReport& report);
nlohmann::json ToJson(const StopDecision& decision);
// Nested from the root; each node lists its address, size, decision and
// children, and leaves their 1-based community.
nlohmann::json ToJson(const HierarchyTree& tree);

// Model parameters use the field names n, labels, G, rho (SBM); n, K,
// between, gap, out_in_ratio (planted partition); depth, rho, a, n (BTSBM);
// base, theta (DCSBM). The readers validate through Check() and throw
// InvalidArgument on missing or mistyped fields.
nlohmann::json ToJson(const SbmParams& params);
nlohmann::json ToJson(const PlantedPartitionParams& params);
nlohmann::json ToJson(const BtsbmParams& params);
nlohmann::json ToJson(const DcsbmParams& params);

LabelVector LabelsFromJson(const nlohmann::json& doc);
SbmParams SbmParamsFromJson(const nlohmann::json& doc);
PlantedPartitionParams PlantedPartitionParamsFromJson(const nlohmann::json& doc);
BtsbmParams BtsbmParamsFromJson(const nlohmann::json& doc);
DcsbmParams DcsbmParamsFromJson(const nlohmann::json& doc);

}  // namespace sbmk

#endif  // SBMK_SERIALIZE_H_
