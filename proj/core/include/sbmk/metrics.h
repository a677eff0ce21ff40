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

// Label-agreement metrics. Both compare partitions, so block ids only matter
// up to renaming.

#ifndef SBMK_METRICS_H_
#define SBMK_METRICS_H_

#include "sbmk/graph.h"

namespace sbmk {

// I(U;V) / sqrt(H(U) H(V)) with natural logs. Two single-cluster partitions
// score 1; if exactly one partition has zero entropy the score is 0. Throws
// LengthMismatch, or InvalidArgument on empty input.
double Nmi(const LabelVector& truth, const LabelVector& estimate);

// Adjusted Rand index (Hubert-Arabie). When the chance-corrected denominator
// vanishes the score is 1 for identical partitions and 0 otherwise.
double Ari(const LabelVector& truth, const LabelVector& estimate);

}  // namespace sbmk

#endif  // SBMK_METRICS_H_
