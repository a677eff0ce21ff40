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

#ifndef SBMK_PARALLEL_H_
#define SBMK_PARALLEL_H_

#include <cstdint>
#include <functional>

namespace sbmk {

// Worker count for `requested` jobs (0 = hardware concurrency), capped by the
// SBMK_THREADS environment variable when it holds a positive integer.
int ResolveJobs(int requested);

// Runs body(i) for i in [0, count) on up to `jobs` threads. Work items must
// write to disjoint outputs. If any item throws, the exception of the lowest
// failing index is rethrown after all workers stop.
void ParallelFor(int64_t count, int jobs,
                 const std::function<void(int64_t)>& body);

}  // namespace sbmk

#endif  // SBMK_PARALLEL_H_
