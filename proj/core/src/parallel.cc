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

#include "sbmk/parallel.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace sbmk {

int ResolveJobs(int requested) {
  int jobs = requested > 0
                 ? requested
                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("SBMK_THREADS")) {
    int cap = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, cap);
    if (ec == std::errc() && ptr == end && cap > 0) jobs = std::min(jobs, cap);
  }
  return jobs;
}

void ParallelFor(int64_t count, int jobs,
                 const std::function<void(int64_t)>& body) {
  if (count <= 0) return;
  const int workers =
      static_cast<int>(std::min<int64_t>(std::max(1, jobs), count));
  if (workers == 1) {
    for (int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::mutex mu;
  std::atomic<int64_t> error_index{std::numeric_limits<int64_t>::max()};
  std::exception_ptr error;
  auto work = [&] {
    while (true) {
      const int64_t i = next.fetch_add(1);
      if (i >= count) return;
      // Indices below a failure still run so the reported error is the
      // lowest failing one regardless of scheduling.
      if (i > error_index.load()) continue;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < error_index.load()) {
          error_index.store(i);
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sbmk
