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

#ifndef SBMK_RANDOM_H_
#define SBMK_RANDOM_H_

#include <array>
#include <cstdint>
#include <limits>

namespace sbmk {

// Philox4x32-10 counter-based generator. The key is the user seed and the
// stream id selects an independent sequence, so replicate r of an experiment
// draws the same numbers no matter which worker runs it or in what order.
//
// Satisfies UniformRandomBitGenerator with 64-bit output.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed, uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }
  // Uniform integer in [0, bound).
  uint64_t Below(uint64_t bound);

 private:
  void Refill();

  std::array<uint32_t, 2> key_;
  std::array<uint32_t, 4> counter_;
  std::array<uint32_t, 4> buffer_{};
  int used_ = 4;
};

// Derives a child stream id, e.g. for (cell, replicate) pairs.
uint64_t MixStream(uint64_t a, uint64_t b);

}  // namespace sbmk

#endif  // SBMK_RANDOM_H_
