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

#ifndef SBMK_ERROR_H_
#define SBMK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sbmk {

// Every failure the library reports. Names are stable: they appear in CLI
// error messages and in JSON diagnostics.
enum class ErrorCode {
  kInvalidArgument,
  kAsymmetricMatrix,
  kSelfLoopPresent,
  kNonBinaryEntry,
  kEmptyBlock,
  kInvalidProbability,
  kTooManyBlocks,
  kIndivisibleN,
  kProbabilityOverflow,
  kConvergenceFailure,
  kKMeansDegenerate,
  kDegenerateProbability,
  kBlockTooSmall,
  kOutOfRangeProbability,
  kEmptyBlockPair,
  kNoUsableBlocks,
  kKMaxExceeded,
  kLengthMismatch,
  kParseError,
  kNodeIndexOutOfRange,
  kRaggedRows,
  kDegenerateCell,
  kTooFewGenes,
  kInvalidGrid,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sbmk

#endif  // SBMK_ERROR_H_
