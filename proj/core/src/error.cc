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

#include "sbmk/error.h"

namespace sbmk {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kAsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::kSelfLoopPresent: return "SelfLoopPresent";
    case ErrorCode::kNonBinaryEntry: return "NonBinaryEntry";
    case ErrorCode::kEmptyBlock: return "EmptyBlock";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kTooManyBlocks: return "TooManyBlocks";
    case ErrorCode::kIndivisibleN: return "IndivisibleN";
    case ErrorCode::kProbabilityOverflow: return "ProbabilityOverflow";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kKMeansDegenerate: return "KMeansDegenerate";
    case ErrorCode::kDegenerateProbability: return "DegenerateProbability";
    case ErrorCode::kBlockTooSmall: return "BlockTooSmall";
    case ErrorCode::kOutOfRangeProbability: return "OutOfRangeProbability";
    case ErrorCode::kEmptyBlockPair: return "EmptyBlockPair";
    case ErrorCode::kNoUsableBlocks: return "NoUsableBlocks";
    case ErrorCode::kKMaxExceeded: return "KMaxExceeded";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNodeIndexOutOfRange: return "NodeIndexOutOfRange";
    case ErrorCode::kRaggedRows: return "RaggedRows";
    case ErrorCode::kDegenerateCell: return "DegenerateCell";
    case ErrorCode::kTooFewGenes: return "TooFewGenes";
    case ErrorCode::kInvalidGrid: return "InvalidGrid";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace sbmk
