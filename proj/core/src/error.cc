// Copyright 2026 The memopace Authors.
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

#include "memopace/error.h"

namespace memopace {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kNegativeValue: return "NegativeValue";
    case ErrorCode::kQuantityOutOfRange: return "QuantityOutOfRange";
    case ErrorCode::kNonPositiveTime: return "NonPositiveTime";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kPOutOfRange: return "POutOfRange";
    case ErrorCode::kBadFraction: return "BadFraction";
    case ErrorCode::kTooFewRows: return "TooFewRows";
    case ErrorCode::kBadBinCount: return "BadBinCount";
    case ErrorCode::kBadArgument: return "BadArgument";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kNonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::kBadDegree: return "BadDegree";
    case ErrorCode::kNonPositiveInput: return "NonPositiveInput";
    case ErrorCode::kWidthMismatch: return "WidthMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDegenerateData: return "DegenerateData";
    case ErrorCode::kSingularJacobian: return "SingularJacobian";
    case ErrorCode::kSingularPoint: return "SingularPoint";
    case ErrorCode::kEmptyData: return "EmptyData";
    case ErrorCode::kBadDepth: return "BadDepth";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kNegativeInput: return "NegativeInput";
    case ErrorCode::kMissingDates: return "MissingDates";
    case ErrorCode::kAllSlicesTooSmall: return "AllSlicesTooSmall";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kCorruptIndex: return "CorruptIndex";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kDuplicate: return "Duplicate";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(message), code_(code), line_(line) {}

}  // namespace memopace
