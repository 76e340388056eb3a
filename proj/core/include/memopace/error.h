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

#ifndef MEMOPACE_ERROR_H_
#define MEMOPACE_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace memopace {

enum class ErrorCode {
  kMalformedHeader,
  kMalformedRow,
  kNegativeValue,
  kQuantityOutOfRange,
  kNonPositiveTime,
  kEmptyInput,
  kPOutOfRange,
  kBadFraction,
  kTooFewRows,
  kBadBinCount,
  kBadArgument,
  kRankDeficient,
  kNonPositiveWeight,
  kBadDegree,
  kNonPositiveInput,
  kWidthMismatch,
  kLengthMismatch,
  kDegenerateData,
  kSingularJacobian,
  kSingularPoint,
  kEmptyData,
  kBadDepth,
  kBadK,
  kNegativeInput,
  kMissingDates,
  kAllSlicesTooSmall,
  kIoError,
  kCorruptIndex,
  kNotFound,
  kDuplicate,
};

// Stable machine-readable name, e.g. "MalformedRow".
std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `line()` is set for row-level parse
// errors (1-based, header included).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace memopace

#endif  // MEMOPACE_ERROR_H_
