// Copyright (c) 2026 The hetdis Authors
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

#ifndef HETDIS_ERROR_H_
#define HETDIS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hetdis {

enum class ErrorCode {
  kMalformedLine,
  kSingleFormWord,
  kDimMismatch,
  kDuplicateSymbol,
  kMissingSymbol,
  kMissingCandidate,
  kTooFewFrames,
  kTooManyCandidates,
  kNoHeteronym,
  kEmptySpan,
  kInvalidValue,
  kUnresolvedSlot,
  kUnknownForm,
  kMissingGold,
  kDuplicateId,
  kBadMagic,
  kBadVersion,
  kTruncatedPayload,
  kNonFiniteValue,
  kIo,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. line() is the
// 1-based line number in the offending text input, or 0 when not applicable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int line = 0);

  ErrorCode code() const { return code_; }
  int line() const { return line_; }
  // The message without the code and line decoration.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  int line_;
  std::string message_;
};

}  // namespace hetdis

#endif  // HETDIS_ERROR_H_
