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

#include "hetdis/error.h"

namespace hetdis {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kSingleFormWord: return "SingleFormWord";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kDuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::kMissingSymbol: return "MissingSymbol";
    case ErrorCode::kMissingCandidate: return "MissingCandidate";
    case ErrorCode::kTooFewFrames: return "TooFewFrames";
    case ErrorCode::kTooManyCandidates: return "TooManyCandidates";
    case ErrorCode::kNoHeteronym: return "NoHeteronym";
    case ErrorCode::kEmptySpan: return "EmptySpan";
    case ErrorCode::kInvalidValue: return "InvalidValue";
    case ErrorCode::kUnresolvedSlot: return "UnresolvedSlot";
    case ErrorCode::kUnknownForm: return "UnknownForm";
    case ErrorCode::kMissingGold: return "MissingGold";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kBadVersion: return "BadVersion";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string Decorate(ErrorCode code, const std::string& message, int line) {
  std::string out(ErrorCodeName(code));
  if (line > 0) out += " (line " + std::to_string(line) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, int line)
    : std::runtime_error(Decorate(code, message, line)),
      code_(code),
      line_(line),
      message_(message) {}

}  // namespace hetdis
