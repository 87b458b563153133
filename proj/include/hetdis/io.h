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

#ifndef HETDIS_IO_H_
#define HETDIS_IO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetdis/alignment.h"
#include "hetdis/dataset.h"
#include "hetdis/lexicon.h"
#include "hetdis/scoring.h"

namespace hetdis {

// Binary matrix file:
//   bytes 0-3   "ALNF"
//   byte  4     version (1)
//   bytes 5-8   rows, uint32 little-endian
//   bytes 9-12  cols, uint32 little-endian
//   then rows*cols float32 little-endian, row-major.
inline constexpr std::string_view kMatrixMagic = "ALNF";
inline constexpr std::uint8_t kMatrixVersion = 1;
inline constexpr std::size_t kMatrixHeaderSize = 13;

std::string EncodeMatrix(const EncodingMatrix& matrix);
// Throws kBadMagic, kBadVersion, kTruncatedPayload (short header, short or
// over-long payload) and kNonFiniteValue.
EncodingMatrix DecodeMatrix(std::string_view bytes);

void WriteMatrix(const std::filesystem::path& path, const EncodingMatrix& matrix);
EncodingMatrix ReadMatrix(const std::filesystem::path& path);
// Reads a matrix file as N tokens x M frames of distances.
DistanceMatrix ReadDistanceMatrix(const std::filesystem::path& path);
// Stores distances as float32; values are rounded to nearest.
EncodingMatrix ToStorage(const DistanceMatrix& dist);

// Whole-file helpers; throw kIo.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view content);

// "dim <d>" then "<symbol> <f1> ... <fd>" per line; blank and "#" lines
// are skipped. Throws kMalformedLine, kDimMismatch (with line),
// kDuplicateSymbol.
EncodingTable ParseEncodingTable(std::string_view text);
// Symbols sorted; floats printed in shortest round-trip form.
std::string FormatEncodingTable(const EncodingTable& table);

// One JSON object per line: {"id", "text", "frames": path} or
// {"id", "text", "candidates": {candidate_id: path}}. Relative paths are
// resolved against base_dir.
struct ManifestRecord {
  std::string id;
  std::string text;
  std::optional<std::filesystem::path> frames;
  std::map<std::string, std::filesystem::path> candidates;
};

// Throws kMalformedLine (with line) and kDuplicateId.
std::vector<ManifestRecord> ParseManifest(
    std::string_view text, const std::filesystem::path& base_dir = {});
// Paths are written as given (generic form).
std::string FormatManifestLine(const ManifestRecord& record);

// Disambiguation results, one JSON object per line.
std::string FormatResultLine(const DisambiguationResult& result);
std::vector<DisambiguationResult> ParseResults(std::string_view text);

// "sentence_id<TAB>slot<TAB>form_id" lines; slot is the 0-based ordinal of
// the heteronym within the sentence.
GoldLabels ParseGold(std::string_view text);
std::string FormatGold(const GoldLabels& gold);

// "word<TAB>form_id<TAB>count" lines.
FormCounts ParseFormCounts(std::string_view text);

}  // namespace hetdis

#endif  // HETDIS_IO_H_
