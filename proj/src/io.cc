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

#include "hetdis/io.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "hetdis/error.h"
#include "json.hpp"
#include "text_util.h"

namespace hetdis {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

void PutU32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out += static_cast<char>((v >> (8 * b)) & 0xFF);
}

std::uint32_t GetU32(std::string_view bytes, std::size_t pos) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + b]))
         << (8 * b);
  return v;
}

float ParseFloat(std::string_view field, int line_no) {
  float value = 0.0f;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kMalformedLine,
                "bad number '" + std::string(field) + "'", line_no);
  }
  if (!std::isfinite(value))
    throw Error(ErrorCode::kNonFiniteValue, "non-finite value", line_no);
  return value;
}

std::string FormatFloat(float value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

std::size_t ParseIndex(std::string_view field, int line_no) {
  std::size_t value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw Error(ErrorCode::kMalformedLine,
                "bad integer '" + std::string(field) + "'", line_no);
  }
  return value;
}

}  // namespace

std::string EncodeMatrix(const EncodingMatrix& matrix) {
  std::string out;
  out.reserve(kMatrixHeaderSize + matrix.data().size() * 4);
  out += kMatrixMagic;
  out += static_cast<char>(kMatrixVersion);
  PutU32(out, static_cast<std::uint32_t>(matrix.rows()));
  PutU32(out, static_cast<std::uint32_t>(matrix.dim()));
  for (float v : matrix.data()) PutU32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

EncodingMatrix DecodeMatrix(std::string_view bytes) {
  if (bytes.size() < kMatrixMagic.size() ||
      bytes.substr(0, kMatrixMagic.size()) != kMatrixMagic) {
    throw Error(ErrorCode::kBadMagic, "not an ALNF matrix file");
  }
  if (bytes.size() < kMatrixHeaderSize)
    throw Error(ErrorCode::kTruncatedPayload, "header is truncated");
  auto version = static_cast<std::uint8_t>(bytes[4]);
  if (version != kMatrixVersion) {
    throw Error(ErrorCode::kBadVersion,
                "unsupported version " + std::to_string(version));
  }
  std::uint64_t rows = GetU32(bytes, 5);
  std::uint64_t cols = GetU32(bytes, 9);
  std::uint64_t expected = rows * cols * 4;
  std::uint64_t actual = bytes.size() - kMatrixHeaderSize;
  if (actual != expected) {
    throw Error(ErrorCode::kTruncatedPayload,
                "payload has " + std::to_string(actual) + " bytes, header needs " +
                    std::to_string(expected));
  }
  std::vector<float> data(rows * cols);
  for (std::size_t k = 0; k < data.size(); ++k) {
    data[k] = std::bit_cast<float>(GetU32(bytes, kMatrixHeaderSize + 4 * k));
    if (!std::isfinite(data[k]))
      throw Error(ErrorCode::kNonFiniteValue,
                  "non-finite value at index " + std::to_string(k));
  }
  return EncodingMatrix(rows, cols, std::move(data));
}

std::string ReadTextFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ss.str();
}

void WriteTextFile(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

void WriteMatrix(const fs::path& path, const EncodingMatrix& matrix) {
  WriteTextFile(path, EncodeMatrix(matrix));
}

EncodingMatrix ReadMatrix(const fs::path& path) {
  std::string bytes = ReadTextFile(path);
  try {
    return DecodeMatrix(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

DistanceMatrix ReadDistanceMatrix(const fs::path& path) {
  EncodingMatrix m = ReadMatrix(path);
  std::vector<double> data(m.data().begin(), m.data().end());
  try {
    return DistanceMatrix(m.rows(), m.dim(), std::move(data));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

EncodingMatrix ToStorage(const DistanceMatrix& dist) {
  std::vector<float> data(dist.data().begin(), dist.data().end());
  return EncodingMatrix(dist.n_tokens(), dist.n_frames(), std::move(data));
}

EncodingTable ParseEncodingTable(std::string_view text) {
  std::vector<std::string_view> lines = SplitLines(text);
  std::optional<EncodingTable> table;
  int line_no = 0;
  for (std::string_view line : lines) {
    ++line_no;
    std::vector<std::string_view> fields = SplitWhitespace(line);
    if (fields.empty() || fields[0].starts_with("#")) continue;
    if (!table) {
      if (fields.size() != 2 || fields[0] != "dim")
        throw Error(ErrorCode::kMalformedLine, "expected 'dim <d>'", line_no);
      std::size_t dim = ParseIndex(fields[1], line_no);
      if (dim == 0)
        throw Error(ErrorCode::kMalformedLine, "dim must be positive", line_no);
      table.emplace(dim);
      continue;
    }
    if (fields.size() - 1 != table->dim()) {
      throw Error(ErrorCode::kDimMismatch,
                  "symbol '" + std::string(fields[0]) + "' has " +
                      std::to_string(fields.size() - 1) + " values, expected " +
                      std::to_string(table->dim()),
                  line_no);
    }
    std::vector<float> v;
    v.reserve(table->dim());
    for (std::size_t k = 1; k < fields.size(); ++k)
      v.push_back(ParseFloat(fields[k], line_no));
    std::string symbol(fields[0]);
    if (table->Find(symbol) != nullptr)
      throw Error(ErrorCode::kDuplicateSymbol, "symbol '" + symbol + "'", line_no);
    table->Add(std::move(symbol), std::move(v));
  }
  if (!table) throw Error(ErrorCode::kMalformedLine, "missing 'dim' header", 1);
  return std::move(*table);
}

std::string FormatEncodingTable(const EncodingTable& table) {
  std::string out = "dim " + std::to_string(table.dim()) + "\n";
  for (const auto& [symbol, vec] : table.vectors()) {
    out += symbol;
    for (float v : vec) {
      out += ' ';
      out += FormatFloat(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<ManifestRecord> ParseManifest(std::string_view text,
                                          const fs::path& base_dir) {
  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };
  std::vector<ManifestRecord> records;
  std::set<std::string> ids;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    ManifestRecord rec;
    try {
      Json j = Json::parse(line);
      rec.id = j.at("id").get<std::string>();
      rec.text = j.at("text").get<std::string>();
      bool has_frames = j.contains("frames");
      bool has_candidates = j.contains("candidates");
      if (has_frames == has_candidates) {
        throw Error(ErrorCode::kMalformedLine,
                    "record needs exactly one of 'frames' or 'candidates'",
                    line_no);
      }
      if (has_frames) {
        rec.frames = resolve(j.at("frames").get<std::string>());
      } else {
        for (const auto& [cid, path] : j.at("candidates").items())
          rec.candidates[cid] = resolve(path.get<std::string>());
        if (rec.candidates.empty()) {
          throw Error(ErrorCode::kMalformedLine, "empty 'candidates'", line_no);
        }
      }
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kMalformedLine, e.what(), line_no);
    }
    if (rec.id.empty())
      throw Error(ErrorCode::kMalformedLine, "empty id", line_no);
    if (!ids.insert(rec.id).second)
      throw Error(ErrorCode::kDuplicateId, "id '" + rec.id + "'", line_no);
    records.push_back(std::move(rec));
  }
  return records;
}

std::string FormatManifestLine(const ManifestRecord& record) {
  Json j;
  j["id"] = record.id;
  j["text"] = record.text;
  if (record.frames) {
    j["frames"] = record.frames->generic_string();
  } else {
    Json c = Json::object();
    for (const auto& [cid, path] : record.candidates)
      c[cid] = path.generic_string();
    j["candidates"] = c;
  }
  return j.dump() + "\n";
}

std::string FormatResultLine(const DisambiguationResult& result) {
  Json j;
  j["id"] = result.sentence_id;
  j["text"] = result.text;
  Json slots = Json::array();
  for (const SlotResult& slot : result.slots) {
    Json s;
    s["word"] = slot.word;
    s["item"] = slot.item_index;
    s["chosen"] = slot.chosen_form;
    s["confidence"] = slot.confidence;
    Json scores = Json::array();
    for (const auto& [form, d] : slot.marginals)
      scores.push_back(Json{{"form", form}, {"d_avg", d}});
    s["scores"] = scores;
    slots.push_back(s);
  }
  j["slots"] = slots;
  return j.dump() + "\n";
}

std::vector<DisambiguationResult> ParseResults(std::string_view text) {
  std::vector<DisambiguationResult> results;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      Json j = Json::parse(line);
      DisambiguationResult r;
      r.sentence_id = j.at("id").get<std::string>();
      r.text = j.at("text").get<std::string>();
      for (const Json& s : j.at("slots")) {
        SlotResult slot;
        slot.word = s.at("word").get<std::string>();
        slot.item_index = s.at("item").get<std::size_t>();
        slot.chosen_form = s.at("chosen").get<std::string>();
        slot.confidence = s.at("confidence").get<double>();
        for (const Json& sc : s.at("scores")) {
          slot.marginals.emplace_back(sc.at("form").get<std::string>(),
                                      sc.at("d_avg").get<double>());
        }
        if (!(slot.confidence >= 0.0 && slot.confidence <= 2.0)) {
          throw Error(ErrorCode::kMalformedLine, "confidence outside [0, 2]",
                      line_no);
        }
        r.slots.push_back(std::move(slot));
      }
      results.push_back(std::move(r));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kMalformedLine, e.what(), line_no);
    }
  }
  return results;
}

GoldLabels ParseGold(std::string_view text) {
  GoldLabels gold;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (Trim(line).empty() || line.starts_with("#")) continue;
    std::vector<std::string_view> f = Split(line, '\t');
    if (f.size() != 3)
      throw Error(ErrorCode::kMalformedLine, "expected id<TAB>slot<TAB>form", line_no);
    std::string id(Trim(f[0]));
    std::size_t slot = ParseIndex(Trim(f[1]), line_no);
    if (!gold.emplace(std::pair{id, slot}, std::string(Trim(f[2]))).second)
      throw Error(ErrorCode::kDuplicateId, "gold entry repeated", line_no);
  }
  return gold;
}

std::string FormatGold(const GoldLabels& gold) {
  std::string out;
  for (const auto& [key, form] : gold)
    out += key.first + "\t" + std::to_string(key.second) + "\t" + form + "\n";
  return out;
}

FormCounts ParseFormCounts(std::string_view text) {
  FormCounts counts;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (Trim(line).empty() || line.starts_with("#")) continue;
    std::vector<std::string_view> f = Split(line, '\t');
    if (f.size() != 3)
      throw Error(ErrorCode::kMalformedLine, "expected word<TAB>form<TAB>count", line_no);
    counts[{FoldCase(Trim(f[0])), std::string(Trim(f[1]))}] +=
        static_cast<long>(ParseIndex(Trim(f[2]), line_no));
  }
  return counts;
}

}  // namespace hetdis
