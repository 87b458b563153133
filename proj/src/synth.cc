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

#include "hetdis/synth.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "hetdis/error.h"
#include "json.hpp"

namespace hetdis {

namespace fs = std::filesystem;

namespace {

// std::normal_distribution is implementation-defined; this is not.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : rng_(seed) {}

  double Next() {
    double u1 = 1.0 - Uniform();  // (0, 1]
    double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::size_t Index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  double Uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
};

bool IsSafeId(std::string_view id) {
  if (id.empty() || id == "." || id == "..") return false;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

std::string SynthId(std::size_t n) {
  std::string digits = std::to_string(n);
  return "synth-" + std::string(digits.size() < 6 ? 6 - digits.size() : 0, '0') +
         digits;
}

}  // namespace

SynthSpec ParseSynthSpec(std::string_view json,
                         const HeteronymInventory& inventory,
                         const PronLexicon& lexicon) {
  SynthSpec spec;
  std::size_t random_count = 0;
  try {
    auto j = nlohmann::json::parse(json);
    spec.dim = j.value("dim", spec.dim);
    spec.frames_per_token = j.value("frames_per_token", spec.frames_per_token);
    spec.noise = j.value("noise", spec.noise);
    spec.seed = j.value("seed", spec.seed);
    random_count = j.value("random_sentences", std::size_t{0});
    if (j.contains("sentences")) {
      for (const auto& s : j.at("sentences")) {
        SynthSentence sent;
        sent.id = s.value("id", std::string());
        sent.text = s.at("text").get<std::string>();
        sent.forms = s.at("forms").get<std::vector<std::string>>();
        spec.sentences.push_back(std::move(sent));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("synth spec: ") + e.what());
  }
  auto extra = RandomSentences(inventory, lexicon, random_count, spec.seed);
  spec.sentences.insert(spec.sentences.end(), extra.begin(), extra.end());
  for (std::size_t n = 0; n < spec.sentences.size(); ++n) {
    if (spec.sentences[n].id.empty()) spec.sentences[n].id = SynthId(n + 1);
  }
  return spec;
}

std::vector<SynthSentence> RandomSentences(const HeteronymInventory& inventory,
                                           const PronLexicon& lexicon,
                                           std::size_t count,
                                           std::uint64_t seed) {
  if (count == 0) return {};
  if (inventory.empty())
    throw Error(ErrorCode::kInvalidArgument, "random sentences need an inventory");
  std::vector<const std::string*> heteronyms;
  for (const auto& [word, forms] : inventory.entries()) heteronyms.push_back(&word);
  std::vector<const std::string*> fillers;
  for (const auto& [word, prons] : lexicon.entries()) {
    bool plain = !word.empty();
    for (char c : word) plain = plain && c >= 'a' && c <= 'z';
    if (plain && inventory.Find(word) == nullptr) fillers.push_back(&word);
  }

  // Separate stream from the vector/noise generator so that sentences do not
  // shift when the corpus parameters change.
  Gaussian rng(seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<SynthSentence> out;
  for (std::size_t n = 0; n < count; ++n) {
    std::size_t length = 3 + rng.Index(6);
    std::size_t slots = rng.Index(4) == 0 ? 2 : 1;
    std::vector<std::size_t> slot_at;
    while (slot_at.size() < slots) {
      std::size_t pos = rng.Index(length);
      if (std::find(slot_at.begin(), slot_at.end(), pos) == slot_at.end())
        slot_at.push_back(pos);
    }
    std::sort(slot_at.begin(), slot_at.end());
    SynthSentence sent;
    for (std::size_t w = 0; w < length; ++w) {
      std::string word;
      if (std::find(slot_at.begin(), slot_at.end(), w) != slot_at.end()) {
        word = *heteronyms[rng.Index(heteronyms.size())];
        const auto& forms = *inventory.Find(word);
        sent.forms.push_back(forms[rng.Index(forms.size())].id);
      } else if (fillers.empty() || rng.Index(8) == 0) {
        std::size_t letters = 3 + rng.Index(5);
        for (std::size_t k = 0; k < letters; ++k)
          word += static_cast<char>('a' + rng.Index(26));
        // Guard against accidentally hitting a real entry.
        if (lexicon.Find(word) != nullptr || inventory.Find(word) != nullptr)
          word = "zq" + word;
      } else {
        word = *fillers[rng.Index(fillers.size())];
      }
      if (w == 0 && !word.empty()) word[0] = static_cast<char>(std::toupper(word[0]));
      if (!sent.text.empty()) sent.text += ' ';
      sent.text += word;
    }
    sent.text += '.';
    out.push_back(std::move(sent));
  }
  return out;
}

SynthCorpus GenSynthetic(const SynthSpec& spec,
                         const HeteronymInventory& inventory,
                         const PronLexicon& lexicon, AmbiguousPolicy policy) {
  if (spec.dim < 2)
    throw Error(ErrorCode::kInvalidArgument, "synth dim must be >= 2");
  if (spec.frames_per_token < 1)
    throw Error(ErrorCode::kInvalidArgument, "frames_per_token must be >= 1");
  if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise))
    throw Error(ErrorCode::kInvalidArgument, "noise must be finite and >= 0");

  // True token sequence per sentence, with heteronyms replaced by the planted
  // forms.
  std::set<std::string> symbols;
  for (const auto& [word, forms] : inventory.entries()) {
    for (const auto& f : forms)
      symbols.insert(f.pronunciation.phonemes.begin(), f.pronunciation.phonemes.end());
  }
  std::set<std::string> ids;
  std::vector<std::vector<std::string>> truth;
  SynthCorpus corpus;
  std::vector<SynthSentence> sentences = spec.sentences;
  for (std::size_t n = 0; n < sentences.size(); ++n) {
    if (sentences[n].id.empty()) sentences[n].id = SynthId(n + 1);
  }
  for (const SynthSentence& sent : sentences) {
    if (!IsSafeId(sent.id))
      throw Error(ErrorCode::kInvalidArgument, "bad sentence id '" + sent.id + "'");
    if (!ids.insert(sent.id).second)
      throw Error(ErrorCode::kDuplicateId, "sentence id '" + sent.id + "'");
    MixedSequence seq = BuildMixedSequence(sent.text, lexicon, inventory, policy);
    std::vector<std::string> tokens;
    std::size_t slot = 0;
    for (const MixedItem& item : seq.items) {
      if (!item.aligned()) continue;
      symbols.insert(item.units.begin(), item.units.end());
      if (item.source.kind != TokenKind::kHeteronymSlot) {
        tokens.insert(tokens.end(), item.units.begin(), item.units.end());
        continue;
      }
      if (slot >= sent.forms.size()) {
        throw Error(ErrorCode::kUnknownForm,
                    "sentence '" + sent.id + "' has no planted form for '" +
                        item.source.token.key + "'");
      }
      const HeteronymForm* form =
          inventory.FindForm(item.source.token.key, sent.forms[slot]);
      if (form == nullptr) {
        throw Error(ErrorCode::kUnknownForm,
                    "sentence '" + sent.id + "': '" + sent.forms[slot] +
                        "' is not a form of '" + item.source.token.key + "'");
      }
      corpus.gold[{sent.id, slot}] = form->id;
      tokens.insert(tokens.end(), form->pronunciation.phonemes.begin(),
                    form->pronunciation.phonemes.end());
      ++slot;
    }
    if (slot != sent.forms.size()) {
      throw Error(ErrorCode::kUnknownForm,
                  "sentence '" + sent.id + "' lists " +
                      std::to_string(sent.forms.size()) + " forms for " +
                      std::to_string(slot) + " heteronyms");
    }
    truth.push_back(std::move(tokens));
  }

  Gaussian rng(spec.seed);
  corpus.table = EncodingTable(spec.dim);
  std::vector<std::vector<float>> drawn;
  for (const std::string& symbol : symbols) {
    std::vector<float> v(spec.dim);
    while (true) {
      double norm = 0.0;
      std::vector<double> g(spec.dim);
      for (double& x : g) {
        x = rng.Next();
        norm += x * x;
      }
      norm = std::sqrt(norm);
      if (norm < 1e-6) continue;
      for (std::size_t k = 0; k < spec.dim; ++k)
        v[k] = static_cast<float>(g[k] / norm);
      bool distinct = true;
      for (const auto& other : drawn) {
        double d = 0.0;
        for (std::size_t k = 0; k < spec.dim; ++k) {
          double diff = static_cast<double>(v[k]) - other[k];
          d += diff * diff;
        }
        if (d < 1e-6) distinct = false;
      }
      if (distinct) break;
    }
    drawn.push_back(v);
    corpus.table.Add(symbol, v);
  }

  for (std::size_t n = 0; n < sentences.size(); ++n) {
    const SynthSentence& sent = sentences[n];
    std::vector<float> data;
    data.reserve(truth[n].size() * spec.frames_per_token * spec.dim);
    for (const std::string& token : truth[n]) {
      const auto* v = corpus.table.Find(token);
      for (std::size_t r = 0; r < spec.frames_per_token; ++r) {
        for (std::size_t k = 0; k < spec.dim; ++k) {
          double noise = spec.noise > 0.0 ? spec.noise * rng.Next() : 0.0;
          data.push_back(static_cast<float>((*v)[k] + noise));
        }
      }
    }
    std::size_t rows = truth[n].size() * spec.frames_per_token;
    corpus.frames.emplace(sent.id, EncodingMatrix(rows, spec.dim, std::move(data)));
    ManifestRecord rec;
    rec.id = sent.id;
    rec.text = sent.text;
    rec.frames = fs::path("frames") / (sent.id + ".alnf");
    corpus.manifest.push_back(std::move(rec));
  }
  return corpus;
}

void WriteSynthCorpus(const SynthCorpus& corpus, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir / "frames", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  std::string manifest;
  for (const ManifestRecord& rec : corpus.manifest) {
    manifest += FormatManifestLine(rec);
    WriteMatrix(dir / *rec.frames, corpus.frames.at(rec.id));
  }
  WriteTextFile(dir / "manifest.jsonl", manifest);
  WriteTextFile(dir / "table.txt", FormatEncodingTable(corpus.table));
  WriteTextFile(dir / "gold.tsv", FormatGold(corpus.gold));
}

}  // namespace hetdis
