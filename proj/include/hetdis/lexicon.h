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

#ifndef HETDIS_LEXICON_H_
#define HETDIS_LEXICON_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hetdis {

// Emission form of every masked word in training targets.
inline constexpr std::string_view kUnkToken = "<unk>";

// A pronunciation: one or more whitespace-free phoneme symbols (IPA or
// ARPABET, the library does not care which).
struct Pronunciation {
  std::vector<std::string> phonemes;

  std::string ToString() const;  // space separated
  bool operator==(const Pronunciation&) const = default;
};

// Splits on ASCII whitespace. Throws Error(kInvalidValue) when empty.
Pronunciation ParsePronunciation(std::string_view text);

// Simple lowercase fold of ASCII letters; other bytes pass through.
std::string FoldCase(std::string_view word);

// Lowercased Unicode code points of a word, used as grapheme alignment
// units. Invalid UTF-8 bytes become single-byte units.
std::vector<std::string> Graphemes(std::string_view word);

class PronLexicon {
 public:
  using Entries = std::map<std::string, std::vector<Pronunciation>>;

  // Appends a pronunciation to the case-folded word; exact duplicates are
  // ignored.
  void Add(std::string_view word, Pronunciation pronunciation);

  // nullptr when the word is unknown. key must already be case-folded.
  const std::vector<Pronunciation>* Find(std::string_view key) const;

  const Entries& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool operator==(const PronLexicon&) const = default;

 private:
  Entries entries_;
};

// CMUdict plain-text format. ";;;" lines and blank lines are skipped,
// "WORD(n)" variants merge into WORD in file order.
PronLexicon ParsePronLexicon(std::string_view text);

// Canonical text: one line per pronunciation, keys sorted, variants
// numbered (1), (2), ... Reparsing yields an equal lexicon.
std::string FormatPronLexicon(const PronLexicon& lexicon);

struct HeteronymForm {
  std::string id;
  Pronunciation pronunciation;

  bool operator==(const HeteronymForm&) const = default;
};

// word -> forms in file order. File order is the canonical order used for
// every downstream tie-break.
class HeteronymInventory {
 public:
  using Entries = std::map<std::string, std::vector<HeteronymForm>>;

  const std::vector<HeteronymForm>* Find(std::string_view key) const;
  const HeteronymForm* FindForm(std::string_view key,
                                std::string_view form_id) const;

  const Entries& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  friend HeteronymInventory ParseHeteronymInventory(std::string_view text);
  Entries entries_;
};

// Tab separated "word<TAB>form_id<TAB>phonemes"; "#" lines are comments.
HeteronymInventory ParseHeteronymInventory(std::string_view text);

struct Token {
  std::string surface;
  std::string key;  // case-folded surface
  bool punctuation = false;
  // Index of the whitespace-delimited chunk this token came from.
  std::size_t word_index = 0;

  bool operator==(const Token&) const = default;
};

// Splits on whitespace, then peels leading and trailing punctuation runs
// off each chunk into separate punctuation tokens.
std::vector<Token> Tokenize(std::string_view sentence);

enum class TokenKind {
  kKnownUnambiguous,
  kHeteronymSlot,
  kAmbiguousNonHeteronym,
  kOov,
  kPunctuation,
};

std::string_view TokenKindName(TokenKind kind);

struct ClassifiedToken {
  Token token;
  TokenKind kind = TokenKind::kOov;
  // The only lexicon pronunciation for known words, the first one for
  // ambiguous words, empty otherwise.
  Pronunciation pronunciation;
};

// Priority: inventory, single lexicon pronunciation, several lexicon
// pronunciations, OOV. Punctuation tokens are always kPunctuation.
std::vector<ClassifiedToken> Classify(const std::vector<Token>& tokens,
                                      const PronLexicon& lexicon,
                                      const HeteronymInventory& inventory);

enum class AmbiguousPolicy { kMask, kFirst };

struct MixedItem {
  ClassifiedToken source;
  // Phonemes, graphemes, a single "<unk>" or (punctuation) the mark itself.
  std::vector<std::string> units;
  bool phonemic = false;
  bool masked = false;

  // Whether units take part in alignment.
  bool aligned() const { return source.kind != TokenKind::kPunctuation; }
};

struct MixedSequence {
  std::vector<MixedItem> items;
};

// Known words become phonemes; heteronym slots, OOV and ambiguous words
// stay graphemes, except that AmbiguousPolicy::kFirst substitutes the first
// lexicon pronunciation for ambiguous words.
MixedSequence BuildMixedSequence(const std::vector<ClassifiedToken>& tokens,
                                 AmbiguousPolicy policy);

// tokenize + classify + BuildMixedSequence.
MixedSequence BuildMixedSequence(std::string_view sentence,
                                 const PronLexicon& lexicon,
                                 const HeteronymInventory& inventory,
                                 AmbiguousPolicy policy);

// Replaces the units of every OOV item, and of every ambiguous item still
// in grapheme form, with "<unk>".
MixedSequence MaskOov(MixedSequence sequence);

}  // namespace hetdis

#endif  // HETDIS_LEXICON_H_
