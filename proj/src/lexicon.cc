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

#include "hetdis/lexicon.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "hetdis/error.h"
#include "text_util.h"

namespace hetdis {

namespace {

// Multi-byte punctuation marks that commonly wrap words in transcripts.
constexpr std::array<std::string_view, 12> kUnicodePunctuation = {
    "“", "”", "‘", "’", "–", "—",
    "…", "«", "»", "¿", "¡", "·"};

// Length in bytes of the punctuation mark starting at s[pos], or 0.
std::size_t PunctuationPrefix(std::string_view s, std::size_t pos) {
  unsigned char c = static_cast<unsigned char>(s[pos]);
  if (c < 0x80) return std::ispunct(c) ? 1 : 0;
  for (std::string_view mark : kUnicodePunctuation) {
    if (s.substr(pos, mark.size()) == mark) return mark.size();
  }
  return 0;
}

// Length in bytes of the punctuation mark ending at s[end - 1], or 0.
std::size_t PunctuationSuffix(std::string_view s, std::size_t end) {
  unsigned char c = static_cast<unsigned char>(s[end - 1]);
  if (c < 0x80) return std::ispunct(c) ? 1 : 0;
  for (std::string_view mark : kUnicodePunctuation) {
    if (mark.size() <= end && s.substr(end - mark.size(), mark.size()) == mark)
      return mark.size();
  }
  return 0;
}

// Splits "WORD(2)" into ("WORD", true). Returns false for the variant flag
// when the word carries no marker. Throws on "WORD(x)".
std::pair<std::string_view, bool> StripVariant(std::string_view word,
                                               int line_no) {
  if (word.size() < 2 || word.back() != ')') return {word, false};
  std::size_t open = word.rfind('(');
  if (open == std::string_view::npos || open == 0) return {word, false};
  std::string_view digits = word.substr(open + 1, word.size() - open - 2);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw Error(ErrorCode::kMalformedLine,
                "unparsable variant marker in '" + std::string(word) + "'",
                line_no);
  }
  return {word.substr(0, open), true};
}

}  // namespace

std::string Pronunciation::ToString() const { return Join(phonemes, " "); }

Pronunciation ParsePronunciation(std::string_view text) {
  Pronunciation pron;
  for (std::string_view field : SplitWhitespace(text))
    pron.phonemes.emplace_back(field);
  if (pron.phonemes.empty())
    throw Error(ErrorCode::kInvalidValue, "empty pronunciation");
  return pron;
}

std::string FoldCase(std::string_view word) {
  std::string out(word);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> Graphemes(std::string_view word) {
  std::string folded = FoldCase(word);
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < folded.size()) {
    std::size_t len = Utf8Length(folded, i);
    out.push_back(folded.substr(i, len));
    i += len;
  }
  return out;
}

void PronLexicon::Add(std::string_view word, Pronunciation pronunciation) {
  auto& list = entries_[FoldCase(word)];
  if (std::find(list.begin(), list.end(), pronunciation) == list.end())
    list.push_back(std::move(pronunciation));
}

const std::vector<Pronunciation>* PronLexicon::Find(std::string_view key) const {
  auto it = entries_.find(std::string(key));
  return it == entries_.end() ? nullptr : &it->second;
}

PronLexicon ParsePronLexicon(std::string_view text) {
  PronLexicon lexicon;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (line.starts_with(";;;")) continue;
    // Newer cmudict releases append "# comment" trailers to some entries.
    if (std::size_t hash = line.find(" #"); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::vector<std::string_view> fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      throw Error(ErrorCode::kMalformedLine,
                  "no phonemes for '" + std::string(fields[0]) + "'", line_no);
    }
    auto [word, variant] = StripVariant(fields[0], line_no);
    (void)variant;
    Pronunciation pron;
    for (std::size_t i = 1; i < fields.size(); ++i)
      pron.phonemes.emplace_back(fields[i]);
    lexicon.Add(word, std::move(pron));
  }
  return lexicon;
}

std::string FormatPronLexicon(const PronLexicon& lexicon) {
  std::string out;
  for (const auto& [word, prons] : lexicon.entries()) {
    for (std::size_t i = 0; i < prons.size(); ++i) {
      out += word;
      if (i > 0) out += "(" + std::to_string(i) + ")";
      out += "  ";
      out += prons[i].ToString();
      out += '\n';
    }
  }
  return out;
}

const std::vector<HeteronymForm>* HeteronymInventory::Find(
    std::string_view key) const {
  auto it = entries_.find(std::string(key));
  return it == entries_.end() ? nullptr : &it->second;
}

const HeteronymForm* HeteronymInventory::FindForm(
    std::string_view key, std::string_view form_id) const {
  const auto* forms = Find(key);
  if (forms == nullptr) return nullptr;
  for (const auto& form : *forms) {
    if (form.id == form_id) return &form;
  }
  return nullptr;
}

HeteronymInventory ParseHeteronymInventory(std::string_view text) {
  HeteronymInventory inventory;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (Trim(line).empty() || line.starts_with("#")) continue;
    std::vector<std::string_view> fields = Split(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kMalformedLine,
                  "expected word<TAB>form_id<TAB>phonemes", line_no);
    }
    std::string word = FoldCase(Trim(fields[0]));
    std::string_view form_id = Trim(fields[1]);
    if (word.empty() || form_id.empty() ||
        SplitWhitespace(word).size() != 1 ||
        SplitWhitespace(form_id).size() != 1) {
      throw Error(ErrorCode::kMalformedLine, "bad word or form id", line_no);
    }
    std::vector<std::string_view> phones = SplitWhitespace(fields[2]);
    if (phones.empty())
      throw Error(ErrorCode::kMalformedLine, "no phonemes", line_no);
    auto& forms = inventory.entries_[word];
    for (const auto& form : forms) {
      if (form.id == form_id) {
        throw Error(ErrorCode::kMalformedLine,
                    "duplicate form id '" + std::string(form_id) + "'",
                    line_no);
      }
    }
    HeteronymForm form{std::string(form_id), {}};
    for (std::string_view p : phones) form.pronunciation.phonemes.emplace_back(p);
    forms.push_back(std::move(form));
  }
  for (const auto& [word, forms] : inventory.entries_) {
    if (forms.size() < 2) {
      throw Error(ErrorCode::kSingleFormWord,
                  "heteronym '" + word + "' has a single form");
    }
  }
  return inventory;
}

std::vector<Token> Tokenize(std::string_view sentence) {
  std::vector<Token> tokens;
  auto emit = [&](std::string_view surface, bool punct, std::size_t word) {
    tokens.push_back(Token{std::string(surface), FoldCase(surface), punct, word});
  };
  std::vector<std::string_view> chunks = SplitWhitespace(sentence);
  for (std::size_t w = 0; w < chunks.size(); ++w) {
    std::string_view chunk = chunks[w];
    std::size_t begin = 0;
    while (begin < chunk.size()) {
      std::size_t n = PunctuationPrefix(chunk, begin);
      if (n == 0) break;
      begin += n;
    }
    if (begin == chunk.size()) {  // punctuation only
      emit(chunk, true, w);
      continue;
    }
    std::size_t end = chunk.size();
    while (end > begin) {
      std::size_t n = PunctuationSuffix(chunk, end);
      if (n == 0) break;
      end -= n;
    }
    if (begin > 0) emit(chunk.substr(0, begin), true, w);
    emit(chunk.substr(begin, end - begin), false, w);
    if (end < chunk.size()) emit(chunk.substr(end), true, w);
  }
  return tokens;
}

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKnownUnambiguous: return "known";
    case TokenKind::kHeteronymSlot: return "heteronym";
    case TokenKind::kAmbiguousNonHeteronym: return "ambiguous";
    case TokenKind::kOov: return "oov";
    case TokenKind::kPunctuation: return "punctuation";
  }
  return "unknown";
}

std::vector<ClassifiedToken> Classify(const std::vector<Token>& tokens,
                                      const PronLexicon& lexicon,
                                      const HeteronymInventory& inventory) {
  std::vector<ClassifiedToken> out;
  out.reserve(tokens.size());
  for (const Token& token : tokens) {
    ClassifiedToken ct{token, TokenKind::kOov, {}};
    if (token.punctuation) {
      ct.kind = TokenKind::kPunctuation;
    } else if (inventory.Find(token.key) != nullptr) {
      ct.kind = TokenKind::kHeteronymSlot;
    } else if (const auto* prons = lexicon.Find(token.key)) {
      ct.kind = prons->size() == 1 ? TokenKind::kKnownUnambiguous
                                   : TokenKind::kAmbiguousNonHeteronym;
      ct.pronunciation = prons->front();
    }
    out.push_back(std::move(ct));
  }
  return out;
}

MixedSequence BuildMixedSequence(const std::vector<ClassifiedToken>& tokens,
                                 AmbiguousPolicy policy) {
  MixedSequence seq;
  seq.items.reserve(tokens.size());
  for (const ClassifiedToken& ct : tokens) {
    MixedItem item{ct, {}, false, false};
    switch (ct.kind) {
      case TokenKind::kPunctuation:
        item.units = {ct.token.surface};
        break;
      case TokenKind::kKnownUnambiguous:
        item.units = ct.pronunciation.phonemes;
        item.phonemic = true;
        break;
      case TokenKind::kAmbiguousNonHeteronym:
        if (policy == AmbiguousPolicy::kFirst) {
          item.units = ct.pronunciation.phonemes;
          item.phonemic = true;
        } else {
          item.units = Graphemes(ct.token.surface);
        }
        break;
      case TokenKind::kHeteronymSlot:
      case TokenKind::kOov:
        item.units = Graphemes(ct.token.surface);
        break;
    }
    seq.items.push_back(std::move(item));
  }
  return seq;
}

MixedSequence BuildMixedSequence(std::string_view sentence,
                                 const PronLexicon& lexicon,
                                 const HeteronymInventory& inventory,
                                 AmbiguousPolicy policy) {
  return BuildMixedSequence(Classify(Tokenize(sentence), lexicon, inventory),
                            policy);
}

MixedSequence MaskOov(MixedSequence sequence) {
  for (MixedItem& item : sequence.items) {
    TokenKind kind = item.source.kind;
    bool mask = kind == TokenKind::kOov ||
                (kind == TokenKind::kAmbiguousNonHeteronym && !item.phonemic);
    if (mask) {
      item.units = {std::string(kUnkToken)};
      item.phonemic = false;
      item.masked = true;
    }
  }
  return sequence;
}

}  // namespace hetdis
