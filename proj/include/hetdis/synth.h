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

#ifndef HETDIS_SYNTH_H_
#define HETDIS_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hetdis/alignment.h"
#include "hetdis/dataset.h"
#include "hetdis/io.h"
#include "hetdis/lexicon.h"

namespace hetdis {

struct SynthSentence {
  std::string id;
  std::string text;
  std::vector<std::string> forms;  // planted form per heteronym, in order
};

struct SynthSpec {
  std::size_t dim = 16;
  std::size_t frames_per_token = 3;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::vector<SynthSentence> sentences;
};

// JSON object with "dim", "frames_per_token", "noise", "seed" and either
// "sentences" ([{"id"?, "text", "forms"}]) or "random_sentences" (a count),
// or both. Throws kInvalidArgument on out-of-range parameters or bad JSON.
SynthSpec ParseSynthSpec(std::string_view json,
                         const HeteronymInventory& inventory,
                         const PronLexicon& lexicon);

// Seeded random sentences: lexicon filler words around one or two
// heteronyms, sometimes an out-of-vocabulary word, ending in a period.
std::vector<SynthSentence> RandomSentences(const HeteronymInventory& inventory,
                                           const PronLexicon& lexicon,
                                           std::size_t count,
                                           std::uint64_t seed);

struct SynthCorpus {
  std::vector<ManifestRecord> manifest;  // frame paths relative to the corpus
  EncodingTable table;
  std::map<std::string, EncodingMatrix> frames;  // by sentence id
  GoldLabels gold;
};

// Every symbol gets a distinct seeded random unit vector; each sentence's
// frames are its true-candidate token vectors repeated frames_per_token
// times plus spherical Gaussian noise. Throws kUnknownForm when a planted
// form is missing or does not belong to its heteronym, kInvalidArgument on
// an invalid spec.
SynthCorpus GenSynthetic(const SynthSpec& spec,
                         const HeteronymInventory& inventory,
                         const PronLexicon& lexicon, AmbiguousPolicy policy);

// Writes manifest.jsonl, table.txt, gold.tsv and frames/<id>.alnf.
void WriteSynthCorpus(const SynthCorpus& corpus,
                      const std::filesystem::path& dir);

}  // namespace hetdis

#endif  // HETDIS_SYNTH_H_
