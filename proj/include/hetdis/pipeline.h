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

#ifndef HETDIS_PIPELINE_H_
#define HETDIS_PIPELINE_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hetdis/alignment.h"
#include "hetdis/io.h"
#include "hetdis/lexicon.h"
#include "hetdis/scoring.h"

namespace hetdis {

struct PipelineOptions {
  AmbiguousPolicy ambiguous = AmbiguousPolicy::kMask;
  std::size_t candidate_cap = kDefaultCandidateCap;
};

enum class OutcomeStatus { kScored, kNoHeteronym, kSkipped };

struct SentenceOutcome {
  std::string id;
  OutcomeStatus status = OutcomeStatus::kScored;
  DisambiguationResult result;  // valid when kScored
  std::string reason;           // why a sentence was skipped
};

// Labels the heteronyms of one transcript: dictionary substitution,
// candidate generation, alignment scoring and per-slot selection. The
// lexicon, inventory and table are borrowed and must outlive this object;
// Run is const and safe to call from several threads.
class Disambiguator {
 public:
  Disambiguator(const PronLexicon& lexicon, const HeteronymInventory& inventory,
                const EncodingTable* table, PipelineOptions options = {});

  // Throws kNoHeteronym, kTooManyCandidates, kTooFewFrames, kMissingSymbol.
  DisambiguationResult Run(const std::string& id, const std::string& text,
                           const EncodingMatrix& frames) const;
  // Precomputed mode; matrices are keyed by candidate id.
  DisambiguationResult Run(
      const std::string& id, const std::string& text,
      const std::map<std::string, DistanceMatrix>& matrices) const;

  // Loads the record's frames or matrices from disk. Sentences without a
  // heteronym and those hitting kTooFewFrames or kTooManyCandidates come
  // back as outcomes; anything else is rethrown.
  SentenceOutcome RunRecord(const ManifestRecord& record) const;

  const PipelineOptions& options() const { return options_; }

 private:
  CandidateSet Candidates(const std::string& text) const;

  const PronLexicon& lexicon_;
  const HeteronymInventory& inventory_;
  const EncodingTable* table_;
  PipelineOptions options_;
};

// Runs every record on up to jobs threads. The result is sorted by sentence
// id and does not depend on jobs. If records fail, the error of the
// smallest failing id is rethrown.
std::vector<SentenceOutcome> RunCorpus(const std::vector<ManifestRecord>& records,
                                       const Disambiguator& disambiguator,
                                       std::size_t jobs);

}  // namespace hetdis

#endif  // HETDIS_PIPELINE_H_
