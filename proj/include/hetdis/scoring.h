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

#ifndef HETDIS_SCORING_H_
#define HETDIS_SCORING_H_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hetdis/alignment.h"
#include "hetdis/lexicon.h"

namespace hetdis {

inline constexpr std::size_t kDefaultCandidateCap = 64;

// Half-open [begin, end) range of alignment tokens.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const TokenSpan&) const = default;
};

// One heteronym occurrence in a sentence.
struct SlotInfo {
  std::string word;
  std::size_t item_index = 0;         // index into MixedSequence::items
  std::vector<std::string> form_ids;  // canonical (inventory) order
};

struct Candidate {
  // Slot form ids joined by '+'.
  std::string id;
  std::vector<std::string> tokens;
  std::vector<TokenSpan> slot_spans;
  std::vector<std::string> slot_forms;
};

struct CandidateSet {
  std::vector<SlotInfo> slots;
  std::vector<Candidate> candidates;
};

// Alignment tokens of the sequence with no slot substituted: every
// non-punctuation item contributes its units.
std::vector<std::string> AlignmentTokens(const MixedSequence& sequence);

// Full cross product of heteronym forms, first slot varying slowest.
// Throws kNoHeteronym without slots and kTooManyCandidates when the product
// exceeds cap.
CandidateSet GenerateCandidates(const MixedSequence& sequence,
                                const HeteronymInventory& inventory,
                                std::size_t cap = kDefaultCandidateCap);

// Average distance between the tokens in span and the frames aligned to
// them: summed distances over those frames divided by the frame count.
// Throws kEmptySpan for an empty span, kInvalidArgument when the span is
// out of range or the alignment does not fit dist.
double WordAvgDistance(const DistanceMatrix& dist, const HardAlignment& align,
                       TokenSpan span);

struct CandidateScore {
  std::string candidate_id;
  std::vector<std::string> slot_forms;
  std::vector<double> slot_d_avg;
  double total = 0.0;
};

// Aligns one candidate against its distance matrix and scores its slots.
// Throws kTooFewFrames, or kDimMismatch when the matrix rows do not match
// the candidate's token count.
CandidateScore ScoreCandidate(const Candidate& candidate,
                              const DistanceMatrix& dist);

// Token encodings come from table; order of the result follows candidates.
std::vector<CandidateScore> ScoreCandidates(
    const std::vector<Candidate>& candidates, const EncodingMatrix& frames,
    const EncodingTable& table);

// Precomputed mode: one distance matrix per candidate id.
// Throws kMissingCandidate when a candidate has no matrix.
std::vector<CandidateScore> ScoreCandidates(
    const std::vector<Candidate>& candidates,
    const std::map<std::string, DistanceMatrix>& matrices);

// (max - min) / ((max + min) / 2); 0 when max == min.
double Confidence(double max_score, double min_score);

struct SlotResult {
  std::string word;
  std::size_t item_index = 0;
  std::string chosen_form;
  // Marginal d_avg per form, canonical order.
  std::vector<std::pair<std::string, double>> marginals;
  double confidence = 0.0;
};

struct DisambiguationResult {
  std::string sentence_id;
  std::string text;
  std::vector<SlotResult> slots;
};

// Per slot: the marginal of a form is the smallest d_avg that slot received
// over all candidates using that form. The smallest marginal wins; an exact
// tie for the minimum goes to the earliest form in canonical order and
// forces the confidence to 0. Throws kInvalidArgument with fewer than two
// scores.
std::vector<SlotResult> Select(const std::vector<CandidateScore>& scores,
                               const std::vector<SlotInfo>& slots);

}  // namespace hetdis

#endif  // HETDIS_SCORING_H_
