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

#include "hetdis/scoring.h"

#include <algorithm>
#include <limits>
#include <optional>

#include "hetdis/error.h"

namespace hetdis {

std::vector<std::string> AlignmentTokens(const MixedSequence& sequence) {
  std::vector<std::string> tokens;
  for (const MixedItem& item : sequence.items) {
    if (!item.aligned()) continue;
    tokens.insert(tokens.end(), item.units.begin(), item.units.end());
  }
  return tokens;
}

CandidateSet GenerateCandidates(const MixedSequence& sequence,
                                const HeteronymInventory& inventory,
                                std::size_t cap) {
  CandidateSet set;
  std::vector<const std::vector<HeteronymForm>*> slot_forms;
  std::size_t total = 1;
  for (std::size_t k = 0; k < sequence.items.size(); ++k) {
    const ClassifiedToken& ct = sequence.items[k].source;
    if (ct.kind != TokenKind::kHeteronymSlot) continue;
    const auto* forms = inventory.Find(ct.token.key);
    if (forms == nullptr) {
      throw Error(ErrorCode::kUnknownForm,
                  "'" + ct.token.key + "' is not in the inventory");
    }
    SlotInfo slot{ct.token.key, k, {}};
    for (const auto& f : *forms) slot.form_ids.push_back(f.id);
    set.slots.push_back(std::move(slot));
    slot_forms.push_back(forms);
    total = std::min(total * forms->size(), cap + 1);  // saturates
  }
  if (set.slots.empty())
    throw Error(ErrorCode::kNoHeteronym, "sentence has no heteronym");
  if (total > cap) {
    throw Error(ErrorCode::kTooManyCandidates,
                "candidate product exceeds cap " + std::to_string(cap));
  }

  // Odometer over form choices, last slot fastest.
  std::vector<std::size_t> choice(set.slots.size(), 0);
  while (true) {
    Candidate cand;
    std::size_t slot = 0;
    for (std::size_t k = 0; k < sequence.items.size(); ++k) {
      const MixedItem& item = sequence.items[k];
      if (!item.aligned()) continue;
      if (slot < set.slots.size() && set.slots[slot].item_index == k) {
        const HeteronymForm& form = (*slot_forms[slot])[choice[slot]];
        TokenSpan span{cand.tokens.size(), 0};
        cand.tokens.insert(cand.tokens.end(),
                           form.pronunciation.phonemes.begin(),
                           form.pronunciation.phonemes.end());
        span.end = cand.tokens.size();
        cand.slot_spans.push_back(span);
        cand.slot_forms.push_back(form.id);
        ++slot;
      } else {
        cand.tokens.insert(cand.tokens.end(), item.units.begin(),
                           item.units.end());
      }
    }
    for (std::size_t s = 0; s < cand.slot_forms.size(); ++s) {
      if (s > 0) cand.id += '+';
      cand.id += cand.slot_forms[s];
    }
    set.candidates.push_back(std::move(cand));

    std::size_t s = choice.size();
    while (s > 0) {
      --s;
      if (++choice[s] < slot_forms[s]->size()) break;
      choice[s] = 0;
      if (s == 0) return set;
    }
  }
}

double WordAvgDistance(const DistanceMatrix& dist, const HardAlignment& align,
                       TokenSpan span) {
  if (span.begin >= span.end)
    throw Error(ErrorCode::kEmptySpan, "word span is empty");
  if (span.end > dist.n_tokens())
    throw Error(ErrorCode::kInvalidArgument, "word span out of range");
  if (align.assignment.size() != dist.n_frames())
    throw Error(ErrorCode::kInvalidArgument, "alignment does not fit matrix");
  double sum = 0.0;
  std::size_t frames = 0;
  for (std::size_t j = 0; j < align.assignment.size(); ++j) {
    std::size_t token = align.assignment[j];
    if (token < span.begin || token >= span.end) continue;
    sum += dist.at(token, j);
    ++frames;
  }
  if (frames == 0)
    throw Error(ErrorCode::kEmptySpan, "no frames aligned to word span");
  return sum / static_cast<double>(frames);
}

CandidateScore ScoreCandidate(const Candidate& candidate,
                              const DistanceMatrix& dist) {
  if (dist.n_tokens() != candidate.tokens.size()) {
    throw Error(ErrorCode::kDimMismatch,
                "candidate '" + candidate.id + "' has " +
                    std::to_string(candidate.tokens.size()) +
                    " tokens but its matrix has " +
                    std::to_string(dist.n_tokens()) + " rows");
  }
  HardAlignment align = ViterbiAlign(dist);
  CandidateScore score{candidate.id, candidate.slot_forms, {}, 0.0};
  for (const TokenSpan& span : candidate.slot_spans) {
    double d = WordAvgDistance(dist, align, span);
    score.slot_d_avg.push_back(d);
    score.total += d;
  }
  return score;
}

std::vector<CandidateScore> ScoreCandidates(
    const std::vector<Candidate>& candidates, const EncodingMatrix& frames,
    const EncodingTable& table) {
  std::vector<CandidateScore> scores;
  scores.reserve(candidates.size());
  for (const Candidate& cand : candidates) {
    EncodingMatrix tokens = table.Lookup(cand.tokens);
    scores.push_back(ScoreCandidate(cand, ComputeDistanceMatrix(tokens, frames)));
  }
  return scores;
}

std::vector<CandidateScore> ScoreCandidates(
    const std::vector<Candidate>& candidates,
    const std::map<std::string, DistanceMatrix>& matrices) {
  std::vector<CandidateScore> scores;
  scores.reserve(candidates.size());
  for (const Candidate& cand : candidates) {
    auto it = matrices.find(cand.id);
    if (it == matrices.end()) {
      throw Error(ErrorCode::kMissingCandidate,
                  "no distance matrix for candidate '" + cand.id + "'");
    }
    scores.push_back(ScoreCandidate(cand, it->second));
  }
  return scores;
}

double Confidence(double max_score, double min_score) {
  if (max_score == min_score) return 0.0;
  return (max_score - min_score) / ((max_score + min_score) / 2.0);
}

std::vector<SlotResult> Select(const std::vector<CandidateScore>& scores,
                               const std::vector<SlotInfo>& slots) {
  if (scores.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "select needs >= 2 candidates");
  std::vector<SlotResult> results;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const SlotInfo& slot = slots[s];
    SlotResult result{slot.word, slot.item_index, {}, {}, 0.0};
    for (const std::string& form : slot.form_ids) {
      std::optional<double> best;
      for (const CandidateScore& score : scores) {
        if (score.slot_forms.size() != slots.size() ||
            score.slot_d_avg.size() != slots.size()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "score '" + score.candidate_id + "' has wrong slot count");
        }
        if (score.slot_forms[s] != form) continue;
        if (!best || score.slot_d_avg[s] < *best) best = score.slot_d_avg[s];
      }
      if (best) result.marginals.emplace_back(form, *best);
    }
    if (result.marginals.empty()) {
      throw Error(ErrorCode::kUnresolvedSlot,
                  "no candidate scored slot '" + slot.word + "'");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t at_min = 0;
    for (const auto& [form, value] : result.marginals) {
      if (value < lo) {
        lo = value;
        result.chosen_form = form;
        at_min = 1;
      } else if (value == lo) {
        ++at_min;
      }
      hi = std::max(hi, value);
    }
    result.confidence = at_min > 1 ? 0.0 : Confidence(hi, lo);
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace hetdis
