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

#ifndef HETDIS_DATASET_H_
#define HETDIS_DATASET_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hetdis/lexicon.h"
#include "hetdis/scoring.h"

namespace hetdis {

struct SlotLabel {
  std::string word;
  std::size_t item_index = 0;
  std::string form_id;
  Pronunciation pronunciation;
  double confidence = 0.0;
};

struct LabeledSample {
  std::string sentence_id;
  std::string text;
  std::vector<SlotLabel> slots;
  MixedSequence sequence;  // unmasked

  // Confidence of the weakest slot; 2 (the upper bound) without slots.
  double MinConfidence() const;
};

// Rebuilds the sentence's mixed sequence and attaches the chosen forms.
// Throws kUnknownForm when a chosen form is not in the inventory and
// kUnresolvedSlot when the result's slots do not line up with the
// sentence's heteronyms.
LabeledSample MakeLabeledSample(const DisambiguationResult& result,
                                const PronLexicon& lexicon,
                                const HeteronymInventory& inventory,
                                AmbiguousPolicy policy);

struct TrainingRecord {
  std::string grapheme_input;
  std::string phoneme_target;

  bool operator==(const TrainingRecord&) const = default;
};

enum class MaskPolicy { kMask, kDrop };

// Target words are separated by " | ", one group per whitespace-delimited
// input word; punctuation stays inside its word's group. Returns nullopt
// when policy is kDrop and some word would be "<unk>".
// Throws kUnresolvedSlot for a heteronym without a label.
std::optional<TrainingRecord> EmitRecord(const LabeledSample& sample,
                                         MaskPolicy policy);
std::vector<TrainingRecord> EmitRecords(
    const std::vector<LabeledSample>& samples, MaskPolicy policy);

// "grapheme_input<TAB>phoneme_target" lines.
std::string FormatRecordsTsv(const std::vector<TrainingRecord>& records);

// Keeps samples whose every slot has confidence >= tau, in input order.
std::vector<LabeledSample> FilterThreshold(
    const std::vector<LabeledSample>& samples, double tau);

using FormKey = std::pair<std::string, std::string>;  // (word, form_id)
using FormCounts = std::map<FormKey, long>;

FormCounts CountForms(const std::vector<LabeledSample>& samples);

// Greedy balancing. Pool samples are visited by descending minimum
// confidence, then ascending sentence id; a sample is taken when it lowers
// the summed per-word deficit (sum over forms of max count - form count,
// over base + selected) and raises no word's max - min spread. For
// two-form words this is exactly "strictly reduces max - min". The forms of
// a word are those listed in base (zeros allowed) plus those chosen in the
// pool. Returns the selection sorted by sentence id.
std::vector<LabeledSample> Balance(const std::vector<LabeledSample>& pool,
                                   const FormCounts& base);

struct ThresholdStats {
  double tau = 0.0;
  std::size_t kept = 0;
  FormCounts counts;
};

std::vector<ThresholdStats> Stats(const std::vector<LabeledSample>& samples,
                                  const std::vector<double>& taus);

// (sentence_id, slot ordinal) -> gold form id.
using GoldLabels = std::map<std::pair<std::string, std::size_t>, std::string>;

struct TpFp {
  std::size_t tp = 0;
  std::size_t fp = 0;
};

struct EvalTable {
  std::vector<FormKey> forms;           // columns, sorted
  std::vector<double> taus;             // rows
  std::vector<std::vector<TpFp>> cells; // [tau][form]
  std::vector<std::size_t> totals;      // per tau, sum of TP + FP
};

// Throws kMissingGold when a sample slot has no gold label.
EvalTable Evaluate(const GoldLabels& gold,
                   const std::vector<LabeledSample>& samples,
                   const std::vector<double>& taus);

// Header "threshold", "<form> TP", "<form> FP"..., "total"; one row per tau
// labeled with row_labels.
std::string FormatEvalTable(const EvalTable& table,
                            const std::vector<std::string>& row_labels);

}  // namespace hetdis

#endif  // HETDIS_DATASET_H_
