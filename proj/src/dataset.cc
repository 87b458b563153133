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

#include "hetdis/dataset.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "hetdis/error.h"
#include "text_util.h"

namespace hetdis {

double LabeledSample::MinConfidence() const {
  double lo = 2.0;
  for (const SlotLabel& slot : slots) lo = std::min(lo, slot.confidence);
  return lo;
}

LabeledSample MakeLabeledSample(const DisambiguationResult& result,
                                const PronLexicon& lexicon,
                                const HeteronymInventory& inventory,
                                AmbiguousPolicy policy) {
  LabeledSample sample{result.sentence_id, result.text, {},
                       BuildMixedSequence(result.text, lexicon, inventory, policy)};
  std::size_t next = 0;
  for (std::size_t k = 0; k < sample.sequence.items.size(); ++k) {
    const ClassifiedToken& ct = sample.sequence.items[k].source;
    if (ct.kind != TokenKind::kHeteronymSlot) continue;
    if (next >= result.slots.size() || result.slots[next].item_index != k ||
        result.slots[next].word != ct.token.key) {
      throw Error(ErrorCode::kUnresolvedSlot,
                  "sentence '" + result.sentence_id + "': heteronym '" +
                      ct.token.key + "' has no matching label");
    }
    const SlotResult& slot = result.slots[next++];
    const HeteronymForm* form = inventory.FindForm(slot.word, slot.chosen_form);
    if (form == nullptr) {
      throw Error(ErrorCode::kUnknownForm,
                  "sentence '" + result.sentence_id + "': form '" +
                      slot.chosen_form + "' of '" + slot.word + "'");
    }
    sample.slots.push_back(SlotLabel{slot.word, k, form->id,
                                     form->pronunciation, slot.confidence});
  }
  if (next != result.slots.size()) {
    throw Error(ErrorCode::kUnresolvedSlot,
                "sentence '" + result.sentence_id +
                    "': more labels than heteronyms");
  }
  return sample;
}

std::optional<TrainingRecord> EmitRecord(const LabeledSample& sample,
                                         MaskPolicy policy) {
  std::map<std::size_t, const SlotLabel*> labels;
  for (const SlotLabel& slot : sample.slots) labels[slot.item_index] = &slot;

  MixedSequence masked = MaskOov(sample.sequence);
  std::vector<std::string> groups;
  std::size_t current_word = static_cast<std::size_t>(-1);
  for (std::size_t k = 0; k < masked.items.size(); ++k) {
    const MixedItem& item = masked.items[k];
    if (item.masked && policy == MaskPolicy::kDrop) return std::nullopt;
    std::vector<std::string> units = item.units;
    if (item.source.kind == TokenKind::kHeteronymSlot) {
      auto it = labels.find(k);
      if (it == labels.end()) {
        throw Error(ErrorCode::kUnresolvedSlot,
                    "sentence '" + sample.sentence_id + "': heteronym '" +
                        item.source.token.key + "' unresolved");
      }
      units = it->second->pronunciation.phonemes;
    }
    std::string piece = Join(units, " ");
    if (item.source.token.word_index != current_word) {
      current_word = item.source.token.word_index;
      groups.push_back(std::move(piece));
    } else {
      groups.back() += ' ';
      groups.back() += piece;
    }
  }
  return TrainingRecord{Join(SplitWhitespace(sample.text), " "),
                        Join(groups, " | ")};
}

std::vector<TrainingRecord> EmitRecords(
    const std::vector<LabeledSample>& samples, MaskPolicy policy) {
  std::vector<TrainingRecord> records;
  for (const LabeledSample& sample : samples) {
    if (auto record = EmitRecord(sample, policy)) records.push_back(*record);
  }
  return records;
}

std::string FormatRecordsTsv(const std::vector<TrainingRecord>& records) {
  std::string out;
  for (const TrainingRecord& r : records) {
    out += r.grapheme_input;
    out += '\t';
    out += r.phoneme_target;
    out += '\n';
  }
  return out;
}

std::vector<LabeledSample> FilterThreshold(
    const std::vector<LabeledSample>& samples, double tau) {
  std::vector<LabeledSample> kept;
  for (const LabeledSample& sample : samples) {
    bool pass = std::all_of(sample.slots.begin(), sample.slots.end(),
                            [tau](const SlotLabel& s) { return s.confidence >= tau; });
    if (pass) kept.push_back(sample);
  }
  return kept;
}

FormCounts CountForms(const std::vector<LabeledSample>& samples) {
  FormCounts counts;
  for (const LabeledSample& sample : samples) {
    for (const SlotLabel& slot : sample.slots) ++counts[{slot.word, slot.form_id}];
  }
  return counts;
}

namespace {

struct WordBalance {
  long deficit = 0;
  long spread = 0;
};

class BalanceState {
 public:
  explicit BalanceState(const FormCounts& base) : counts_(base) {
    for (const auto& [key, count] : base) forms_[key.first].insert(key.second);
  }

  void Register(const SlotLabel& slot) {
    forms_[slot.word].insert(slot.form_id);
    counts_.try_emplace({slot.word, slot.form_id}, 0);
  }

  WordBalance Measure(const std::string& word) const {
    long hi = 0;
    long lo = 0;
    bool first = true;
    std::vector<long> values;
    for (const std::string& form : forms_.at(word)) {
      long c = counts_.at({word, form});
      values.push_back(c);
      hi = first ? c : std::max(hi, c);
      lo = first ? c : std::min(lo, c);
      first = false;
    }
    long deficit = 0;
    for (long c : values) deficit += hi - c;
    return {deficit, hi - lo};
  }

  // Applies sample when it helps; returns whether it did.
  bool TryAdd(const LabeledSample& sample) {
    std::set<std::string> words;
    for (const SlotLabel& slot : sample.slots) words.insert(slot.word);
    std::map<std::string, WordBalance> before;
    for (const auto& w : words) before[w] = Measure(w);
    for (const SlotLabel& slot : sample.slots) ++counts_[{slot.word, slot.form_id}];
    long gain = 0;
    bool spread_grew = false;
    for (const auto& w : words) {
      WordBalance after = Measure(w);
      gain += before[w].deficit - after.deficit;
      spread_grew = spread_grew || after.spread > before[w].spread;
    }
    if (gain > 0 && !spread_grew) return true;
    for (const SlotLabel& slot : sample.slots) --counts_[{slot.word, slot.form_id}];
    return false;
  }

 private:
  FormCounts counts_;
  std::map<std::string, std::set<std::string>> forms_;
};

}  // namespace

std::vector<LabeledSample> Balance(const std::vector<LabeledSample>& pool,
                                   const FormCounts& base) {
  BalanceState state(base);
  for (const LabeledSample& sample : pool) {
    for (const SlotLabel& slot : sample.slots) state.Register(slot);
  }
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double ca = pool[a].MinConfidence();
    double cb = pool[b].MinConfidence();
    if (ca != cb) return ca > cb;
    return pool[a].sentence_id < pool[b].sentence_id;
  });
  // Forms at a word's maximum never stop being there, so a rejected sample
  // can never become useful later and one pass suffices.
  std::vector<LabeledSample> selected;
  for (std::size_t idx : order) {
    if (pool[idx].slots.empty()) continue;
    if (state.TryAdd(pool[idx])) selected.push_back(pool[idx]);
  }
  std::stable_sort(selected.begin(), selected.end(),
                   [](const LabeledSample& a, const LabeledSample& b) {
                     return a.sentence_id < b.sentence_id;
                   });
  return selected;
}

std::vector<ThresholdStats> Stats(const std::vector<LabeledSample>& samples,
                                  const std::vector<double>& taus) {
  std::vector<ThresholdStats> out;
  for (double tau : taus) {
    std::vector<LabeledSample> kept = FilterThreshold(samples, tau);
    out.push_back(ThresholdStats{tau, kept.size(), CountForms(kept)});
  }
  return out;
}

EvalTable Evaluate(const GoldLabels& gold,
                   const std::vector<LabeledSample>& samples,
                   const std::vector<double>& taus) {
  struct Row {
    FormKey chosen;
    bool correct;
    double sample_confidence;
  };
  std::vector<Row> rows;
  std::set<FormKey> forms;
  for (const LabeledSample& sample : samples) {
    double sample_conf = sample.MinConfidence();
    for (std::size_t s = 0; s < sample.slots.size(); ++s) {
      const SlotLabel& slot = sample.slots[s];
      auto it = gold.find({sample.sentence_id, s});
      if (it == gold.end()) {
        throw Error(ErrorCode::kMissingGold,
                    "no gold label for sentence '" + sample.sentence_id +
                        "' slot " + std::to_string(s));
      }
      FormKey chosen{slot.word, slot.form_id};
      forms.insert(chosen);
      forms.insert({slot.word, it->second});
      rows.push_back(Row{chosen, it->second == slot.form_id, sample_conf});
    }
  }
  EvalTable table;
  table.forms.assign(forms.begin(), forms.end());
  table.taus = taus;
  for (double tau : taus) {
    std::vector<TpFp> cells(table.forms.size());
    std::size_t total = 0;
    for (const Row& row : rows) {
      // A sentence is kept only when all of its slots pass.
      if (row.sample_confidence < tau) continue;
      auto pos = std::lower_bound(table.forms.begin(), table.forms.end(), row.chosen);
      TpFp& cell = cells[pos - table.forms.begin()];
      if (row.correct) ++cell.tp;
      else ++cell.fp;
      ++total;
    }
    table.cells.push_back(std::move(cells));
    table.totals.push_back(total);
  }
  return table;
}

std::string FormatEvalTable(const EvalTable& table,
                            const std::vector<std::string>& row_labels) {
  if (row_labels.size() != table.taus.size())
    throw Error(ErrorCode::kInvalidArgument, "one label per threshold required");
  std::string out = "threshold";
  for (const FormKey& form : table.forms) {
    out += '\t' + form.second + " TP";
    out += '\t' + form.second + " FP";
  }
  out += "\ttotal\n";
  for (std::size_t t = 0; t < table.taus.size(); ++t) {
    out += row_labels[t];
    for (const TpFp& cell : table.cells[t]) {
      out += '\t' + std::to_string(cell.tp);
      out += '\t' + std::to_string(cell.fp);
    }
    out += '\t' + std::to_string(table.totals[t]) + '\n';
  }
  return out;
}

}  // namespace hetdis
