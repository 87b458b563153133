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

#include "hetdis/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <thread>

#include "hetdis/error.h"

namespace hetdis {

Disambiguator::Disambiguator(const PronLexicon& lexicon,
                             const HeteronymInventory& inventory,
                             const EncodingTable* table, PipelineOptions options)
    : lexicon_(lexicon), inventory_(inventory), table_(table), options_(options) {}

CandidateSet Disambiguator::Candidates(const std::string& text) const {
  MixedSequence seq =
      BuildMixedSequence(text, lexicon_, inventory_, options_.ambiguous);
  return GenerateCandidates(seq, inventory_, options_.candidate_cap);
}

DisambiguationResult Disambiguator::Run(const std::string& id,
                                        const std::string& text,
                                        const EncodingMatrix& frames) const {
  if (table_ == nullptr)
    throw Error(ErrorCode::kInvalidArgument, "no encoding table loaded");
  CandidateSet set = Candidates(text);
  auto scores = ScoreCandidates(set.candidates, frames, *table_);
  return DisambiguationResult{id, text, Select(scores, set.slots)};
}

DisambiguationResult Disambiguator::Run(
    const std::string& id, const std::string& text,
    const std::map<std::string, DistanceMatrix>& matrices) const {
  CandidateSet set = Candidates(text);
  auto scores = ScoreCandidates(set.candidates, matrices);
  return DisambiguationResult{id, text, Select(scores, set.slots)};
}

SentenceOutcome Disambiguator::RunRecord(const ManifestRecord& record) const {
  SentenceOutcome outcome{record.id, OutcomeStatus::kScored, {}, {}};
  try {
    if (record.frames) {
      outcome.result = Run(record.id, record.text, ReadMatrix(*record.frames));
    } else {
      std::map<std::string, DistanceMatrix> matrices;
      for (const auto& [cid, path] : record.candidates)
        matrices.emplace(cid, ReadDistanceMatrix(path));
      outcome.result = Run(record.id, record.text, matrices);
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kNoHeteronym:
        outcome.status = OutcomeStatus::kNoHeteronym;
        break;
      case ErrorCode::kTooFewFrames:
      case ErrorCode::kTooManyCandidates:
        outcome.status = OutcomeStatus::kSkipped;
        outcome.reason = e.what();
        break;
      default:
        throw Error(e.code(), "sentence '" + record.id + "': " + e.message(),
                    e.line());
    }
  }
  return outcome;
}

std::vector<SentenceOutcome> RunCorpus(const std::vector<ManifestRecord>& records,
                                       const Disambiguator& disambiguator,
                                       std::size_t jobs) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].id < records[b].id;
  });

  std::vector<SentenceOutcome> outcomes(records.size());
  std::vector<std::exception_ptr> errors(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < order.size(); k = next++) {
      try {
        outcomes[k] = disambiguator.RunRecord(records[order[k]]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(records.size(), 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return outcomes;
}

}  // namespace hetdis
