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
#include <random>

#include "doctest.h"
#include "hetdis/error.h"
#include "oracles.h"
#include "test_util.h"

namespace hetdis {
namespace {

using testing::ReadData;

struct Fixture {
  PronLexicon lexicon = ParsePronLexicon(ReadData("lexicon_ipa.txt"));
  HeteronymInventory inventory =
      ParseHeteronymInventory(ReadData("heteronyms_ipa.tsv"));

  MixedSequence Sequence(const std::string& text) const {
    return MaskOov(BuildMixedSequence(text, lexicon, inventory,
                                      AmbiguousPolicy::kMask));
  }
};

CandidateScore Score(std::vector<std::string> forms, std::vector<double> d_avg) {
  CandidateScore s;
  for (const auto& f : forms) s.candidate_id += (s.candidate_id.empty() ? "" : "+") + f;
  s.slot_forms = std::move(forms);
  s.slot_d_avg = std::move(d_avg);
  for (double v : s.slot_d_avg) s.total += v;
  return s;
}

TEST_CASE("GenerateCandidates") {
  Fixture fx;
  SUBCASE("one heteronym gives one candidate per form") {
    auto set = GenerateCandidates(fx.Sequence("I will read."), fx.inventory);
    REQUIRE(set.slots.size() == 1);
    REQUIRE(set.candidates.size() == 2);
    CHECK(set.candidates[0].id == "read_present");
    CHECK(set.candidates[1].id == "read_past");
    CHECK(set.candidates[0].tokens ==
          std::vector<std::string>{"aɪ", "w", "ɪ", "l", "ɹ", "i", "d"});
    CHECK(set.candidates[0].slot_spans[0] == TokenSpan{4, 7});
  }
  SUBCASE("cross product of a two-form and three-form slot") {
    auto inv = ParseHeteronymInventory(
        "a\ta1\tx\na\ta2\ty\nb\tb1\tp\nb\tb2\tq\nb\tb3\tr s\n");
    PronLexicon lex;
    auto seq = MaskOov(BuildMixedSequence("a b", lex, inv, AmbiguousPolicy::kMask));
    auto set = GenerateCandidates(seq, inv);
    REQUIRE(set.candidates.size() == 6);
    CHECK(set.candidates[0].id == "a1+b1");
    CHECK(set.candidates[1].id == "a1+b2");
    CHECK(set.candidates[5].id == "a2+b3");
    CHECK(set.candidates[5].tokens == std::vector<std::string>{"y", "r", "s"});
    CHECK(set.candidates[5].slot_spans[1] == TokenSpan{1, 3});
  }
  SUBCASE("no heteronym") {
    try {
      GenerateCandidates(fx.Sequence("I will swim."), fx.inventory);
      FAIL("expected NoHeteronym");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNoHeteronym);
    }
  }
  SUBCASE("cap") {
    // 2^7 = 128 candidates exceed the default cap of 64.
    auto seq = fx.Sequence("read read read read read read read");
    try {
      GenerateCandidates(seq, fx.inventory);
      FAIL("expected TooManyCandidates");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kTooManyCandidates);
    }
    CHECK(GenerateCandidates(seq, fx.inventory, 128).candidates.size() == 128);
    CHECK(GenerateCandidates(fx.Sequence("read read read read read read"),
                             fx.inventory)
              .candidates.size() == 64);
  }
}

TEST_CASE("WordAvgDistance") {
  SUBCASE("single token single frame") {
    DistanceMatrix d(1, 1, {5.0});
    CHECK(WordAvgDistance(d, HardAlignment{{0}}, {0, 1}) == 5.0);
  }
  SUBCASE("three aligned frames") {
    DistanceMatrix d(2, 4, {9, 1, 3, 9, 9, 9, 9, 2});
    HardAlignment a{{0, 0, 0, 1}};
    // Token 0 owns frames 0..2 with distances 9, 1, 3.
    CHECK(WordAvgDistance(d, a, {0, 1}) == doctest::Approx(13.0 / 3));
    DistanceMatrix e(2, 4, {1, 3, 0, 0, 0, 0, 2, 0});
    HardAlignment b{{0, 0, 1, 1}};
    CHECK(WordAvgDistance(e, b, {0, 2}) == doctest::Approx((1 + 3 + 2 + 0) / 4.0));
    DistanceMatrix f(1, 3, {1, 3, 2});
    CHECK(WordAvgDistance(f, HardAlignment{{0, 0, 0}}, {0, 1}) == 2.0);
  }
  SUBCASE("identical vectors") {
    EncodingMatrix e(2, 2, {1, 0, 0, 1});
    auto d = ComputeDistanceMatrix(e, e);
    CHECK(WordAvgDistance(d, ViterbiAlign(d), {0, 2}) == 0.0);
  }
  SUBCASE("empty span") {
    DistanceMatrix d(1, 1, {5.0});
    try {
      WordAvgDistance(d, HardAlignment{{0}}, {0, 0});
      FAIL("expected EmptySpan");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEmptySpan);
    }
  }
}

TEST_CASE("WordAvgDistance matches direct evaluation from vectors") {
  std::mt19937_64 rng(31);
  std::normal_distribution<float> g;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 4, m = n + rng() % (9 - n), dim = 1 + rng() % 6;
    std::vector<std::vector<float>> tv(n, std::vector<float>(dim));
    std::vector<std::vector<float>> fv(m, std::vector<float>(dim));
    std::vector<float> td, fd;
    for (auto& v : tv)
      for (auto& x : v) td.push_back(x = g(rng));
    for (auto& v : fv)
      for (auto& x : v) fd.push_back(x = g(rng));
    auto d = ComputeDistanceMatrix(EncodingMatrix(n, dim, td),
                                   EncodingMatrix(m, dim, fd));
    auto a = ViterbiAlign(d);
    std::size_t begin = rng() % n;
    std::size_t end = begin + 1 + rng() % (n - begin);
    CHECK(WordAvgDistance(d, a, {begin, end}) ==
          doctest::Approx(oracle::AverageDistance(tv, fv, a.assignment, begin, end))
              .epsilon(1e-9));
  }
}

TEST_CASE("Confidence") {
  CHECK(Confidence(452.9, 403.3) == doctest::Approx(0.11586).epsilon(1e-4));
  CHECK(Confidence(7.0, 7.0) == 0.0);
  CHECK(Confidence(0.0, 0.0) == 0.0);
  CHECK(Confidence(30.0, 10.0) == 1.0);
  CHECK(Confidence(1.0, 0.0) == 2.0);
}

TEST_CASE("Select examples") {
  std::vector<SlotInfo> slot = {{"read", 0, {"read_present", "read_past"}}};
  SUBCASE("reference sentence") {
    auto out = Select({Score({"read_present"}, {403.3}), Score({"read_past"}, {452.9})},
                      slot);
    REQUIRE(out.size() == 1);
    CHECK(out[0].chosen_form == "read_present");
    CHECK(std::abs(out[0].confidence - 0.1159) <= 5e-4);
  }
  SUBCASE("exact tie goes to the first listed form") {
    std::vector<SlotInfo> ab = {{"w", 0, {"a", "b"}}};
    auto out = Select({Score({"b"}, {7.0}), Score({"a"}, {7.0})}, ab);
    CHECK(out[0].chosen_form == "a");
    CHECK(out[0].confidence == 0.0);
  }
  SUBCASE("three forms") {
    std::vector<SlotInfo> abc = {{"w", 0, {"a", "b", "c"}}};
    auto out = Select({Score({"a"}, {20}), Score({"b"}, {10}), Score({"c"}, {30})}, abc);
    CHECK(out[0].chosen_form == "b");
    CHECK(out[0].confidence == doctest::Approx(1.0));
  }
  SUBCASE("fewer than two scores") {
    CHECK_THROWS_AS(Select({Score({"read_present"}, {1.0})}, slot), Error);
  }
}

std::vector<CandidateScore> RandomScores(std::mt19937_64& rng,
                                         const std::vector<SlotInfo>& slots) {
  std::vector<CandidateScore> scores;
  std::vector<std::size_t> idx(slots.size(), 0);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  while (true) {
    std::vector<std::string> forms;
    std::vector<double> d;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      forms.push_back(slots[s].form_ids[idx[s]]);
      d.push_back(u(rng));
    }
    scores.push_back(Score(forms, d));
    std::size_t s = slots.size();
    while (s > 0) {
      --s;
      if (++idx[s] < slots[s].form_ids.size()) break;
      idx[s] = 0;
      if (s == 0) return scores;
    }
  }
}

TEST_CASE("Select properties") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SlotInfo> slots;
    std::size_t n_slots = 1 + rng() % 3;
    for (std::size_t s = 0; s < n_slots; ++s) {
      SlotInfo info{"w" + std::to_string(s), s, {}};
      std::size_t forms = 2 + rng() % 2;
      for (std::size_t f = 0; f < forms; ++f)
        info.form_ids.push_back(info.word + "_" + std::to_string(f));
      slots.push_back(info);
    }
    auto scores = RandomScores(rng, slots);
    auto base = Select(scores, slots);
    for (const auto& slot : base) {
      CHECK(slot.confidence >= 0.0);
      CHECK(slot.confidence <= 2.0);
    }
    auto shuffled = scores;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto again = Select(shuffled, slots);
    for (std::size_t s = 0; s < base.size(); ++s) {
      CHECK(again[s].chosen_form == base[s].chosen_form);
      CHECK(again[s].confidence == base[s].confidence);
    }
    if (n_slots == 1) {
      auto best = std::min_element(
          scores.begin(), scores.end(),
          [](const auto& a, const auto& b) { return a.total < b.total; });
      CHECK(base[0].chosen_form == best->slot_forms[0]);
    }
  }
}

TEST_CASE("planted pronunciation is recovered from noiseless frames") {
  Fixture fx;
  std::mt19937_64 rng(8);
  std::normal_distribution<float> g;
  EncodingTable table(8);
  for (const char* sym : {"aɪ", "w", "ɪ", "l", "ɹ", "i", "d", "ɛ", "s", "m", "z",
                          "ɚ", "t", "u"}) {
    std::vector<float> v(8);
    for (auto& x : v) x = g(rng);
    table.Add(sym, v);
  }
  auto set = GenerateCandidates(fx.Sequence("I will read."), fx.inventory);
  for (std::size_t truth = 0; truth < set.candidates.size(); ++truth) {
    std::vector<std::string> frame_syms;
    for (const auto& t : set.candidates[truth].tokens) {
      for (int k = 0; k < 3; ++k) frame_syms.push_back(t);
    }
    auto frames = table.Lookup(frame_syms);
    auto scores = ScoreCandidates(set.candidates, frames, table);
    auto out = Select(scores, set.slots);
    CHECK(out[0].chosen_form == set.candidates[truth].slot_forms[0]);
    CHECK(scores[truth].slot_d_avg[0] == 0.0);
    CHECK(out[0].confidence > 0.0);
  }
}

TEST_CASE("ScoreCandidates from precomputed matrices") {
  Candidate a{"a", {"x"}, {{0, 1}}, {"a"}};
  Candidate b{"b", {"y"}, {{0, 1}}, {"b"}};
  std::map<std::string, DistanceMatrix> m;
  m.emplace("a", DistanceMatrix(1, 2, {1, 3}));
  CHECK_THROWS_AS(ScoreCandidates({a, b}, m), Error);
  m.emplace("b", DistanceMatrix(1, 2, {4, 4}));
  auto scores = ScoreCandidates({a, b}, m);
  CHECK(scores[0].slot_d_avg[0] == 2.0);
  CHECK(scores[1].total == 4.0);
  std::map<std::string, DistanceMatrix> bad;
  bad.emplace("a", DistanceMatrix(2, 2, {1, 1, 1, 1}));
  CHECK_THROWS_AS(ScoreCandidates({a}, bad), Error);
}

}  // namespace
}  // namespace hetdis
