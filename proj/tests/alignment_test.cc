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

#include "hetdis/alignment.h"

#include <cmath>
#include <random>

#include "doctest.h"
#include "hetdis/error.h"
#include "oracles.h"

namespace hetdis {
namespace {

using Assign = std::vector<std::size_t>;

DistanceMatrix Scaled(const DistanceMatrix& d, double scale, double shift) {
  std::vector<double> data = d.data();
  for (auto& v : data) v = v * scale + shift;
  return DistanceMatrix(d.n_tokens(), d.n_frames(), std::move(data));
}

TEST_CASE("ComputeDistanceMatrix") {
  SUBCASE("3-4-5 triangle") {
    EncodingMatrix t(1, 2, {0.0f, 0.0f});
    EncodingMatrix f(1, 2, {3.0f, 4.0f});
    auto d = ComputeDistanceMatrix(t, f);
    CHECK(d.n_tokens() == 1);
    CHECK(d.n_frames() == 1);
    CHECK(d.at(0, 0) == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("identical sequences have a zero diagonal") {
    EncodingMatrix e(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    auto d = ComputeDistanceMatrix(e, e);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) {
          CHECK(d.at(i, j) == 0.0);
        } else {
          CHECK(d.at(i, j) == doctest::Approx(std::sqrt(2.0)));
        }
      }
    }
  }
  SUBCASE("dimension mismatch") {
    EncodingMatrix t(1, 2, {0, 0});
    EncodingMatrix f(1, 3, {0, 0, 0});
    try {
      ComputeDistanceMatrix(t, f);
      FAIL("expected DimMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDimMismatch);
    }
  }
  SUBCASE("entries are L2 norms and non-negative") {
    std::mt19937_64 rng(11);
    std::normal_distribution<float> g;
    for (int trial = 0; trial < 50; ++trial) {
      std::size_t n = 1 + rng() % 5, m = 1 + rng() % 7, dim = 1 + rng() % 9;
      std::vector<std::vector<float>> tv(n, std::vector<float>(dim));
      std::vector<std::vector<float>> fv(m, std::vector<float>(dim));
      std::vector<float> td, fd;
      for (auto& v : tv)
        for (auto& x : v) td.push_back(x = g(rng));
      for (auto& v : fv)
        for (auto& x : v) fd.push_back(x = g(rng));
      auto d = ComputeDistanceMatrix(EncodingMatrix(n, dim, td),
                                     EncodingMatrix(m, dim, fd));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          CHECK(d.at(i, j) >= 0.0);
          CHECK(d.at(i, j) == doctest::Approx(oracle::L2(tv[i], fv[j])).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("EncodingMatrix and DistanceMatrix validate input") {
  CHECK_THROWS_AS(EncodingMatrix(2, 2, {1, 2, 3}), Error);
  CHECK_THROWS_AS(EncodingMatrix(1, 1, {std::nanf("")}), Error);
  CHECK_THROWS_AS(DistanceMatrix(1, 1, {-1.0}), Error);
  CHECK_THROWS_AS(DistanceMatrix(0, 1, {}), Error);
  CHECK_THROWS_AS(DistanceMatrix(1, 1, {INFINITY}), Error);
}

TEST_CASE("EncodingTable lookup") {
  EncodingTable table(2);
  table.Add("a", {1, 2});
  CHECK_THROWS_AS(table.Add("a", {1, 2}), Error);
  CHECK_THROWS_AS(table.Add("b", {1}), Error);
  auto m = table.Lookup({"a", "a"});
  CHECK(m.rows() == 2);
  CHECK(m.row(1)[1] == 2.0f);
  try {
    table.Lookup({"a", "zz"});
    FAIL("expected MissingSymbol");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingSymbol);
  }
}

TEST_CASE("ViterbiAlign examples") {
  SUBCASE("single token") {
    DistanceMatrix d(1, 3, {0.4, 0.2, 0.9});
    auto a = ViterbiAlign(d);
    CHECK(a.assignment == Assign{0, 0, 0});
    CHECK(PathCost(d, a) == doctest::Approx(1.5));
  }
  SUBCASE("two tokens") {
    DistanceMatrix d(2, 3, {0.1, 0.9, 0.9, 0.9, 0.1, 0.1});
    auto a = ViterbiAlign(d);
    CHECK(a.assignment == Assign{0, 1, 1});
    CHECK(PathCost(d, a) == doctest::Approx(0.3));
  }
  SUBCASE("square matrix is forced to the diagonal") {
    DistanceMatrix d(3, 3, {9, 0, 0, 0, 9, 0, 0, 0, 9});
    CHECK(ViterbiAlign(d).assignment == Assign{0, 1, 2});
  }
  SUBCASE("too few frames") {
    DistanceMatrix d(3, 2, {0, 0, 0, 0, 0, 0});
    try {
      ViterbiAlign(d);
      FAIL("expected TooFewFrames");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kTooFewFrames);
    }
  }
  SUBCASE("ties resolve to the lexicographically smallest path") {
    DistanceMatrix d(2, 4, std::vector<double>(8, 1.0));
    CHECK(ViterbiAlign(d).assignment == Assign{0, 0, 0, 1});
  }
}

TEST_CASE("ViterbiAlign matches brute force enumeration") {
  std::mt19937_64 rng(2024);
  int trials = 0;
  for (int round = 0; round < 600; ++round) {
    bool integral = round % 2 == 1;
    std::size_t n = 1 + rng() % 4;
    std::size_t m = n + rng() % (9 - n);
    auto d = oracle::RandomMatrix(rng, n, m, integral);
    auto ours = ViterbiAlign(d);
    auto ref = oracle::BruteForceAlign(d);
    CHECK(IsValidAlignment(ours, n, m));
    CHECK(PathCost(d, ours) == doctest::Approx(ref.cost).epsilon(1e-12));
    CHECK(ours.assignment == ref.assignment);
    ++trials;
  }
  CHECK(trials >= 500);
}

TEST_CASE("brute force enumerates C(M-1, N-1) alignments") {
  auto binom = [](std::size_t a, std::size_t b) {
    double r = 1;
    for (std::size_t k = 1; k <= b; ++k) r = r * (a - b + k) / k;
    return static_cast<std::size_t>(std::llround(r));
  };
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = n; m <= 8; ++m) {
      auto d = oracle::RandomMatrix(rng, n, m, false);
      CHECK(oracle::BruteForceAlign(d).count == binom(m - 1, n - 1));
    }
  }
}

TEST_CASE("ViterbiAlign is invariant to shift and positive scale") {
  std::mt19937_64 rng(77);
  for (double c : {0.5, 3.7}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t n = 1 + rng() % 4;
      std::size_t m = n + rng() % (9 - n);
      auto d = oracle::RandomMatrix(rng, n, m, false);
      auto base = ViterbiAlign(d);
      auto shifted = ViterbiAlign(Scaled(d, 1.0, c));
      auto scaled = ViterbiAlign(Scaled(d, c, 0.0));
      CHECK(shifted == base);
      CHECK(scaled == base);
      double cost = PathCost(d, base);
      CHECK(PathCost(Scaled(d, 1.0, c), shifted) ==
            doctest::Approx(cost + c * m).epsilon(1e-6));
      CHECK(PathCost(Scaled(d, c, 0.0), scaled) ==
            doctest::Approx(c * cost).epsilon(1e-6));
    }
  }
}

TEST_CASE("ViterbiAlign is invariant to per-column shifts") {
  std::mt19937_64 rng(78);
  std::uniform_real_distribution<double> u(0.0, 40.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 4;
    std::size_t m = n + rng() % (9 - n);
    auto d = oracle::RandomMatrix(rng, n, m, false);
    std::vector<double> data = d.data();
    for (std::size_t j = 0; j < m; ++j) {
      double c = u(rng);
      for (std::size_t i = 0; i < n; ++i) data[i * m + j] += c;
    }
    CHECK(ViterbiAlign(DistanceMatrix(n, m, data)) == ViterbiAlign(d));
  }
}

TEST_CASE("SoftAlignment") {
  SUBCASE("two tokens") {
    SoftAlignment s(DistanceMatrix(2, 1, {1.0, 2.0}));
    CHECK(s.at(0, 0) == doctest::Approx(0.7311).epsilon(1e-4));
    CHECK(s.at(1, 0) == doctest::Approx(0.2689).epsilon(1e-4));
  }
  SUBCASE("uniform column") {
    SoftAlignment s(DistanceMatrix(4, 1, {2, 2, 2, 2}));
    for (std::size_t i = 0; i < 4; ++i) CHECK(s.at(i, 0) == doctest::Approx(0.25));
  }
  SUBCASE("large gap saturates without overflow") {
    SoftAlignment s(DistanceMatrix(2, 1, {0.0, 1000.0}));
    CHECK(s.at(0, 0) == doctest::Approx(1.0));
    CHECK(s.at(1, 0) >= 0.0);
    CHECK(s.at(1, 0) < 1e-300);
  }
  SUBCASE("columns are distributions and the hard path is unchanged") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t n = 1 + rng() % 4;
      std::size_t m = n + rng() % (9 - n);
      auto d = oracle::RandomMatrix(rng, n, m, false);
      SoftAlignment s(d);
      for (std::size_t j = 0; j < m; ++j) {
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(s.at(i, j) >= 0.0);
          CHECK(s.at(i, j) <= 1.0);
          total += s.at(i, j);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      }
      CHECK(ViterbiAlign(s.NegativeLog()) == ViterbiAlign(d));
    }
  }
}

TEST_CASE("FramesPerToken") {
  CHECK(FramesPerToken(HardAlignment{{0, 0, 1, 2, 2, 2}}) ==
        std::vector<std::size_t>{2, 1, 3});
  CHECK(FramesPerToken(HardAlignment{{0, 1}}) == std::vector<std::size_t>{1, 1});
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 4;
    std::size_t m = n + rng() % (9 - n);
    auto a = ViterbiAlign(oracle::RandomMatrix(rng, n, m, false));
    auto counts = FramesPerToken(a);
    REQUIRE(counts.size() == n);
    std::size_t total = 0;
    for (auto c : counts) {
      CHECK(c >= 1);
      total += c;
    }
    CHECK(total == m);
  }
}

TEST_CASE("IsValidAlignment") {
  CHECK(IsValidAlignment(HardAlignment{{0, 1, 1}}, 2, 3));
  CHECK_FALSE(IsValidAlignment(HardAlignment{{0, 0, 0}}, 2, 3));
  CHECK_FALSE(IsValidAlignment(HardAlignment{{0, 2, 2}}, 3, 3));
  CHECK_FALSE(IsValidAlignment(HardAlignment{{1, 1, 1}}, 2, 3));
  CHECK_FALSE(IsValidAlignment(HardAlignment{{0, 1, 0}}, 2, 3));
  CHECK_FALSE(IsValidAlignment(HardAlignment{{0, 1}}, 2, 3));
}

}  // namespace
}  // namespace hetdis
