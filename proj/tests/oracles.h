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

#ifndef HETDIS_TESTS_ORACLES_H_
#define HETDIS_TESTS_ORACLES_H_

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "hetdis/alignment.h"

namespace hetdis::oracle {

struct BruteForceResult {
  std::vector<std::size_t> assignment;
  double cost = std::numeric_limits<double>::infinity();
  std::size_t count = 0;  // number of valid alignments enumerated
};

// Enumerates every monotonic, surjective frame-to-token assignment in
// lexicographic order and keeps the first one with minimal cost.
inline BruteForceResult BruteForceAlign(const DistanceMatrix& dist) {
  const std::size_t n = dist.n_tokens();
  const std::size_t m = dist.n_frames();
  BruteForceResult best;
  std::vector<std::size_t> a(m, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == m) {
      if (a.back() != n - 1) return;
      double cost = 0.0;
      for (std::size_t f = 0; f < m; ++f) cost += dist.at(a[f], f);
      ++best.count;
      if (cost < best.cost) {
        best.cost = cost;
        best.assignment = a;
      }
      return;
    }
    if (j == 0) {
      a[0] = 0;
      rec(1);
      return;
    }
    for (std::size_t step = 0; step <= 1; ++step) {
      std::size_t t = a[j - 1] + step;
      if (t >= n) continue;
      a[j] = t;
      rec(j + 1);
    }
  };
  rec(0);
  return best;
}

inline double L2(const std::vector<float>& x, const std::vector<float>& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double d = static_cast<double>(x[k]) - static_cast<double>(y[k]);
    s += d * d;
  }
  return std::sqrt(s);
}

// Average distance of a word straight from vectors: the sum over the
// frames aligned to any of its tokens divided by the number of such frames.
inline double AverageDistance(const std::vector<std::vector<float>>& tokens,
                              const std::vector<std::vector<float>>& frames,
                              const std::vector<std::size_t>& assignment,
                              std::size_t begin, std::size_t end) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < frames.size(); ++j) {
    std::size_t t = assignment[j];
    if (t < begin || t >= end) continue;
    sum += L2(tokens[t], frames[j]);
    ++count;
  }
  return sum / static_cast<double>(count);
}

inline DistanceMatrix RandomMatrix(std::mt19937_64& rng, std::size_t n,
                                   std::size_t m, bool integral) {
  std::vector<double> data(n * m);
  std::uniform_real_distribution<double> real(0.0, 10.0);
  std::uniform_int_distribution<int> small(0, 3);
  for (auto& v : data) v = integral ? small(rng) : real(rng);
  return DistanceMatrix(n, m, std::move(data));
}

}  // namespace hetdis::oracle

#endif  // HETDIS_TESTS_ORACLES_H_
