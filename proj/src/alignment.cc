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

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hetdis/error.h"

namespace hetdis {

namespace {

void CheckFinite(const std::vector<float>& values) {
  for (float v : values) {
    if (!std::isfinite(v))
      throw Error(ErrorCode::kNonFiniteValue, "non-finite encoding value");
  }
}

}  // namespace

EncodingMatrix::EncodingMatrix(std::size_t rows, std::size_t dim,
                               std::vector<float> data)
    : rows_(rows), dim_(dim), data_(std::move(data)) {
  if (data_.size() != rows_ * dim_) {
    throw Error(ErrorCode::kDimMismatch,
                "matrix data has " + std::to_string(data_.size()) +
                    " values, expected " + std::to_string(rows_ * dim_));
  }
  CheckFinite(data_);
}

void EncodingTable::Add(std::string symbol, std::vector<float> vector) {
  if (vector.size() != dim_) {
    throw Error(ErrorCode::kDimMismatch,
                "symbol '" + symbol + "' has " + std::to_string(vector.size()) +
                    " values, table dim is " + std::to_string(dim_));
  }
  CheckFinite(vector);
  if (vectors_.contains(symbol))
    throw Error(ErrorCode::kDuplicateSymbol, "symbol '" + symbol + "'");
  vectors_.emplace(std::move(symbol), std::move(vector));
}

const std::vector<float>* EncodingTable::Find(std::string_view symbol) const {
  auto it = vectors_.find(symbol);
  return it == vectors_.end() ? nullptr : &it->second;
}

EncodingMatrix EncodingTable::Lookup(
    const std::vector<std::string>& symbols) const {
  std::vector<float> data;
  data.reserve(symbols.size() * dim_);
  for (const std::string& s : symbols) {
    const auto* v = Find(s);
    if (v == nullptr)
      throw Error(ErrorCode::kMissingSymbol, "no encoding for '" + s + "'");
    data.insert(data.end(), v->begin(), v->end());
  }
  return EncodingMatrix(symbols.size(), dim_, std::move(data));
}

DistanceMatrix::DistanceMatrix(std::size_t n_tokens, std::size_t n_frames,
                               std::vector<double> data)
    : n_tokens_(n_tokens), n_frames_(n_frames), data_(std::move(data)) {
  if (n_tokens_ == 0 || n_frames_ == 0)
    throw Error(ErrorCode::kInvalidValue, "empty distance matrix");
  if (data_.size() != n_tokens_ * n_frames_)
    throw Error(ErrorCode::kInvalidValue, "distance matrix size mismatch");
  for (double v : data_) {
    if (!std::isfinite(v) || v < 0.0)
      throw Error(ErrorCode::kInvalidValue,
                  "distance entries must be finite and non-negative");
  }
}

bool IsValidAlignment(const HardAlignment& align, std::size_t n_tokens,
                      std::size_t n_frames) {
  const auto& a = align.assignment;
  if (n_tokens == 0 || a.size() != n_frames || a.empty()) return false;
  if (a.front() != 0 || a.back() != n_tokens - 1) return false;
  for (std::size_t j = 1; j < a.size(); ++j) {
    if (a[j] != a[j - 1] && a[j] != a[j - 1] + 1) return false;
  }
  return true;
}

DistanceMatrix ComputeDistanceMatrix(const EncodingMatrix& tokens,
                                     const EncodingMatrix& frames) {
  if (tokens.dim() != frames.dim()) {
    throw Error(ErrorCode::kDimMismatch,
                "token dim " + std::to_string(tokens.dim()) +
                    " vs frame dim " + std::to_string(frames.dim()));
  }
  const std::size_t n = tokens.rows();
  const std::size_t m = frames.rows();
  std::vector<double> data(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    auto t = tokens.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      auto f = frames.row(j);
      double sum = 0.0;
      for (std::size_t k = 0; k < t.size(); ++k) {
        double d = static_cast<double>(t[k]) - static_cast<double>(f[k]);
        sum += d * d;
      }
      data[i * m + j] = std::sqrt(sum);
    }
  }
  return DistanceMatrix(n, m, std::move(data));
}

HardAlignment ViterbiAlign(const DistanceMatrix& dist) {
  const std::size_t n = dist.n_tokens();
  const std::size_t m = dist.n_frames();
  if (m < n) {
    throw Error(ErrorCode::kTooFewFrames,
                std::to_string(n) + " tokens but only " + std::to_string(m) +
                    " frames");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // cost_to_go[i * m + j]: best cost of frames j..m-1 given frame j sits on
  // token i. Computing it backwards lets the forward pass pick the
  // lexicographically smallest optimal path greedily.
  std::vector<double> cost_to_go(n * m, kInf);
  cost_to_go[(n - 1) * m + (m - 1)] = dist.at(n - 1, m - 1);
  for (std::size_t j = m - 1; j-- > 0;) {
    // Token i at frame j needs n-1-i further tokens in m-1-j frames and
    // cannot exceed j.
    std::size_t lo = (n - 1 > m - 1 - j) ? (n - 1) - (m - 1 - j) : 0;
    std::size_t hi = std::min(j, n - 1);
    for (std::size_t i = lo; i <= hi; ++i) {
      double stay = cost_to_go[i * m + j + 1];
      double advance = i + 1 < n ? cost_to_go[(i + 1) * m + j + 1] : kInf;
      cost_to_go[i * m + j] = dist.at(i, j) + std::min(stay, advance);
    }
  }

  HardAlignment align;
  align.assignment.resize(m);
  std::size_t i = 0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    align.assignment[j] = i;
    double stay = cost_to_go[i * m + j + 1];
    double advance = i + 1 < n ? cost_to_go[(i + 1) * m + j + 1] : kInf;
    if (advance < stay) ++i;
  }
  align.assignment[m - 1] = i;
  return align;
}

double PathCost(const DistanceMatrix& dist, const HardAlignment& align) {
  double cost = 0.0;
  for (std::size_t j = 0; j < align.assignment.size(); ++j)
    cost += dist.at(align.assignment[j], j);
  return cost;
}

SoftAlignment::SoftAlignment(const DistanceMatrix& dist)
    : n_tokens_(dist.n_tokens()),
      n_frames_(dist.n_frames()),
      prob_(dist.n_tokens() * dist.n_frames()) {
  for (std::size_t j = 0; j < n_frames_; ++j) {
    double best = dist.at(0, j);
    for (std::size_t i = 1; i < n_tokens_; ++i) best = std::min(best, dist.at(i, j));
    double total = 0.0;
    for (std::size_t i = 0; i < n_tokens_; ++i) {
      double e = std::exp(best - dist.at(i, j));
      prob_[i * n_frames_ + j] = e;
      total += e;
    }
    for (std::size_t i = 0; i < n_tokens_; ++i) prob_[i * n_frames_ + j] /= total;
  }
}

DistanceMatrix SoftAlignment::NegativeLog() const {
  std::vector<double> data(prob_.size());
  for (std::size_t k = 0; k < prob_.size(); ++k) {
    // Clamp so that vanishing probabilities stay finite.
    double p = std::max(prob_[k], std::numeric_limits<double>::min());
    data[k] = std::max(0.0, -std::log(p));
  }
  return DistanceMatrix(n_tokens_, n_frames_, std::move(data));
}

std::vector<std::size_t> FramesPerToken(const HardAlignment& align) {
  if (align.assignment.empty()) return {};
  std::vector<std::size_t> counts(align.assignment.back() + 1, 0);
  for (std::size_t token : align.assignment) ++counts[token];
  return counts;
}

}  // namespace hetdis
