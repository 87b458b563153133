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

#ifndef HETDIS_ALIGNMENT_H_
#define HETDIS_ALIGNMENT_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hetdis {

// Row-major float32 matrix of encodings (token side or frame side).
class EncodingMatrix {
 public:
  EncodingMatrix() = default;
  // Throws kDimMismatch when data.size() != rows * dim, kNonFiniteValue on
  // NaN/Inf.
  EncodingMatrix(std::size_t rows, std::size_t dim, std::vector<float> data);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  const std::vector<float>& data() const { return data_; }
  std::span<const float> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }

  bool operator==(const EncodingMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> data_;
};

// Context-free token encodings: one vector per phoneme or grapheme symbol.
class EncodingTable {
 public:
  explicit EncodingTable(std::size_t dim = 0) : dim_(dim) {}

  // Throws kDimMismatch on a wrong-length vector, kDuplicateSymbol on reuse,
  // kNonFiniteValue on NaN/Inf.
  void Add(std::string symbol, std::vector<float> vector);

  const std::vector<float>* Find(std::string_view symbol) const;

  // Stacks the vectors of symbols; throws kMissingSymbol.
  EncodingMatrix Lookup(const std::vector<std::string>& symbols) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const std::map<std::string, std::vector<float>, std::less<>>& vectors() const {
    return vectors_;
  }

 private:
  std::size_t dim_;
  std::map<std::string, std::vector<float>, std::less<>> vectors_;
};

// N tokens x M frames of non-negative L2 distances, held in double.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  // Throws kInvalidValue unless both dimensions are positive, data has
  // n_tokens * n_frames entries and every entry is finite and >= 0.
  DistanceMatrix(std::size_t n_tokens, std::size_t n_frames,
                 std::vector<double> data);

  std::size_t n_tokens() const { return n_tokens_; }
  std::size_t n_frames() const { return n_frames_; }
  double at(std::size_t token, std::size_t frame) const {
    return data_[token * n_frames_ + frame];
  }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t n_tokens_ = 0;
  std::size_t n_frames_ = 0;
  std::vector<double> data_;
};

// assignment[j] is the 0-based token aligned to frame j. A valid alignment
// is non-decreasing, starts at token 0, ends at token N-1 and never skips a
// token, so every token owns at least one frame.
struct HardAlignment {
  std::vector<std::size_t> assignment;

  bool operator==(const HardAlignment&) const = default;
};

bool IsValidAlignment(const HardAlignment& align, std::size_t n_tokens,
                      std::size_t n_frames);

// Euclidean distances between every token row and every frame row.
// Throws kDimMismatch when the encodings differ in width, kInvalidValue when
// either side is empty.
DistanceMatrix ComputeDistanceMatrix(const EncodingMatrix& tokens,
                                     const EncodingMatrix& frames);

// Minimum-cost monotonic surjective alignment. Among equal-cost paths the
// lexicographically smallest assignment wins, i.e. tokens advance as late
// as possible. Throws kTooFewFrames when n_frames < n_tokens.
HardAlignment ViterbiAlign(const DistanceMatrix& dist);

// Sum of dist[assignment[j]][j], accumulated in frame order.
double PathCost(const DistanceMatrix& dist, const HardAlignment& align);

// Column-wise softmax of -dist.
class SoftAlignment {
 public:
  explicit SoftAlignment(const DistanceMatrix& dist);

  std::size_t n_tokens() const { return n_tokens_; }
  std::size_t n_frames() const { return n_frames_; }
  double at(std::size_t token, std::size_t frame) const {
    return prob_[token * n_frames_ + frame];
  }

  // -log p as a distance matrix; Viterbi over it yields the same path as
  // over the raw distances since the two differ by a per-column constant.
  DistanceMatrix NegativeLog() const;

 private:
  std::size_t n_tokens_;
  std::size_t n_frames_;
  std::vector<double> prob_;
};

// Number of frames owned by each token; sums to the frame count. The token
// count is taken from the last assignment, so align must be valid.
std::vector<std::size_t> FramesPerToken(const HardAlignment& align);

}  // namespace hetdis

#endif  // HETDIS_ALIGNMENT_H_
