/*
 * Copyright 2026 The gamedit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gamedit/error.hpp"

namespace gamedit {

enum class MonotoneDirection { kIncreasing, kDecreasing };

// Weight given to bins that saw no training samples, so that a block made
// only of empty bins still has a defined mean.
inline constexpr double kEmptyBinWeight = 1e-9;

inline double effective_weight(double w) { return w > 0.0 ? w : kEmptyBinWeight; }

namespace internal {

// A one-bin block keeps its value as the mean instead of (w * v) / w, which
// can be one ulp off and would make a second pass move the scores.
struct PavaBlock {
  double weight;
  double weighted_sum;
  double mean;
  std::size_t length;
};

// Non-decreasing fit. Blocks only merge on a strict violation, so feasible
// input comes back untouched.
inline std::vector<double> pava_increasing(std::span<const double> values,
                                           std::span<const double> weights) {
  std::vector<PavaBlock> blocks;
  blocks.reserve(values.size());
  std::vector<double> out(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = effective_weight(weights[i]);
    blocks.push_back({w, w * values[i], values[i], 1});
    while (blocks.size() > 1) {
      const PavaBlock& last = blocks.back();
      const PavaBlock& prev = blocks[blocks.size() - 2];
      if (!(prev.mean > last.mean)) break;
      const double weight = prev.weight + last.weight;
      const double sum = prev.weighted_sum + last.weighted_sum;
      PavaBlock merged{weight, sum, sum / weight, prev.length + last.length};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  std::size_t pos = 0;
  for (const PavaBlock& block : blocks) {
    for (std::size_t k = 0; k < block.length; ++k) out[pos + k] = block.mean;
    pos += block.length;
  }
  return out;
}

}  // namespace internal

// Weighted isotonic regression by pool-adjacent-violators: the weighted
// least-squares projection of `scores` onto sequences that are monotone in
// `direction`. Non-positive weights are replaced by kEmptyBinWeight.
inline std::vector<double> monotonize(std::span<const double> scores,
                                      std::span<const double> weights,
                                      MonotoneDirection direction) {
  if (scores.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidValue, "weights",
                "monotonize needs one weight per score");
  }
  for (double w : weights) {
    if (w < 0.0) {
      throw Error(ErrorCode::kInvalidValue, "weights", "negative weight");
    }
  }
  if (direction == MonotoneDirection::kIncreasing) {
    return internal::pava_increasing(scores, weights);
  }
  std::vector<double> negated(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) negated[i] = -scores[i];
  std::vector<double> out = internal::pava_increasing(negated, weights);
  for (double& v : out) v = -v;
  return out;
}

}  // namespace gamedit
