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

#include "gamedit/isotonic.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "test_support.hpp"

namespace gamedit {
namespace {

using V = std::vector<double>;

V fit(const V& s, const V& w, MonotoneDirection d) { return monotonize(s, w, d); }

TEST(MonotonizeTest, HandCases) {
  EXPECT_EQ(fit({3, 1, 2}, {1, 1, 1}, MonotoneDirection::kIncreasing), (V{2, 2, 2}));
  EXPECT_EQ(fit({1, 3}, {3, 1}, MonotoneDirection::kDecreasing), (V{1.5, 1.5}));
  EXPECT_EQ(fit({1, 3}, {3, 1}, MonotoneDirection::kIncreasing), (V{1, 3}));
  EXPECT_EQ(fit({}, {}, MonotoneDirection::kIncreasing), V{});
  EXPECT_EQ(fit({4}, {0}, MonotoneDirection::kDecreasing), V{4});
}

TEST(MonotonizeTest, ZeroWeightBinsFollowTheirNeighbours) {
  // The empty bin carries almost no weight, so it is absorbed into the block.
  const V out = fit({1, 10, 2}, {5, 0, 5}, MonotoneDirection::kIncreasing);
  EXPECT_NEAR(out[0], 1.0, 1e-12);
  EXPECT_NEAR(out[1], 2.0, 1e-6);
  EXPECT_NEAR(out[2], 2.0, 1e-6);
  EXPECT_LE(out[1], out[2]);
}

TEST(MonotonizeTest, RejectsBadWeights) {
  EXPECT_THROW(fit({1, 2}, {1}, MonotoneDirection::kIncreasing), Error);
  EXPECT_THROW(fit({1, 2}, {1, -1}, MonotoneDirection::kIncreasing), Error);
}

TEST(MonotonizeTest, FeasibleInputIsReturnedExactly) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 500; ++trial) {
    V s(1 + trial % 12), w(s.size());
    for (auto& x : s) x = u(rng);
    for (auto& x : w) x = std::abs(u(rng));
    std::sort(s.begin(), s.end());
    EXPECT_EQ(fit(s, w, MonotoneDirection::kIncreasing), s);
    std::reverse(s.begin(), s.end());
    EXPECT_EQ(fit(s, w, MonotoneDirection::kDecreasing), s);
  }
}

TEST(MonotonizeTest, MatchesExhaustiveMinimizer) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_int_distribution<int> count(0, 20);
  for (int trial = 0; trial < 1500; ++trial) {
    V s(len(rng)), w(s.size());
    for (auto& x : s) x = std::round(u(rng) * 4.0) / 4.0;  // ties are common
    for (auto& x : w) x = count(rng);
    for (bool increasing : {true, false}) {
      const V got = fit(s, w, increasing ? MonotoneDirection::kIncreasing
                                         : MonotoneDirection::kDecreasing);
      const V want = testing::brute_force_isotonic(s, w, increasing);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_NEAR(got[i], want[i], 1e-9) << "trial " << trial << " bin " << i;
      }
      for (std::size_t i = 1; i < got.size(); ++i) {
        if (increasing) {
          EXPECT_LE(got[i - 1], got[i]);
        } else {
          EXPECT_GE(got[i - 1], got[i]);
        }
      }
    }
  }
}

TEST(MonotonizeTest, DirectionDuality) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    V s(1 + trial % 10), w(s.size()), neg(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = u(rng);
      neg[i] = -s[i];
      w[i] = std::abs(u(rng));
    }
    const V dec = fit(s, w, MonotoneDirection::kDecreasing);
    const V inc = fit(neg, w, MonotoneDirection::kIncreasing);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(dec[i], -inc[i]);
  }
}

}  // namespace
}  // namespace gamedit
