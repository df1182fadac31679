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

#include "gamedit/edit.hpp"

#include <functional>
#include <random>

#include "gtest/gtest.h"
#include "test_support.hpp"

namespace gamedit {
namespace {

using V = std::vector<double>;

GamModel small_model() {
  GamModel model;
  model.terms.push_back(FeatureTerm{"x", TermKind::kContinuous, {0, 10, 20, 30}, {},
                                    {2, 7, 1, 8}, {1, 1, 1, 1}, std::nullopt});
  model.terms.push_back(FeatureTerm{"c", TermKind::kCategorical, {}, {"a", "b", "c"},
                                    {0.3, -0.2, 0.0}, {4, 4, 2}, std::nullopt});
  model.interactions.push_back({"x", "c", V(12, 0.1)});
  validate_model(model);
  return model;
}

V scores_after(const GamModel& model, const EditOp& op) {
  const EditResult r = apply_edit(model, op);
  return r.model.term(op.selection.term_name).scores;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kBadRequest;
}

TEST(EditTest, HandExamples) {
  GamModel m = small_model();
  EXPECT_EQ(scores_after(m, {DeleteEdit{}, {"c", {0, 1}}}), (V{0, 0, 0}));
  m.terms[0].scores = {0, 1, 5, 5};
  EXPECT_EQ(scores_after(m, {MoveEdit{1.0}, {"x", {0, 1}}}), (V{1, 2, 5, 5}));
  m.terms[0].scores = {5, 1, 9, 0};
  EXPECT_EQ(scores_after(m, {AlignEdit{AlignAnchor::kLeft}, {"x", {0, 1, 2}}}), (V{5, 5, 5, 0}));
  m.terms[0].scores = {4, 7, 7, 0};
  EXPECT_EQ(scores_after(m, {AlignEdit{AlignAnchor::kRight}, {"x", {0, 1, 2}}}), (V{7, 7, 7, 0}));
}

TEST(EditTest, DiffRecordsExactValues) {
  const GamModel m = small_model();
  const EditResult r = apply_edit(m, {MoveEdit{0.5}, {"x", {1, 2}}});
  EXPECT_EQ(r.diff.term_name, "x");
  EXPECT_EQ(r.diff.bin_indices, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(r.diff.old_scores, (V{7, 1}));
  EXPECT_EQ(r.diff.new_scores, (V{7.5, 1.5}));
  EXPECT_FALSE(r.diff.is_noop());
  EXPECT_EQ(m, small_model());
}

TEST(EditTest, NoOpDiffIsFlagged) {
  GamModel m = small_model();
  m.terms[1].scores = {0, 0, 0};
  EXPECT_TRUE(apply_edit(m, {DeleteEdit{}, {"c", {0, 1, 2}}}).diff.is_noop());
  EXPECT_TRUE(apply_edit(m, {MoveEdit{0.0}, {"x", {0}}}).diff.is_noop());
}

TEST(InterpolateTest, LinearAndEqualBins) {
  const V xs{0, 10, 20, 30}, s{2, 7, 1, 8}, w{1, 1, 1, 1};
  const V linear = interpolate_scores(xs, s, w, {InterpolationMode::kLinear, 1});
  EXPECT_EQ(linear.front(), 2.0);
  EXPECT_EQ(linear.back(), 8.0);
  EXPECT_NEAR(linear[1], 4.0, 1e-12);
  EXPECT_NEAR(linear[2], 6.0, 1e-12);
  const V equal = interpolate_scores(xs, s, w, {InterpolationMode::kEqualBins, 2});
  EXPECT_NEAR(equal[0], 3.5, 1e-12);
  EXPECT_NEAR(equal[1], 3.5, 1e-12);
  EXPECT_NEAR(equal[2], 6.5, 1e-12);
  EXPECT_NEAR(equal[3], 6.5, 1e-12);
  const V one = interpolate_scores(xs, s, w, {InterpolationMode::kEqualBins, 1});
  for (double v : one) EXPECT_NEAR(v, 5.0, 1e-12);
  EXPECT_THROW(interpolate_scores(xs, s, w, {InterpolationMode::kEqualBins, 5}), Error);
  EXPECT_THROW(interpolate_scores(xs, s, w, {InterpolationMode::kEqualBins, 0}), Error);
}

TEST(InterpolateTest, Regression) {
  const V collinear = interpolate_scores(V{0, 10, 20}, V{0, 10, 20}, V{1, 1, 1},
                                         {InterpolationMode::kRegression, 1});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(collinear[i], 10.0 * i, 1e-12);
  // Weighted OLS by hand: points (0,0) w=1, (1,2) w=1, (2,1) w=2.
  // mean x = 1.25, mean y = 1; slope = sxy / sxx = 1 / 2.75.
  const V fitted = interpolate_scores(V{0, 1, 2}, V{0, 2, 1}, V{1, 1, 2},
                                      {InterpolationMode::kRegression, 1});
  const double slope = 1.0 / 2.75;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(fitted[i], 1.0 + slope * (static_cast<double>(i) - 1.25), 1e-12);
  }
}

TEST(InterpolateTest, Degenerate) {
  EXPECT_EQ(code_of([] {
              interpolate_scores(V{1, 1}, V{0, 1}, V{1, 1}, {InterpolationMode::kLinear, 1});
            }),
            ErrorCode::kDegenerateGeometry);
  EXPECT_EQ(code_of([] {
              interpolate_scores(V{1}, V{0}, V{1}, {InterpolationMode::kLinear, 1});
            }),
            ErrorCode::kInvalidSelection);
}

TEST(AlignTest, Anchors) {
  EXPECT_EQ(align_scores(V{1, 3}, V{1, 3}, AlignAnchor::kWeightedMean), (V{2.5, 2.5}));
  for (auto anchor : {AlignAnchor::kLeft, AlignAnchor::kRight, AlignAnchor::kWeightedMean}) {
    EXPECT_EQ(align_scores(V{4.25}, V{0}, anchor), V{4.25});
  }
  EXPECT_EQ(code_of([] { align_scores(V{1, 3}, V{0, 0}, AlignAnchor::kWeightedMean); }),
            ErrorCode::kDegenerateCounts);
  // Empty bins do not pull the mean.
  EXPECT_EQ(align_scores(V{1, 100, 3}, V{1, 0, 1}, AlignAnchor::kWeightedMean), (V{2, 2, 2}));
}

TEST(EditTest, SelectionErrors) {
  const GamModel m = small_model();
  EXPECT_EQ(code_of([&] { apply_edit(m, {DeleteEdit{}, {"x", {}}}); }),
            ErrorCode::kInvalidSelection);
  EXPECT_EQ(code_of([&] { apply_edit(m, {DeleteEdit{}, {"x", {0, 2}}}); }),
            ErrorCode::kInvalidSelection);
  EXPECT_EQ(code_of([&] { apply_edit(m, {DeleteEdit{}, {"x", {1, 0}}}); }),
            ErrorCode::kInvalidSelection);
  EXPECT_EQ(code_of([&] { apply_edit(m, {DeleteEdit{}, {"x", {4}}}); }),
            ErrorCode::kInvalidSelection);
  EXPECT_EQ(code_of([&] { apply_edit(m, {DeleteEdit{}, {"nope", {0}}}); }),
            ErrorCode::kInvalidSelection);
  // Categorical selections need not be contiguous.
  EXPECT_NO_THROW(apply_edit(m, {DeleteEdit{}, {"c", {0, 2}}}));
}

TEST(EditTest, InteractionsAreNotEditable) {
  const GamModel m = small_model();
  EXPECT_EQ(code_of([&] { apply_edit(m, {DeleteEdit{}, {"c x x", {0}}}); }),
            ErrorCode::kInvalidSelection);
  const std::string name = m.interactions[0].name();
  EXPECT_EQ(code_of([&] { apply_edit(m, {DeleteEdit{}, {name, {0}}}); }),
            ErrorCode::kInteractionNotEditable);
  EXPECT_EQ(code_of([&] { select_x_range(m, name, 0.0, 1.0); }),
            ErrorCode::kInteractionNotEditable);
  const std::vector<std::string> labels{"a"};
  EXPECT_EQ(code_of([&] { select_labels(m, name, labels); }),
            ErrorCode::kInteractionNotEditable);
}

TEST(EditTest, CategoricalNeedsUnorderedTools) {
  const GamModel m = small_model();
  const Selection sel{"c", {0, 1}};
  EXPECT_EQ(code_of([&] { apply_edit(m, {InterpolateEdit{}, sel}); }),
            ErrorCode::kInvalidSelection);
  EXPECT_EQ(code_of([&] { apply_edit(m, {MonotonizeEdit{}, sel}); }),
            ErrorCode::kInvalidSelection);
  EXPECT_NO_THROW(apply_edit(m, {MoveEdit{1}, sel}));
  EXPECT_NO_THROW(apply_edit(m, {AlignEdit{AlignAnchor::kWeightedMean}, sel}));
}

TEST(SelectTest, RangesAndLabels) {
  const GamModel m = small_model();
  EXPECT_EQ(select_x_range(m, "x", 5.0, 20.0).bin_indices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(select_x_range(m, "x", 10.0, 19.9).bin_indices, (std::vector<std::size_t>{1}));
  EXPECT_EQ(select_x_range(m, "x", 25.0, std::nullopt).bin_indices,
            (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(select_x_range(m, "x", std::nullopt, std::nullopt).bin_indices.size(), 4u);
  EXPECT_EQ(select_x_range(m, "x", -100.0, -50.0).bin_indices, (std::vector<std::size_t>{0}));
  EXPECT_THROW(select_x_range(m, "x", 5.0, 1.0), Error);
  EXPECT_THROW(select_x_range(m, "c", 5.0, 1.0), Error);
  const std::vector<std::string> labels{"c", "a", "c"};
  EXPECT_EQ(select_labels(m, "c", labels).bin_indices, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(select_bin_range(m, "x", 1, 3).bin_indices, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(ToolNameTest, Names) {
  EXPECT_EQ(tool_name(MoveEdit{}), "move");
  EXPECT_EQ(tool_name(InterpolateEdit{InterpolationMode::kEqualBins, 2}), "interpolate-equal");
  EXPECT_EQ(tool_name(MonotonizeEdit{MonotoneDirection::kDecreasing}), "monotonize-dec");
  EXPECT_EQ(tool_name(AlignEdit{AlignAnchor::kWeightedMean}), "align-mean");
  EXPECT_EQ(tool_name(DeleteEdit{}), "delete");
}

EditOp random_op(std::mt19937_64& rng, const GamModel& model) {
  std::uniform_int_distribution<std::size_t> pick_term(0, model.terms.size() - 1);
  const FeatureTerm& term = model.terms[pick_term(rng)];
  std::uniform_int_distribution<std::size_t> pick_bin(0, term.bin_count() - 1);
  std::size_t a = pick_bin(rng), b = pick_bin(rng);
  if (a > b) std::swap(a, b);
  Selection sel{term.name, {}};
  for (std::size_t i = a; i <= b; ++i) sel.bin_indices.push_back(i);
  std::uniform_int_distribution<int> pick_kind(0, term.is_continuous() ? 6 : 3);
  std::uniform_real_distribution<double> delta(-1, 1);
  switch (pick_kind(rng)) {
    case 0: return {MoveEdit{delta(rng)}, sel};
    case 1: return {DeleteEdit{}, sel};
    case 2: return {AlignEdit{AlignAnchor::kLeft}, sel};
    case 3: return {AlignEdit{AlignAnchor::kRight}, sel};
    case 4: return {MonotonizeEdit{MonotoneDirection::kIncreasing}, sel};
    case 5: return {MonotonizeEdit{MonotoneDirection::kDecreasing}, sel};
    default:
      if (sel.bin_indices.size() < 2) return {MoveEdit{delta(rng)}, sel};
      return {InterpolateEdit{InterpolationMode::kLinear, 1}, sel};
  }
}

TEST(EditPropertyTest, LocalityAndPurity) {
  std::mt19937_64 rng(31);
  testing::RandomModelOptions options;
  options.interactions = true;
  for (int trial = 0; trial < 400; ++trial) {
    const GamModel model = testing::random_model(rng, options);
    const GamModel before = model;
    const EditOp op = random_op(rng, model);
    const EditResult r = apply_edit(model, op);
    EXPECT_EQ(model, before);
    EXPECT_EQ(r.model.intercept, model.intercept);
    EXPECT_EQ(r.model.interactions, model.interactions);
    for (std::size_t t = 0; t < model.terms.size(); ++t) {
      const FeatureTerm& a = model.terms[t];
      const FeatureTerm& b = r.model.terms[t];
      EXPECT_EQ(a.counts, b.counts);
      EXPECT_EQ(a.bin_edges, b.bin_edges);
      EXPECT_EQ(a.score_stddev, b.score_stddev);
      for (std::size_t i = 0; i < a.bin_count(); ++i) {
        const bool selected =
            a.name == op.selection.term_name &&
            std::find(op.selection.bin_indices.begin(), op.selection.bin_indices.end(), i) !=
                op.selection.bin_indices.end();
        if (!selected) {
          EXPECT_EQ(a.scores[i], b.scores[i]);
        }
      }
    }
    // The diff replays the edit and reverts it.
    GamModel replay = model;
    ASSERT_TRUE(apply_diff(replay, r.diff, DiffDirection::kForward));
    EXPECT_EQ(replay, r.model);
    ASSERT_TRUE(apply_diff(replay, r.diff, DiffDirection::kBackward));
    EXPECT_EQ(replay, model);
  }
}

TEST(EditPropertyTest, AlignDeleteAndMonotonizeAreIdempotent) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 3000; ++trial) {
    const GamModel model = testing::random_model(rng);
    EditOp op = random_op(rng, model);
    if (std::holds_alternative<MoveEdit>(op.kind)) op.kind = DeleteEdit{};
    const GamModel once = apply_edit(model, op).model;
    const EditResult twice = apply_edit(once, op);
    EXPECT_EQ(twice.model, once) << tool_name(op.kind);
    EXPECT_TRUE(twice.diff.is_noop());
  }
}

TEST(EditPropertyTest, LinearInterpolationKeepsEndpoints) {
  std::mt19937_64 rng(43);
  testing::RandomModelOptions options;
  options.categorical_fraction = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const GamModel model = testing::random_model(rng, options);
    const FeatureTerm& term = model.terms[0];
    if (term.bin_count() < 2) continue;
    const Selection sel = select_bin_range(model, term.name, 0, term.bin_count() - 1);
    const V out = scores_after(model, {InterpolateEdit{}, sel});
    EXPECT_EQ(out.front(), term.scores.front());
    EXPECT_EQ(out.back(), term.scores.back());
  }
}

TEST(ApplyDiffTest, RejectsMismatchedState) {
  GamModel m = small_model();
  const EditDiff diff{"x", {0}, {99}, {1}};
  EXPECT_FALSE(apply_diff(m, diff, DiffDirection::kForward));
  EXPECT_EQ(m, small_model());
  EXPECT_FALSE(apply_diff(m, EditDiff{"nope", {0}, {2}, {1}}, DiffDirection::kForward));
  EXPECT_FALSE(apply_diff(m, EditDiff{"x", {9}, {2}, {1}}, DiffDirection::kForward));
  EXPECT_FALSE(apply_diff(m, EditDiff{"x", {0}, {2}, {1}}, DiffDirection::kBackward));
}

}  // namespace
}  // namespace gamedit
