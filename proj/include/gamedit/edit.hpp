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

// Shape-function editing tools. Every tool is a pure function from a model
// and a selection of bins on one univariate term to a new model plus the
// exact per-bin diff.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gamedit/error.hpp"
#include "gamedit/isotonic.hpp"
#include "gamedit/model.hpp"

namespace gamedit {

struct Selection {
  std::string term_name;
  // Sorted, duplicate free, and contiguous on continuous terms.
  std::vector<std::size_t> bin_indices;

  friend bool operator==(const Selection&, const Selection&) = default;
};

// Checks `selection` against `model` and returns the selected term.
inline const FeatureTerm& validate_selection(const GamModel& model,
                                             const Selection& selection) {
  auto index = model.find_term(selection.term_name);
  if (!index) {
    if (model.is_interaction(selection.term_name)) {
      throw Error(ErrorCode::kInteractionNotEditable, selection.term_name,
                  "interaction term '" + selection.term_name + "' cannot be edited");
    }
    throw Error(ErrorCode::kInvalidSelection, selection.term_name,
                "no univariate term named '" + selection.term_name + "'");
  }
  const FeatureTerm& term = model.terms[*index];
  const auto& bins = selection.bin_indices;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kInvalidSelection, selection.term_name,
                "selection on '" + selection.term_name + "': " + what);
  };
  if (bins.empty()) fail("no bins selected");
  for (std::size_t k = 0; k < bins.size(); ++k) {
    if (bins[k] >= term.bin_count()) {
      fail("bin " + std::to_string(bins[k]) + " out of range");
    }
    if (k > 0 && bins[k] <= bins[k - 1]) fail("bins must be sorted and unique");
    if (k > 0 && term.is_continuous() && bins[k] != bins[k - 1] + 1) {
      fail("continuous selections must be contiguous");
    }
  }
  return term;
}

inline Selection select_bin_range(const GamModel& model, std::string_view term_name,
                                  std::size_t first, std::size_t last) {
  Selection selection{std::string(term_name), {}};
  for (std::size_t i = first; i <= last && i >= first; ++i) {
    selection.bin_indices.push_back(i);
  }
  validate_selection(model, selection);
  return selection;
}

// All bins whose interval [edge_i, edge_{i+1}) meets [low, high]. A missing
// bound is unbounded on that side.
inline Selection select_x_range(const GamModel& model, std::string_view term_name,
                                std::optional<double> low,
                                std::optional<double> high) {
  if (model.is_interaction(term_name)) {
    throw Error(ErrorCode::kInteractionNotEditable, std::string(term_name),
                "interaction term '" + std::string(term_name) + "' cannot be edited");
  }
  const FeatureTerm& term = model.term(term_name);
  if (!term.is_continuous()) {
    throw Error(ErrorCode::kInvalidSelection, term.name,
                "x-range selection on categorical term '" + term.name + "'");
  }
  if (low && high && *low > *high) {
    throw Error(ErrorCode::kInvalidSelection, term.name, "empty x-range");
  }
  const std::size_t first = low ? bin_index(term, *low) : 0;
  const std::size_t last = high ? bin_index(term, *high) : term.bin_count() - 1;
  return select_bin_range(model, term_name, first, last);
}

inline Selection select_labels(const GamModel& model, std::string_view term_name,
                               std::span<const std::string> labels) {
  if (model.is_interaction(term_name)) {
    throw Error(ErrorCode::kInteractionNotEditable, std::string(term_name),
                "interaction term '" + std::string(term_name) + "' cannot be edited");
  }
  const FeatureTerm& term = model.term(term_name);
  Selection selection{term.name, {}};
  for (const std::string& label : labels) {
    selection.bin_indices.push_back(bin_index(term, std::string_view(label)));
  }
  std::sort(selection.bin_indices.begin(), selection.bin_indices.end());
  selection.bin_indices.erase(
      std::unique(selection.bin_indices.begin(), selection.bin_indices.end()),
      selection.bin_indices.end());
  validate_selection(model, selection);
  return selection;
}

struct MoveEdit {
  double delta = 0.0;
};

enum class InterpolationMode { kLinear, kEqualBins, kRegression };

struct InterpolateEdit {
  InterpolationMode mode = InterpolationMode::kLinear;
  // Segment count for kEqualBins.
  std::size_t segments = 1;
};

struct MonotonizeEdit {
  MonotoneDirection direction = MonotoneDirection::kIncreasing;
};

enum class AlignAnchor { kLeft, kRight, kWeightedMean };

struct AlignEdit {
  AlignAnchor anchor = AlignAnchor::kLeft;
};

struct DeleteEdit {};

using EditKind =
    std::variant<MoveEdit, InterpolateEdit, MonotonizeEdit, AlignEdit, DeleteEdit>;

struct EditOp {
  EditKind kind;
  Selection selection;
};

// Short tool identifier used in commit messages and edit scripts.
inline std::string tool_name(const EditKind& kind) {
  struct Visitor {
    std::string operator()(const MoveEdit&) const { return "move"; }
    std::string operator()(const InterpolateEdit& e) const {
      switch (e.mode) {
        case InterpolationMode::kLinear: return "interpolate";
        case InterpolationMode::kEqualBins: return "interpolate-equal";
        case InterpolationMode::kRegression: return "interpolate-regression";
      }
      return "interpolate";
    }
    std::string operator()(const MonotonizeEdit& e) const {
      return e.direction == MonotoneDirection::kIncreasing ? "monotonize-inc"
                                                           : "monotonize-dec";
    }
    std::string operator()(const AlignEdit& e) const {
      switch (e.anchor) {
        case AlignAnchor::kLeft: return "align-left";
        case AlignAnchor::kRight: return "align-right";
        case AlignAnchor::kWeightedMean: return "align-mean";
      }
      return "align";
    }
    std::string operator()(const DeleteEdit&) const { return "delete"; }
  };
  return std::visit(Visitor{}, kind);
}

struct EditDiff {
  std::string term_name;
  std::vector<std::size_t> bin_indices;
  std::vector<double> old_scores;
  std::vector<double> new_scores;

  bool is_noop() const { return old_scores == new_scores; }

  friend bool operator==(const EditDiff&, const EditDiff&) = default;
};

// Linear and equal-bin modes use the line through the first and last
// selected points; regression mode fits a weighted least-squares line.
// `xs` are the bins' left edges and must be non-decreasing.
inline std::vector<double> interpolate_scores(std::span<const double> xs,
                                              std::span<const double> scores,
                                              std::span<const double> weights,
                                              const InterpolateEdit& edit) {
  const std::size_t n = scores.size();
  if (xs.size() != n || weights.size() != n) {
    throw Error(ErrorCode::kInvalidValue, "interpolate", "length mismatch");
  }
  if (n < 2) {
    throw Error(ErrorCode::kInvalidSelection, "interpolate",
                "interpolation needs at least two bins");
  }
  const double x0 = xs.front();
  const double x1 = xs.back();
  if (!(x1 > x0)) {
    throw Error(ErrorCode::kDegenerateGeometry, "interpolate",
                "selected bins share one left edge");
  }
  std::vector<double> out(n);
  const double y0 = scores.front();
  const double y1 = scores.back();
  auto line = [&](double x) { return std::lerp(y0, y1, (x - x0) / (x1 - x0)); };

  switch (edit.mode) {
    case InterpolationMode::kLinear: {
      for (std::size_t i = 0; i < n; ++i) out[i] = line(xs[i]);
      // lerp is exact at t = 0 and t = 1, so the endpoints are untouched.
      break;
    }
    case InterpolationMode::kEqualBins: {
      const std::size_t segments = edit.segments;
      if (segments < 1 || segments > n) {
        throw Error(ErrorCode::kInvalidValue, "interpolate",
                    "equal-bin count must be between 1 and the selection size");
      }
      const double width = (x1 - x0) / static_cast<double>(segments);
      for (std::size_t i = 0; i < n; ++i) {
        auto segment = static_cast<std::size_t>(std::floor((xs[i] - x0) / width));
        segment = std::min(segment, segments - 1);
        const double mid = x0 + (static_cast<double>(segment) + 0.5) * width;
        out[i] = line(mid);
      }
      break;
    }
    case InterpolationMode::kRegression: {
      double sw = 0.0, swx = 0.0, swy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double w = effective_weight(weights[i]);
        sw += w;
        swx += w * xs[i];
        swy += w * scores[i];
      }
      const double mx = swx / sw;
      const double my = swy / sw;
      double sxx = 0.0, sxy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double w = effective_weight(weights[i]);
        sxx += w * (xs[i] - mx) * (xs[i] - mx);
        sxy += w * (xs[i] - mx) * (scores[i] - my);
      }
      if (!(sxx > 0.0)) {
        throw Error(ErrorCode::kDegenerateGeometry, "interpolate",
                    "selected bins share one left edge");
      }
      const double slope = sxy / sxx;
      for (std::size_t i = 0; i < n; ++i) out[i] = my + slope * (xs[i] - mx);
      break;
    }
  }
  return out;
}

inline std::vector<double> align_scores(std::span<const double> scores,
                                        std::span<const double> weights,
                                        AlignAnchor anchor) {
  if (scores.empty()) {
    throw Error(ErrorCode::kInvalidSelection, "align", "empty selection");
  }
  double value = 0.0;
  switch (anchor) {
    case AlignAnchor::kLeft: value = scores.front(); break;
    case AlignAnchor::kRight: value = scores.back(); break;
    case AlignAnchor::kWeightedMean: {
      if (scores.size() == 1) {
        value = scores.front();
        break;
      }
      double total = 0.0, sum = 0.0;
      for (std::size_t i = 0; i < scores.size(); ++i) {
        total += weights[i];
        sum += weights[i] * scores[i];
      }
      if (!(total > 0.0)) {
        throw Error(ErrorCode::kDegenerateCounts, "align",
                    "selected bins have zero total count");
      }
      value = sum / total;
      break;
    }
  }
  return std::vector<double>(scores.size(), value);
}

struct EditResult {
  GamModel model;
  EditDiff diff;
};

inline EditResult apply_edit(const GamModel& model, const EditOp& op) {
  const FeatureTerm& term = validate_selection(model, op.selection);
  const auto& bins = op.selection.bin_indices;

  std::vector<double> old_scores, weights, xs;
  old_scores.reserve(bins.size());
  for (std::size_t b : bins) {
    old_scores.push_back(term.scores[b]);
    weights.push_back(static_cast<double>(term.counts[b]));
    if (term.is_continuous()) xs.push_back(term.bin_edges[b]);
  }

  auto require_ordered = [&](std::string_view tool) {
    if (!term.is_continuous()) {
      throw Error(ErrorCode::kInvalidSelection, term.name,
                  std::string(tool) + " needs an ordered axis; '" + term.name +
                      "' is categorical");
    }
  };

  struct Visitor {
    const std::vector<double>& old_scores;
    const std::vector<double>& weights;
    const std::vector<double>& xs;
    const decltype(require_ordered)& ordered;

    std::vector<double> operator()(const MoveEdit& e) const {
      std::vector<double> out = old_scores;
      for (double& s : out) s += e.delta;
      return out;
    }
    std::vector<double> operator()(const InterpolateEdit& e) const {
      ordered("interpolate");
      return interpolate_scores(xs, old_scores, weights, e);
    }
    std::vector<double> operator()(const MonotonizeEdit& e) const {
      ordered("monotonize");
      return monotonize(old_scores, weights, e.direction);
    }
    std::vector<double> operator()(const AlignEdit& e) const {
      return align_scores(old_scores, weights, e.anchor);
    }
    std::vector<double> operator()(const DeleteEdit&) const {
      return std::vector<double>(old_scores.size(), 0.0);
    }
  };
  std::vector<double> new_scores =
      std::visit(Visitor{old_scores, weights, xs, require_ordered}, op.kind);
  for (double s : new_scores) {
    if (!std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidValue, term.name, "edit produced a non-finite score");
    }
  }

  EditResult result{model, EditDiff{term.name, bins, std::move(old_scores), {}}};
  FeatureTerm& target = result.model.terms[*model.find_term(term.name)];
  for (std::size_t k = 0; k < bins.size(); ++k) target.scores[bins[k]] = new_scores[k];
  result.diff.new_scores = std::move(new_scores);
  return result;
}

enum class DiffDirection { kForward, kBackward };

// Applies (forward) or reverts (backward) `diff` in place. Returns false and
// leaves `model` untouched when the scores currently at the diff's bins do
// not match the side being replaced.
inline bool apply_diff(GamModel& model, const EditDiff& diff, DiffDirection direction) {
  auto index = model.find_term(diff.term_name);
  if (!index) return false;
  FeatureTerm& term = model.terms[*index];
  const std::size_t n = diff.bin_indices.size();
  if (diff.old_scores.size() != n || diff.new_scores.size() != n) return false;
  const auto& expected =
      direction == DiffDirection::kForward ? diff.old_scores : diff.new_scores;
  const auto& replacement =
      direction == DiffDirection::kForward ? diff.new_scores : diff.old_scores;
  for (std::size_t k = 0; k < n; ++k) {
    if (diff.bin_indices[k] >= term.bin_count()) return false;
    if (term.scores[diff.bin_indices[k]] != expected[k]) return false;
  }
  for (std::size_t k = 0; k < n; ++k) term.scores[diff.bin_indices[k]] = replacement[k];
  return true;
}

}  // namespace gamedit
