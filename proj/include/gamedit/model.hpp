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

// Binned generalized additive model: an intercept plus one piecewise
// constant shape function per feature, optional pairwise interaction grids,
// and a link function mapping the additive score to a prediction.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gamedit/error.hpp"

namespace gamedit {

// Label used for missing categorical values. A term that wants missing
// values to be scorable lists it among its bin labels.
inline constexpr std::string_view kMissingLabel = "MISSING";

enum class LinkFunction { kLogit, kIdentity };

enum class TermKind { kContinuous, kCategorical };

inline std::string_view link_name(LinkFunction link) {
  return link == LinkFunction::kLogit ? "logit" : "identity";
}

inline std::string_view term_kind_name(TermKind kind) {
  return kind == TermKind::kContinuous ? "continuous" : "categorical";
}

struct FeatureTerm {
  std::string name;
  TermKind kind = TermKind::kContinuous;
  // Left edge of each bin; continuous terms only.
  std::vector<double> bin_edges;
  // One label per bin; categorical terms only.
  std::vector<std::string> bin_labels;
  std::vector<double> scores;
  std::vector<std::int64_t> counts;
  std::optional<std::vector<double>> score_stddev;

  std::size_t bin_count() const { return scores.size(); }
  bool is_continuous() const { return kind == TermKind::kContinuous; }

  friend bool operator==(const FeatureTerm&, const FeatureTerm&) = default;
};

// Read-only pairwise effect. `scores` is row-major with one row per bin of
// `feature_a` and one column per bin of `feature_b`.
struct InteractionTerm {
  std::string feature_a;
  std::string feature_b;
  std::vector<double> scores;

  std::string name() const { return feature_a + " x " + feature_b; }

  friend bool operator==(const InteractionTerm&,
                         const InteractionTerm&) = default;
};

struct GamModel {
  double intercept = 0.0;
  LinkFunction link = LinkFunction::kLogit;
  std::vector<FeatureTerm> terms;
  std::vector<InteractionTerm> interactions;

  std::size_t feature_count() const { return terms.size(); }

  std::optional<std::size_t> find_term(std::string_view name) const {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (terms[i].name == name) return i;
    }
    return std::nullopt;
  }

  const FeatureTerm& term(std::string_view name) const {
    auto index = find_term(name);
    if (!index) {
      throw Error(ErrorCode::kInvalidSelection, std::string(name),
                  "no univariate term named '" + std::string(name) + "'");
    }
    return terms[*index];
  }

  bool is_interaction(std::string_view name) const {
    return std::any_of(interactions.begin(), interactions.end(),
                       [&](const InteractionTerm& t) { return t.name() == name; });
  }

  friend bool operator==(const GamModel&, const GamModel&) = default;
};

// A feature value is a real for continuous terms and a label for
// categorical terms.
using FeatureValue = std::variant<double, std::string>;

struct Sample {
  std::vector<FeatureValue> values;
  double label = 0.0;
};

// Throws SchemaError naming the offending path (for example "terms/3/scores")
// when the model violates a structural invariant.
inline void validate_model(const GamModel& model) {
  auto fail = [](const std::string& path, const std::string& what) {
    throw Error(ErrorCode::kSchemaError, path, path + ": " + what);
  };
  if (!std::isfinite(model.intercept)) fail("intercept", "must be finite");
  std::set<std::string, std::less<>> names;
  for (std::size_t t = 0; t < model.terms.size(); ++t) {
    const FeatureTerm& term = model.terms[t];
    const std::string path = "terms/" + std::to_string(t);
    if (term.name.empty()) fail(path + "/name", "term name is empty");
    if (!names.insert(term.name).second) {
      fail(path + "/name", "duplicate term name '" + term.name + "'");
    }
    const std::size_t n = term.scores.size();
    if (n == 0) fail(path + "/scores", "term has no bins");
    if (term.counts.size() != n) fail(path + "/counts", "length differs from scores");
    if (term.score_stddev && term.score_stddev->size() != n) {
      fail(path + "/stddev", "length differs from scores");
    }
    for (double s : term.scores) {
      if (!std::isfinite(s)) fail(path + "/scores", "non-finite score");
    }
    for (auto c : term.counts) {
      if (c < 0) fail(path + "/counts", "negative count");
    }
    if (term.score_stddev) {
      for (double s : *term.score_stddev) {
        if (!(s >= 0.0) || !std::isfinite(s)) {
          fail(path + "/stddev", "stddev must be finite and non-negative");
        }
      }
    }
    if (term.is_continuous()) {
      if (!term.bin_labels.empty()) fail(path + "/labels", "continuous term has labels");
      if (term.bin_edges.size() != n) fail(path + "/edges", "length differs from scores");
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(term.bin_edges[i])) fail(path + "/edges", "non-finite edge");
        if (i > 0 && !(term.bin_edges[i - 1] < term.bin_edges[i])) {
          fail(path + "/edges", "edges are not strictly increasing");
        }
      }
    } else {
      if (!term.bin_edges.empty()) fail(path + "/edges", "categorical term has edges");
      if (term.bin_labels.size() != n) fail(path + "/labels", "length differs from scores");
      std::set<std::string, std::less<>> labels(term.bin_labels.begin(),
                                                term.bin_labels.end());
      if (labels.size() != n) fail(path + "/labels", "duplicate label");
    }
  }
  for (std::size_t i = 0; i < model.interactions.size(); ++i) {
    const InteractionTerm& inter = model.interactions[i];
    const std::string path = "interactions/" + std::to_string(i);
    auto a = model.find_term(inter.feature_a);
    auto b = model.find_term(inter.feature_b);
    if (!a) fail(path + "/feature_a", "unknown term '" + inter.feature_a + "'");
    if (!b) fail(path + "/feature_b", "unknown term '" + inter.feature_b + "'");
    if (*a == *b) fail(path, "interaction of a term with itself");
    if (inter.scores.size() != model.terms[*a].bin_count() * model.terms[*b].bin_count()) {
      fail(path + "/scores", "grid does not match the referenced terms' bin counts");
    }
    for (double s : inter.scores) {
      if (!std::isfinite(s)) fail(path + "/scores", "non-finite score");
    }
  }
}

// Continuous values outside the edge range clamp to the first or last bin.
inline std::size_t bin_index(const FeatureTerm& term, double value) {
  if (!term.is_continuous()) {
    throw Error(ErrorCode::kInvalidValue, term.name,
                "numeric value given for categorical term '" + term.name + "'");
  }
  if (std::isnan(value)) {
    throw Error(ErrorCode::kInvalidValue, term.name,
                "NaN value for term '" + term.name + "'");
  }
  auto it = std::upper_bound(term.bin_edges.begin(), term.bin_edges.end(), value);
  if (it == term.bin_edges.begin()) return 0;
  return static_cast<std::size_t>(it - term.bin_edges.begin()) - 1;
}

inline std::size_t bin_index(const FeatureTerm& term, std::string_view label) {
  if (term.is_continuous()) {
    throw Error(ErrorCode::kInvalidValue, term.name,
                "label given for continuous term '" + term.name + "'");
  }
  auto it = std::find(term.bin_labels.begin(), term.bin_labels.end(), label);
  if (it == term.bin_labels.end()) {
    throw Error(ErrorCode::kUnknownCategory, term.name,
                "term '" + term.name + "' has no bin for label '" +
                    std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - term.bin_labels.begin());
}

inline std::size_t bin_index(const FeatureTerm& term, const FeatureValue& value) {
  if (const auto* label = std::get_if<std::string>(&value)) {
    return bin_index(term, std::string_view(*label));
  }
  return bin_index(term, std::get<double>(value));
}

inline void check_sample_shape(const GamModel& model, const Sample& sample) {
  if (sample.values.size() != model.feature_count()) {
    throw Error(ErrorCode::kInvalidValue, "sample",
                "sample has " + std::to_string(sample.values.size()) +
                    " values but the model has " +
                    std::to_string(model.feature_count()) + " features");
  }
}

// Summation order is intercept, then terms in model order, then
// interactions in model order. The metric cache relies on this order to
// reproduce scores bit for bit.
inline double raw_score(const GamModel& model, const Sample& sample) {
  check_sample_shape(model, sample);
  std::vector<std::size_t> bins(model.terms.size());
  double total = model.intercept;
  for (std::size_t j = 0; j < model.terms.size(); ++j) {
    bins[j] = bin_index(model.terms[j], sample.values[j]);
    total += model.terms[j].scores[bins[j]];
  }
  for (const InteractionTerm& inter : model.interactions) {
    const std::size_t a = *model.find_term(inter.feature_a);
    const std::size_t b = *model.find_term(inter.feature_b);
    total += inter.scores[bins[a] * model.terms[b].bin_count() + bins[b]];
  }
  return total;
}

inline double apply_link(LinkFunction link, double raw) {
  if (link == LinkFunction::kIdentity) return raw;
  return 1.0 / (1.0 + std::exp(-raw));
}

inline double predict(const GamModel& model, const Sample& sample) {
  return apply_link(model.link, raw_score(model, sample));
}

// Count-weighted mean of a term's scores. Throws DegenerateCounts when the
// term has no training samples.
inline double weighted_mean_score(const FeatureTerm& term) {
  double weight = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < term.bin_count(); ++i) {
    weight += static_cast<double>(term.counts[i]);
    sum += static_cast<double>(term.counts[i]) * term.scores[i];
  }
  if (!(weight > 0.0)) {
    throw Error(ErrorCode::kDegenerateCounts, term.name,
                "term '" + term.name + "' has zero total count");
  }
  return sum / weight;
}

// Residual means at or below this magnitude are left in place, which keeps
// recentering idempotent.
inline constexpr double kCenteredTolerance = 1e-12;

// Shifts every term so its count-weighted mean score is zero and moves the
// shifts into the intercept. Interaction grids are left as they are.
inline GamModel recenter(const GamModel& model) {
  GamModel out = model;
  std::vector<double> means(out.terms.size());
  for (std::size_t j = 0; j < out.terms.size(); ++j) {
    means[j] = weighted_mean_score(out.terms[j]);
  }
  for (std::size_t j = 0; j < out.terms.size(); ++j) {
    if (std::abs(means[j]) <= kCenteredTolerance) continue;
    for (double& s : out.terms[j].scores) s -= means[j];
    out.intercept += means[j];
  }
  return out;
}

inline double feature_importance(const FeatureTerm& term) {
  double weight = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < term.bin_count(); ++i) {
    weight += static_cast<double>(term.counts[i]);
    sum += static_cast<double>(term.counts[i]) * std::abs(term.scores[i]);
  }
  if (!(weight > 0.0)) {
    throw Error(ErrorCode::kDegenerateCounts, term.name,
                "term '" + term.name + "' has zero total count");
  }
  return sum / weight;
}

}  // namespace gamedit
