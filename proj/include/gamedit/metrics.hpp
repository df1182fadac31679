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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gamedit/edit.hpp"
#include "gamedit/error.hpp"
#include "gamedit/model.hpp"

namespace gamedit {

inline constexpr double kDefaultThreshold = 0.5;

struct Scope {
  enum class Kind { kGlobal, kSelected, kSlice };

  Kind kind = Kind::kGlobal;
  Selection selection;     // kSelected
  std::string slice_term;  // kSlice
  std::string slice_label; // kSlice

  static Scope global() { return {}; }
  static Scope selected(Selection s) { return {Kind::kSelected, std::move(s), {}, {}}; }
  static Scope slice(std::string term, std::string label) {
    return {Kind::kSlice, {}, std::move(term), std::move(label)};
  }

  friend bool operator==(const Scope&, const Scope&) = default;
};

// Per-sample bin index for every term, computed once per (schema, dataset).
// Edits never change bin geometry, so the table is shared by every model
// version in a session.
class BinTable {
 public:
  BinTable(const GamModel& model, std::span<const Sample> samples)
      : sample_count_(samples.size()), bins_(model.terms.size()) {
    for (const Sample& sample : samples) check_sample_shape(model, sample);
    for (std::size_t j = 0; j < model.terms.size(); ++j) {
      bins_[j].resize(samples.size());
      for (std::size_t s = 0; s < samples.size(); ++s) {
        bins_[j][s] = static_cast<std::uint32_t>(
            bin_index(model.terms[j], samples[s].values[j]));
      }
    }
    for (const InteractionTerm& inter : model.interactions) {
      interaction_terms_.push_back(
          {*model.find_term(inter.feature_a), *model.find_term(inter.feature_b)});
    }
  }

  std::size_t sample_count() const { return sample_count_; }
  std::size_t term_count() const { return bins_.size(); }
  std::span<const std::uint32_t> term_bins(std::size_t term) const { return bins_[term]; }
  std::pair<std::size_t, std::size_t> interaction_terms(std::size_t i) const {
    return interaction_terms_[i];
  }

 private:
  std::size_t sample_count_;
  std::vector<std::vector<std::uint32_t>> bins_;
  std::vector<std::pair<std::size_t, std::size_t>> interaction_terms_;
};

// Per-sample per-term contributions for one model version. sync() only
// recomputes the columns of terms whose scores changed since the last sync;
// totals are always re-summed in raw_score()'s order, so they match a
// from-scratch evaluation bit for bit.
class ScoreCache {
 public:
  explicit ScoreCache(std::shared_ptr<const BinTable> table) : table_(std::move(table)) {}

  // Returns the number of term columns recomputed.
  std::size_t sync(const GamModel& model) {
    const std::size_t n = table_->sample_count();
    std::size_t recomputed = 0;
    bool changed = !initialized_ || intercept_ != model.intercept;
    if (!initialized_) {
      term_scores_.resize(model.terms.size());
      contributions_.assign(model.terms.size(), std::vector<double>(n));
      interaction_contributions_.assign(model.interactions.size(), std::vector<double>(n));
      for (std::size_t i = 0; i < model.interactions.size(); ++i) {
        auto [a, b] = table_->interaction_terms(i);
        const auto bins_a = table_->term_bins(a);
        const auto bins_b = table_->term_bins(b);
        const std::size_t width = model.terms[b].bin_count();
        for (std::size_t s = 0; s < n; ++s) {
          interaction_contributions_[i][s] =
              model.interactions[i].scores[bins_a[s] * width + bins_b[s]];
        }
      }
    }
    for (std::size_t j = 0; j < model.terms.size(); ++j) {
      const auto& scores = model.terms[j].scores;
      if (initialized_ && term_scores_[j] == scores) continue;
      term_scores_[j] = scores;
      const auto bins = table_->term_bins(j);
      auto& column = contributions_[j];
      for (std::size_t s = 0; s < n; ++s) column[s] = scores[bins[s]];
      ++recomputed;
      changed = true;
    }
    initialized_ = true;
    intercept_ = model.intercept;
    if (changed) {
      totals_.assign(n, intercept_);
      for (const auto& column : contributions_) {
        for (std::size_t s = 0; s < n; ++s) totals_[s] += column[s];
      }
      for (const auto& column : interaction_contributions_) {
        for (std::size_t s = 0; s < n; ++s) totals_[s] += column[s];
      }
    }
    return recomputed;
  }

  std::span<const double> raw_scores() const { return totals_; }

 private:
  std::shared_ptr<const BinTable> table_;
  bool initialized_ = false;
  double intercept_ = 0.0;
  std::vector<std::vector<double>> term_scores_;
  std::vector<std::vector<double>> contributions_;
  std::vector<std::vector<double>> interaction_contributions_;
  std::vector<double> totals_;
};

// Indices of the samples in `scope`.
inline std::vector<std::size_t> resolve_scope(const GamModel& model,
                                              std::span<const Sample> samples,
                                              const Scope& scope) {
  std::vector<std::size_t> out;
  switch (scope.kind) {
    case Scope::Kind::kGlobal:
      out.resize(samples.size());
      std::iota(out.begin(), out.end(), std::size_t{0});
      break;
    case Scope::Kind::kSelected: {
      validate_selection(model, scope.selection);
      const std::size_t j = *model.find_term(scope.selection.term_name);
      const auto& picked = scope.selection.bin_indices;
      for (std::size_t s = 0; s < samples.size(); ++s) {
        check_sample_shape(model, samples[s]);
        const std::size_t b = bin_index(model.terms[j], samples[s].values[j]);
        if (std::binary_search(picked.begin(), picked.end(), b)) out.push_back(s);
      }
      break;
    }
    case Scope::Kind::kSlice: {
      auto j = model.find_term(scope.slice_term);
      if (!j || model.terms[*j].is_continuous()) {
        throw Error(ErrorCode::kUnknownSlice, scope.slice_term,
                    "'" + scope.slice_term + "' is not a categorical term");
      }
      const auto& labels = model.terms[*j].bin_labels;
      if (std::find(labels.begin(), labels.end(), scope.slice_label) == labels.end()) {
        throw Error(ErrorCode::kUnknownSlice, scope.slice_term,
                    "term '" + scope.slice_term + "' has no level '" +
                        scope.slice_label + "'");
      }
      for (std::size_t s = 0; s < samples.size(); ++s) {
        check_sample_shape(model, samples[s]);
        const auto* label = std::get_if<std::string>(&samples[s].values[*j]);
        if (label && *label == scope.slice_label) out.push_back(s);
      }
      break;
    }
  }
  return out;
}

// Same as resolve_scope() but reads bins from a prebuilt table.
inline std::vector<std::size_t> resolve_scope(const GamModel& model,
                                              std::span<const Sample> samples,
                                              const BinTable& table,
                                              const Scope& scope) {
  if (scope.kind != Scope::Kind::kSelected) return resolve_scope(model, samples, scope);
  validate_selection(model, scope.selection);
  const auto bins = table.term_bins(*model.find_term(scope.selection.term_name));
  const auto& picked = scope.selection.bin_indices;
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < bins.size(); ++s) {
    if (std::binary_search(picked.begin(), picked.end(), std::size_t{bins[s]})) {
      out.push_back(s);
    }
  }
  return out;
}

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// A prediction is positive iff it is >= threshold; a label is positive iff
// it is >= 0.5.
inline ConfusionMatrix confusion(std::span<const double> preds,
                                 std::span<const double> labels,
                                 double threshold = kDefaultThreshold) {
  if (preds.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidValue, "labels", "prediction/label length mismatch");
  }
  ConfusionMatrix m;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const bool predicted = preds[i] >= threshold;
    const bool actual = labels[i] >= 0.5;
    if (predicted && actual) ++m.tp;
    else if (predicted) ++m.fp;
    else if (actual) ++m.fn;
    else ++m.tn;
  }
  return m;
}

// Mann-Whitney statistic via average ranks: the fraction of
// (positive, negative) pairs ranked correctly, ties counting one half.
// Empty when either class is absent.
inline std::optional<double> auc(std::span<const double> preds,
                                 std::span<const double> labels) {
  if (preds.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidValue, "labels", "prediction/label length mismatch");
  }
  const std::size_t n = preds.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return preds[a] < preds[b]; });
  double positive_rank_sum = 0.0;
  double positives = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && preds[order[j]] == preds[order[i]]) ++j;
    // Ranks i+1..j share their average, (i+1+j)/2.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] >= 0.5) {
        positive_rank_sum += rank;
        positives += 1.0;
      }
    }
    i = j;
  }
  const double negatives = static_cast<double>(n) - positives;
  if (positives == 0.0 || negatives == 0.0) return std::nullopt;
  const double u = positive_rank_sum - positives * (positives + 1.0) / 2.0;
  return u / (positives * negatives);
}

struct ClassificationMetrics {
  ConfusionMatrix confusion;
  std::optional<double> accuracy;           // empty when n == 0
  std::optional<double> balanced_accuracy;  // empty when a class is absent
  std::optional<double> auc;                // empty when a class is absent

  friend bool operator==(const ClassificationMetrics&, const ClassificationMetrics&) = default;
};

inline ClassificationMetrics classification_metrics(std::span<const double> preds,
                                                    std::span<const double> labels,
                                                    double threshold = kDefaultThreshold) {
  ClassificationMetrics out;
  out.confusion = confusion(preds, labels, threshold);
  const ConfusionMatrix& m = out.confusion;
  if (m.total() > 0) {
    out.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(m.total());
  }
  if (m.tp + m.fn > 0 && m.tn + m.fp > 0) {
    const double tpr = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
    const double tnr = static_cast<double>(m.tn) / static_cast<double>(m.tn + m.fp);
    out.balanced_accuracy = (tpr + tnr) / 2.0;
  }
  out.auc = auc(preds, labels);
  return out;
}

struct RegressionMetrics {
  std::optional<double> rmse;  // empty when n == 0
  std::optional<double> mae;   // empty when n == 0
  std::optional<double> mape;  // empty when every label is zero
  std::size_t mape_excluded = 0;

  friend bool operator==(const RegressionMetrics&, const RegressionMetrics&) = default;
};

// MAPE is a fraction (0.1 == 10%) averaged over samples with a non-zero
// label; `mape_excluded` counts the rest.
inline RegressionMetrics regression_metrics(std::span<const double> preds,
                                            std::span<const double> labels) {
  if (preds.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidValue, "labels", "prediction/label length mismatch");
  }
  RegressionMetrics out;
  const std::size_t n = preds.size();
  if (n == 0) return out;
  double squared = 0.0, absolute = 0.0, percentage = 0.0;
  std::size_t percentage_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double residual = labels[i] - preds[i];
    squared += residual * residual;
    absolute += std::abs(residual);
    if (labels[i] != 0.0) {
      percentage += std::abs(residual) / std::abs(labels[i]);
      ++percentage_count;
    } else {
      ++out.mape_excluded;
    }
  }
  out.rmse = std::sqrt(squared / static_cast<double>(n));
  out.mae = absolute / static_cast<double>(n);
  if (percentage_count > 0) out.mape = percentage / static_cast<double>(percentage_count);
  return out;
}

struct MetricReport {
  Scope scope;
  std::size_t sample_count = 0;
  std::optional<ClassificationMetrics> classification;
  std::optional<RegressionMetrics> regression;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

struct ReportTriple {
  MetricReport original;
  MetricReport previous;
  MetricReport current;
};

// Metrics over the scoped subset of precomputed raw scores.
inline MetricReport scoped_report(LinkFunction link, std::span<const double> raw_scores,
                                  std::span<const Sample> samples,
                                  std::span<const std::size_t> indices, const Scope& scope,
                                  double threshold = kDefaultThreshold) {
  std::vector<double> preds, labels;
  preds.reserve(indices.size());
  labels.reserve(indices.size());
  for (std::size_t s : indices) {
    preds.push_back(apply_link(link, raw_scores[s]));
    labels.push_back(samples[s].label);
  }
  MetricReport report{scope, indices.size(), std::nullopt, std::nullopt};
  if (link == LinkFunction::kLogit) {
    report.classification = classification_metrics(preds, labels, threshold);
  } else {
    report.regression = regression_metrics(preds, labels);
  }
  return report;
}

// From-scratch report: every sample is scored through raw_score().
inline MetricReport full_report(const GamModel& model, std::span<const Sample> samples,
                                const Scope& scope, double threshold = kDefaultThreshold) {
  const auto indices = resolve_scope(model, samples, scope);
  std::vector<double> raw(samples.size(), 0.0);
  for (std::size_t s : indices) raw[s] = raw_score(model, samples[s]);
  return scoped_report(model.link, raw, samples, indices, scope, threshold);
}

// Reports for the original, previous and current model versions over one
// dataset, backed by one shared bin table and a score cache per version.
class MetricEngine {
 public:
  MetricEngine(const GamModel& schema, std::span<const Sample> samples,
               double threshold = kDefaultThreshold)
      : samples_(samples),
        table_(std::make_shared<BinTable>(schema, samples)),
        original_(table_),
        previous_(table_),
        current_(table_),
        threshold_(threshold) {}

  double threshold() const { return threshold_; }
  void set_threshold(double threshold) { threshold_ = threshold; }
  const BinTable& bins() const { return *table_; }
  std::span<const Sample> samples() const { return samples_; }

  ReportTriple report(const GamModel& original, const GamModel& previous,
                      const GamModel& current, const Scope& scope) {
    original_.sync(original);
    previous_.sync(previous);
    current_.sync(current);
    const auto indices = resolve_scope(current, samples_, *table_, scope);
    return {
        scoped_report(original.link, original_.raw_scores(), samples_, indices, scope, threshold_),
        scoped_report(previous.link, previous_.raw_scores(), samples_, indices, scope, threshold_),
        scoped_report(current.link, current_.raw_scores(), samples_, indices, scope, threshold_),
    };
  }

 private:
  std::span<const Sample> samples_;
  std::shared_ptr<const BinTable> table_;
  ScoreCache original_;
  ScoreCache previous_;
  ScoreCache current_;
  double threshold_;
};

}  // namespace gamedit
