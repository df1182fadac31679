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

// Linking + reordering: which other features do the samples under a
// selection over-represent? Each feature gets the l2 distance between its
// bin frequencies over the affected samples and over the whole dataset.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gamedit/edit.hpp"
#include "gamedit/metrics.hpp"
#include "gamedit/model.hpp"

namespace gamedit {

struct FrequencyVector {
  std::string term_name;
  std::vector<double> frequencies;
  // Set when built from no samples; frequencies are then all zero.
  bool empty = false;
};

struct CorrelationEntry {
  std::string term_name;
  TermKind kind = TermKind::kContinuous;
  double distance = 0.0;
  FrequencyVector full;
  FrequencyVector selected;
};

struct CorrelationRanking {
  // Sorted by distance, descending; ties by term name.
  std::vector<CorrelationEntry> entries;

  // Entries of one kind, in ranking order.
  std::vector<CorrelationEntry> of_kind(TermKind kind) const {
    std::vector<CorrelationEntry> out;
    for (const auto& e : entries) {
      if (e.kind == kind) out.push_back(e);
    }
    return out;
  }
};

inline std::vector<std::size_t> affected_samples(const GamModel& model,
                                                 std::span<const Sample> samples,
                                                 const Selection& selection) {
  return resolve_scope(model, samples, Scope::selected(selection));
}

inline FrequencyVector frequency_vector(const FeatureTerm& term,
                                        std::span<const std::uint32_t> sample_bins) {
  FrequencyVector out{term.name, std::vector<double>(term.bin_count(), 0.0),
                      sample_bins.empty()};
  if (sample_bins.empty()) return out;
  std::vector<std::size_t> counts(term.bin_count(), 0);
  for (auto b : sample_bins) ++counts[b];
  const double n = static_cast<double>(sample_bins.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.frequencies[i] = static_cast<double>(counts[i]) / n;
  }
  return out;
}

inline FrequencyVector frequency_vector(const FeatureTerm& term,
                                        std::span<const Sample> samples,
                                        std::size_t term_position) {
  std::vector<std::uint32_t> bins;
  bins.reserve(samples.size());
  for (const Sample& s : samples) {
    bins.push_back(static_cast<std::uint32_t>(bin_index(term, s.values.at(term_position))));
  }
  return frequency_vector(term, bins);
}

inline double l2_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

inline CorrelationRanking correlation_ranking(const GamModel& model,
                                              std::span<const Sample> samples,
                                              const BinTable& table,
                                              const Selection& selection) {
  if (samples.empty()) {
    throw Error(ErrorCode::kInvalidValue, "dataset", "correlation needs a non-empty dataset");
  }
  const auto affected = resolve_scope(model, samples, table, Scope::selected(selection));
  CorrelationRanking ranking;
  for (std::size_t j = 0; j < model.terms.size(); ++j) {
    const FeatureTerm& term = model.terms[j];
    if (term.name == selection.term_name) continue;
    const auto all_bins = table.term_bins(j);
    std::vector<std::uint32_t> affected_bins;
    affected_bins.reserve(affected.size());
    for (std::size_t s : affected) affected_bins.push_back(all_bins[s]);
    CorrelationEntry entry{term.name, term.kind, 0.0, frequency_vector(term, all_bins),
                           frequency_vector(term, affected_bins)};
    if (!entry.selected.empty) {
      entry.distance = l2_distance(entry.full.frequencies, entry.selected.frequencies);
    }
    ranking.entries.push_back(std::move(entry));
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const CorrelationEntry& a, const CorrelationEntry& b) {
              if (a.distance != b.distance) return a.distance > b.distance;
              return a.term_name < b.term_name;
            });
  return ranking;
}

inline CorrelationRanking correlation_ranking(const GamModel& model,
                                              std::span<const Sample> samples,
                                              const Selection& selection) {
  const BinTable table(model, samples);
  return correlation_ranking(model, samples, table, selection);
}

}  // namespace gamedit
