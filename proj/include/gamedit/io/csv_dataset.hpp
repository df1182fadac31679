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

// Validation datasets as RFC 4180 CSV. The header must name every model
// feature plus the label column; other columns are ignored. Empty
// categorical cells read as the MISSING label.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gamedit/error.hpp"
#include "gamedit/model.hpp"

namespace gamedit::io {

struct CsvOptions {
  std::string label_column = "label";
  // Skip bad rows (and count them) instead of failing on the first one.
  bool lenient = false;
};

struct RowIssue {
  std::size_t line = 0;  // 1-based; the header is line 1
  std::string message;
};

struct Dataset {
  std::vector<Sample> samples;
  std::size_t skipped_rows = 0;
  std::vector<RowIssue> issues;
};

struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// Splits CSV text into records. Quoted fields may contain separators,
// doubled quotes and line breaks. Blank lines are skipped.
inline std::vector<CsvRecord> parse_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t i = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;
  while (i < text.size()) {
    CsvRecord record;
    record.line = line;
    std::string field;
    bool in_quotes = false;
    bool quoted = false;
    bool end_of_record = false;
    while (i < text.size() && !end_of_record) {
      const char c = text[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            ++i;
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
        }
        ++i;
        continue;
      }
      switch (c) {
        case '"':
          if (field.empty() && !quoted) {
            in_quotes = quoted = true;
          } else {
            field += c;
          }
          break;
        case ',':
          record.fields.push_back(std::move(field));
          field.clear();
          quoted = false;
          break;
        case '\r':
          break;
        case '\n':
          ++line;
          end_of_record = true;
          break;
        default:
          field += c;
      }
      ++i;
    }
    if (in_quotes) {
      throw Error(ErrorCode::kRowParseError, std::to_string(record.line),
                  "line " + std::to_string(record.line) + ": unterminated quoted field");
    }
    record.fields.push_back(std::move(field));
    const bool blank = record.fields.size() == 1 && record.fields[0].empty() && !quoted;
    if (!blank) records.push_back(std::move(record));
  }
  return records;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

inline Dataset load_dataset(std::string_view csv, const GamModel& model,
                            const CsvOptions& options = {}) {
  const std::vector<CsvRecord> records = parse_csv(csv);
  if (records.empty()) {
    throw Error(ErrorCode::kMissingColumn, options.label_column, "dataset has no header row");
  }
  const auto& header = records.front().fields;
  auto column_of = [&](std::string_view name) -> std::size_t {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (trim(header[c]) == name) return c;
    }
    throw Error(ErrorCode::kMissingColumn, std::string(name),
                "dataset has no column '" + std::string(name) + "'");
  };
  std::vector<std::size_t> feature_columns;
  for (const FeatureTerm& term : model.terms) feature_columns.push_back(column_of(term.name));
  const std::size_t label_column = column_of(options.label_column);

  Dataset dataset;
  dataset.samples.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& record = records[r];
    std::string problem;
    Sample sample;
    if (record.fields.size() != header.size()) {
      problem = "expected " + std::to_string(header.size()) + " fields, found " +
                std::to_string(record.fields.size());
    }
    for (std::size_t j = 0; problem.empty() && j < model.terms.size(); ++j) {
      const FeatureTerm& term = model.terms[j];
      const std::string& cell = record.fields[feature_columns[j]];
      if (term.is_continuous()) {
        auto value = parse_real(cell);
        if (!value) {
          problem = "column '" + term.name + "': '" + cell + "' is not a number";
          break;
        }
        sample.values.emplace_back(*value);
      } else {
        std::string label(trim(cell));
        if (label.empty()) label = kMissingLabel;
        if (std::find(term.bin_labels.begin(), term.bin_labels.end(), label) ==
            term.bin_labels.end()) {
          problem = "column '" + term.name + "': unknown category '" + label + "'";
          break;
        }
        sample.values.emplace_back(std::move(label));
      }
    }
    if (problem.empty()) {
      auto label = parse_real(record.fields[label_column]);
      if (!label) {
        problem = "label '" + record.fields[label_column] + "' is not a number";
      } else if (model.link == LinkFunction::kLogit && *label != 0.0 && *label != 1.0) {
        problem = "label '" + record.fields[label_column] + "' is not 0 or 1";
      } else {
        sample.label = *label;
      }
    }
    if (!problem.empty()) {
      if (!options.lenient) {
        throw Error(ErrorCode::kRowParseError, std::to_string(record.line),
                    "line " + std::to_string(record.line) + ": " + problem);
      }
      ++dataset.skipped_rows;
      dataset.issues.push_back({record.line, std::move(problem)});
      continue;
    }
    dataset.samples.push_back(std::move(sample));
  }
  return dataset;
}

}  // namespace gamedit::io
