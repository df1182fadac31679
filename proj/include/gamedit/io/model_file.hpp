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

// Model file format (format_version 1). See docs/formats.md for the schema
// and a byte-level example.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gamedit/canonical_json.hpp"
#include "gamedit/history.hpp"
#include "gamedit/io/json_schema.hpp"
#include "gamedit/model.hpp"

namespace gamedit::io {

inline constexpr std::int64_t kModelFormatVersion = 1;

inline Json term_to_json(const FeatureTerm& term) {
  Json j;
  j["name"] = term.name;
  j["kind"] = std::string(term_kind_name(term.kind));
  if (term.is_continuous()) {
    j["edges"] = term.bin_edges;
  } else {
    j["labels"] = term.bin_labels;
  }
  j["scores"] = term.scores;
  j["counts"] = term.counts;
  if (term.score_stddev) j["stddev"] = *term.score_stddev;
  return j;
}

inline Json interaction_to_json(const GamModel& model, const InteractionTerm& inter) {
  Json j;
  j["feature_a"] = inter.feature_a;
  j["feature_b"] = inter.feature_b;
  Json grid = Json::array();
  auto a = model.find_term(inter.feature_a);
  auto b = model.find_term(inter.feature_b);
  const std::size_t rows = a ? model.terms[*a].bin_count() : 0;
  const std::size_t cols = b ? model.terms[*b].bin_count() : 0;
  for (std::size_t r = 0; r < rows; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(inter.scores[r * cols + c]);
    grid.push_back(std::move(row));
  }
  j["scores"] = std::move(grid);
  return j;
}

inline Json commit_to_json(const Commit& c) {
  Json j;
  j["id"] = c.id;
  j["parent"] = c.parent_id;
  j["timestamp"] = c.timestamp_ms;
  j["message"] = c.message;
  j["confirmed"] = c.confirmed;
  j["diff"] = diff_to_json(c.diff);
  return j;
}

inline Json model_to_json(const GamModel& model) {
  Json j;
  j["format_version"] = kModelFormatVersion;
  j["link"] = std::string(link_name(model.link));
  j["intercept"] = model.intercept;
  j["terms"] = Json::array();
  for (const auto& term : model.terms) j["terms"].push_back(term_to_json(term));
  j["interactions"] = Json::array();
  for (const auto& inter : model.interactions) {
    j["interactions"].push_back(interaction_to_json(model, inter));
  }
  return j;
}

inline Json model_to_json(const History& history) {
  Json j = model_to_json(history.current());
  Json block;
  block["head"] = history.head();
  block["commits"] = Json::array();
  for (const Commit& c : history.commits()) block["commits"].push_back(commit_to_json(c));
  j["history"] = std::move(block);
  return j;
}

inline std::string save_model(const GamModel& model) { return canonical_dump(model_to_json(model)); }
inline std::string save_model(const History& history) {
  return canonical_dump(model_to_json(history));
}

inline FeatureTerm term_from_json(const Json& j, const std::string& path) {
  check_keys(j, path, {"name", "kind", "edges", "labels", "scores", "counts", "stddev"},
             {"name", "kind", "scores", "counts"});
  FeatureTerm term;
  term.name = read_string(j["name"], join_path(path, "name"));
  const std::string kind = read_string(j["kind"], join_path(path, "kind"));
  if (kind == "continuous") {
    term.kind = TermKind::kContinuous;
    if (j.contains("labels")) schema_fail(join_path(path, "labels"), "continuous term has labels");
    term.bin_edges = read_list(field(j, path, "edges"), join_path(path, "edges"), read_double);
  } else if (kind == "categorical") {
    term.kind = TermKind::kCategorical;
    if (j.contains("edges")) schema_fail(join_path(path, "edges"), "categorical term has edges");
    term.bin_labels = read_list(field(j, path, "labels"), join_path(path, "labels"), read_string);
  } else {
    schema_fail(join_path(path, "kind"), "expected \"continuous\" or \"categorical\"");
  }
  term.scores = read_list(j["scores"], join_path(path, "scores"), read_double);
  term.counts = read_list(j["counts"], join_path(path, "counts"), read_int);
  if (j.contains("stddev")) {
    term.score_stddev = read_list(j["stddev"], join_path(path, "stddev"), read_double);
  }
  return term;
}

inline EditDiff diff_from_json(const Json& j, const std::string& path) {
  check_keys(j, path, {"term", "bins", "old", "new"}, {"term", "bins", "old", "new"});
  EditDiff diff;
  diff.term_name = read_string(j["term"], join_path(path, "term"));
  diff.bin_indices = read_list(j["bins"], join_path(path, "bins"), read_index);
  diff.old_scores = read_list(j["old"], join_path(path, "old"), read_double);
  diff.new_scores = read_list(j["new"], join_path(path, "new"), read_double);
  if (diff.old_scores.size() != diff.bin_indices.size() ||
      diff.new_scores.size() != diff.bin_indices.size()) {
    schema_fail(path, "bins, old and new must have equal lengths");
  }
  return diff;
}

inline Commit commit_from_json(const Json& j, const std::string& path) {
  check_keys(j, path, {"id", "parent", "timestamp", "message", "confirmed", "diff"},
             {"id", "parent", "timestamp", "message", "confirmed", "diff"});
  Commit c;
  c.id = read_string(j["id"], join_path(path, "id"));
  c.parent_id = read_string(j["parent"], join_path(path, "parent"));
  c.timestamp_ms = read_int(j["timestamp"], join_path(path, "timestamp"));
  c.message = read_string(j["message"], join_path(path, "message"));
  c.confirmed = read_bool(j["confirmed"], join_path(path, "confirmed"));
  c.diff = diff_from_json(j["diff"], join_path(path, "diff"));
  return c;
}

inline GamModel model_from_json(const Json& j) {
  check_keys(j, "", {"format_version", "link", "intercept", "terms", "interactions", "history"},
             {"format_version", "link", "intercept", "terms"});
  if (read_int(j["format_version"], "format_version") != kModelFormatVersion) {
    schema_fail("format_version", "unsupported format version");
  }
  GamModel model;
  const std::string link = read_string(j["link"], "link");
  if (link == "logit") {
    model.link = LinkFunction::kLogit;
  } else if (link == "identity") {
    model.link = LinkFunction::kIdentity;
  } else {
    schema_fail("link", "expected \"logit\" or \"identity\"");
  }
  model.intercept = read_double(j["intercept"], "intercept");
  model.terms = read_list(j["terms"], "terms", term_from_json);
  if (j.contains("interactions")) {
    const Json& list = read_array(j["interactions"], "interactions");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = join_path("interactions", i);
      check_keys(list[i], path, {"feature_a", "feature_b", "scores"},
                 {"feature_a", "feature_b", "scores"});
      InteractionTerm inter;
      inter.feature_a = read_string(list[i]["feature_a"], join_path(path, "feature_a"));
      inter.feature_b = read_string(list[i]["feature_b"], join_path(path, "feature_b"));
      const auto rows = read_list(list[i]["scores"], join_path(path, "scores"),
                                  [](const Json& row, const std::string& p) {
                                    return read_list(row, p, read_double);
                                  });
      auto a = model.find_term(inter.feature_a);
      auto b = model.find_term(inter.feature_b);
      if (a && b) {
        if (rows.size() != model.terms[*a].bin_count()) {
          schema_fail(join_path(path, "scores"), "row count differs from feature_a bins");
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (rows[r].size() != model.terms[*b].bin_count()) {
            schema_fail(join_path(join_path(path, "scores"), r),
                        "column count differs from feature_b bins");
          }
        }
      }
      for (const auto& row : rows) inter.scores.insert(inter.scores.end(), row.begin(), row.end());
      model.interactions.push_back(std::move(inter));
    }
  }
  validate_model(model);
  return model;
}

struct LoadedModel {
  History history;
  bool has_history_block = false;
};

// Parses and validates a model file, then replays and verifies its history
// block if it has one.
inline LoadedModel load_model(std::string_view text,
                              History::Clock clock = system_clock_ms) {
  const Json j = parse_json(text, "model file");
  GamModel model = model_from_json(j);
  if (!j.contains("history")) return {History(std::move(model), std::move(clock)), false};
  const Json& block = j["history"];
  check_keys(block, "history", {"head", "commits"}, {"head", "commits"});
  const std::size_t head = read_index(block["head"], "history/head");
  std::vector<Commit> commits = read_list(block["commits"], "history/commits", commit_from_json);
  if (head > commits.size()) schema_fail("history/head", "head is past the last commit");
  return {History::restore(model, std::move(commits), head, std::move(clock)), true};
}

}  // namespace gamedit::io
