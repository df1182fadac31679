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

// Edit records and edit scripts.
//
// An edit record names a tool, its parameters, a term, and exactly one way
// of picking bins:
//
//   {"tool": "interpolate", "mode": "linear", "term": "Age", "x_range": [81, 87]}
//   {"tool": "align", "anchor": "left", "term": "Age", "x_range": [99, null]}
//   {"tool": "delete", "term": "Asthma", "labels": ["true"]}
//   {"tool": "move", "delta": -0.25, "term": "BMI", "bins": [3, 7]}
//
// "bins" is an inclusive index range, "indices" an explicit index list,
// "x_range" a value range (null = unbounded) snapped outward to whole bins,
// and "labels" a list of categorical levels.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gamedit/canonical_json.hpp"
#include "gamedit/edit.hpp"
#include "gamedit/io/json_schema.hpp"
#include "gamedit/model.hpp"

namespace gamedit::io {

inline constexpr std::int64_t kScriptFormatVersion = 1;

inline Selection selection_from_json(const GamModel& model, const Json& j,
                                     const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  const std::string term = read_string(field(j, path, "term"), join_path(path, "term"));
  int forms = 0;
  for (const char* key : {"bins", "indices", "x_range", "labels"}) forms += j.contains(key);
  if (forms != 1) {
    schema_fail(path, "give exactly one of \"bins\", \"indices\", \"x_range\", \"labels\"");
  }
  if (j.contains("bins")) {
    const auto range = read_list(j["bins"], join_path(path, "bins"), read_index);
    if (range.size() != 2 || range[0] > range[1]) {
      schema_fail(join_path(path, "bins"), "expected [first, last] with first <= last");
    }
    return select_bin_range(model, term, range[0], range[1]);
  }
  if (j.contains("indices")) {
    Selection s{term, read_list(j["indices"], join_path(path, "indices"), read_index)};
    validate_selection(model, s);
    return s;
  }
  if (j.contains("x_range")) {
    const Json& range = read_array(j["x_range"], join_path(path, "x_range"));
    if (range.size() != 2) schema_fail(join_path(path, "x_range"), "expected [low, high]");
    auto bound = [&](std::size_t i) -> std::optional<double> {
      if (range[i].is_null()) return std::nullopt;
      return read_double(range[i], join_path(join_path(path, "x_range"), i));
    };
    return select_x_range(model, term, bound(0), bound(1));
  }
  const auto labels = read_list(j["labels"], join_path(path, "labels"), read_string);
  return select_labels(model, term, labels);
}

inline Json selection_to_json(const Selection& selection) {
  Json j;
  j["term"] = selection.term_name;
  j["indices"] = selection.bin_indices;
  return j;
}

inline EditKind edit_kind_from_json(const Json& j, const std::string& path) {
  const std::string tool = read_string(field(j, path, "tool"), join_path(path, "tool"));
  auto enum_field = [&](std::string_view key) {
    return read_string(field(j, path, key), join_path(path, key));
  };
  if (tool == "move") {
    return MoveEdit{read_double(field(j, path, "delta"), join_path(path, "delta"))};
  }
  if (tool == "delete") return DeleteEdit{};
  if (tool == "interpolate") {
    InterpolateEdit e;
    const std::string mode = j.contains("mode") ? enum_field("mode") : "linear";
    if (mode == "linear") {
      e.mode = InterpolationMode::kLinear;
    } else if (mode == "equal_bins") {
      e.mode = InterpolationMode::kEqualBins;
      e.segments = read_index(field(j, path, "segments"), join_path(path, "segments"));
    } else if (mode == "regression") {
      e.mode = InterpolationMode::kRegression;
    } else {
      schema_fail(join_path(path, "mode"), "expected linear, equal_bins or regression");
    }
    return e;
  }
  if (tool == "monotonize") {
    const std::string direction = enum_field("direction");
    if (direction == "increasing") return MonotonizeEdit{MonotoneDirection::kIncreasing};
    if (direction == "decreasing") return MonotonizeEdit{MonotoneDirection::kDecreasing};
    schema_fail(join_path(path, "direction"), "expected increasing or decreasing");
  }
  if (tool == "align") {
    const std::string anchor = enum_field("anchor");
    if (anchor == "left") return AlignEdit{AlignAnchor::kLeft};
    if (anchor == "right") return AlignEdit{AlignAnchor::kRight};
    if (anchor == "weighted_mean") return AlignEdit{AlignAnchor::kWeightedMean};
    schema_fail(join_path(path, "anchor"), "expected left, right or weighted_mean");
  }
  schema_fail(join_path(path, "tool"),
              "unknown tool '" + tool + "' (move, interpolate, monotonize, align, delete)");
}

inline void check_edit_keys(const Json& j, const std::string& path) {
  check_keys(j, path,
             {"tool", "delta", "mode", "segments", "direction", "anchor", "term", "bins",
              "indices", "x_range", "labels", "message"},
             {"tool", "term"});
}

inline EditOp edit_from_json(const GamModel& model, const Json& j, const std::string& path) {
  check_edit_keys(j, path);
  EditKind kind = edit_kind_from_json(j, path);
  return EditOp{std::move(kind), selection_from_json(model, j, path)};
}

inline Json edit_to_json(const EditOp& op) {
  Json j;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, MoveEdit>) {
          j["tool"] = "move";
          j["delta"] = e.delta;
        } else if constexpr (std::is_same_v<T, InterpolateEdit>) {
          j["tool"] = "interpolate";
          switch (e.mode) {
            case InterpolationMode::kLinear: j["mode"] = "linear"; break;
            case InterpolationMode::kEqualBins:
              j["mode"] = "equal_bins";
              j["segments"] = e.segments;
              break;
            case InterpolationMode::kRegression: j["mode"] = "regression"; break;
          }
        } else if constexpr (std::is_same_v<T, MonotonizeEdit>) {
          j["tool"] = "monotonize";
          j["direction"] =
              e.direction == MonotoneDirection::kIncreasing ? "increasing" : "decreasing";
        } else if constexpr (std::is_same_v<T, AlignEdit>) {
          j["tool"] = "align";
          j["anchor"] = e.anchor == AlignAnchor::kLeft    ? "left"
                        : e.anchor == AlignAnchor::kRight ? "right"
                                                          : "weighted_mean";
        } else {
          j["tool"] = "delete";
        }
      },
      op.kind);
  j["term"] = op.selection.term_name;
  j["indices"] = op.selection.bin_indices;
  return j;
}

// A script keeps its records unresolved; each one is resolved against the
// model at the moment it runs.
struct EditScript {
  std::vector<Json> records;
};

inline EditScript parse_edit_script(std::string_view text) {
  const Json j = parse_json(text, "edit script");
  check_keys(j, "", {"format_version", "edits"}, {"format_version", "edits"});
  if (read_int(j["format_version"], "format_version") != kScriptFormatVersion) {
    schema_fail("format_version", "unsupported format version");
  }
  const Json& edits = read_array(j["edits"], "edits");
  EditScript script;
  for (std::size_t i = 0; i < edits.size(); ++i) {
    const std::string path = join_path("edits", i);
    check_edit_keys(edits[i], path);
    if (edits[i].contains("message")) read_string(edits[i]["message"], join_path(path, "message"));
    script.records.push_back(edits[i]);
  }
  return script;
}

}  // namespace gamedit::io
