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

#include <optional>
#include <string>

#include "gamedit/canonical_json.hpp"
#include "gamedit/correlation.hpp"
#include "gamedit/io/edit_script.hpp"
#include "gamedit/io/json_schema.hpp"
#include "gamedit/metrics.hpp"

namespace gamedit::io {

inline Json optional_number(const std::optional<double>& value) {
  return value ? Json(*value) : Json(nullptr);
}

inline std::string scope_kind_name(Scope::Kind kind) {
  switch (kind) {
    case Scope::Kind::kGlobal: return "global";
    case Scope::Kind::kSelected: return "selected";
    case Scope::Kind::kSlice: return "slice";
  }
  return "global";
}

inline Json scope_to_json(const Scope& scope) {
  Json j;
  j["kind"] = scope_kind_name(scope.kind);
  if (scope.kind == Scope::Kind::kSelected) j["selection"] = selection_to_json(scope.selection);
  if (scope.kind == Scope::Kind::kSlice) {
    j["term"] = scope.slice_term;
    j["label"] = scope.slice_label;
  }
  return j;
}

inline Scope scope_from_json(const GamModel& model, const Json& j, const std::string& path) {
  check_keys(j, path, {"kind", "selection", "term", "label"}, {"kind"});
  const std::string kind = read_string(j["kind"], join_path(path, "kind"));
  if (kind == "global") return Scope::global();
  if (kind == "selected") {
    return Scope::selected(
        selection_from_json(model, field(j, path, "selection"), join_path(path, "selection")));
  }
  if (kind == "slice") {
    return Scope::slice(read_string(field(j, path, "term"), join_path(path, "term")),
                        read_string(field(j, path, "label"), join_path(path, "label")));
  }
  schema_fail(join_path(path, "kind"), "expected global, selected or slice");
}

inline Json report_to_json(const MetricReport& report) {
  Json j;
  j["scope"] = scope_to_json(report.scope);
  j["sample_count"] = report.sample_count;
  if (report.classification) {
    const auto& c = *report.classification;
    Json m;
    m["confusion"] = {{"tp", c.confusion.tp},
                      {"fp", c.confusion.fp},
                      {"tn", c.confusion.tn},
                      {"fn", c.confusion.fn}};
    m["accuracy"] = optional_number(c.accuracy);
    m["balanced_accuracy"] = optional_number(c.balanced_accuracy);
    m["auc"] = optional_number(c.auc);
    j["classification"] = std::move(m);
  }
  if (report.regression) {
    const auto& r = *report.regression;
    Json m;
    m["rmse"] = optional_number(r.rmse);
    m["mae"] = optional_number(r.mae);
    m["mape"] = optional_number(r.mape);
    m["mape_excluded"] = r.mape_excluded;
    j["regression"] = std::move(m);
  }
  return j;
}

inline Json report_triple_to_json(const ReportTriple& triple) {
  Json j;
  j["original"] = report_to_json(triple.original);
  j["previous"] = report_to_json(triple.previous);
  j["current"] = report_to_json(triple.current);
  return j;
}

inline Json frequency_to_json(const FrequencyVector& f) {
  Json j;
  j["frequencies"] = f.frequencies;
  j["empty"] = f.empty;
  return j;
}

inline Json correlation_entry_to_json(const CorrelationEntry& e) {
  Json j;
  j["term"] = e.term_name;
  j["distance"] = e.distance;
  j["full"] = frequency_to_json(e.full);
  j["selected"] = frequency_to_json(e.selected);
  return j;
}

// Continuous and categorical features as two ranked lists.
inline Json ranking_to_json(const CorrelationRanking& ranking) {
  Json j;
  j["continuous"] = Json::array();
  j["categorical"] = Json::array();
  for (const auto& e : ranking.entries) {
    j[e.kind == TermKind::kContinuous ? "continuous" : "categorical"].push_back(
        correlation_entry_to_json(e));
  }
  return j;
}

}  // namespace gamedit::io
