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

#include <string>
#include <vector>

#include "gamedit/io/edit_script.hpp"
#include "gamedit/io/report_json.hpp"
#include "gamedit/session.hpp"

namespace gamedit::io {

struct ScriptResult {
  MetricReport before;
  MetricReport after;
  std::vector<Commit> commits;
};

// Runs every record in order through preview -> accept -> confirm. Stops at
// the first failing record with a ScriptError whose subject is the record
// index; edits committed before it stay in the session.
inline ScriptResult run_script(Session& session, const EditScript& script) {
  ScriptResult result;
  result.before = session.metrics(Scope::global()).current;
  for (std::size_t i = 0; i < script.records.size(); ++i) {
    const Json& record = script.records[i];
    try {
      EditOp op = edit_from_json(session.committed(), record, join_path("edits", i));
      const StagedEdit& staged = session.preview(std::move(op));
      if (staged.diff.is_noop()) {
        std::string term = staged.diff.term_name;
        session.resolve(false);
        throw Error(ErrorCode::kNoOpEdit, term, "edit changes no score");
      }
      Commit commit = *session.resolve(true);
      if (record.contains("message")) {
        commit.message = record["message"].get<std::string>();
        session.set_message(commit.id, commit.message);
      }
      session.confirm(commit.id);
      commit.confirmed = true;
      result.commits.push_back(std::move(commit));
    } catch (const Error& e) {
      if (session.staged()) session.resolve(false);
      throw Error(ErrorCode::kScriptError, std::to_string(i),
                  "edit " + std::to_string(i) + " failed: " + e.what());
    }
  }
  result.after = session.metrics(Scope::global()).current;
  return result;
}

inline Json script_result_to_json(const ScriptResult& result) {
  Json j;
  j["before"] = report_to_json(result.before);
  j["after"] = report_to_json(result.after);
  j["commits"] = Json::array();
  for (const Commit& c : result.commits) {
    Json entry;
    entry["id"] = c.id;
    entry["parent"] = c.parent_id;
    entry["message"] = c.message;
    entry["confirmed"] = c.confirmed;
    j["commits"].push_back(std::move(entry));
  }
  return j;
}

}  // namespace gamedit::io
