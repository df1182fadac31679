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

// Session message catalog. Every editor capability maps to exactly one
// request/response message; the HTTP server and the tests both drive this
// class directly. Responses are {"ok": true, ...} or
// {"ok": false, "error": {"code", "subject", "message"}}.

#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "gamedit/io/csv_dataset.hpp"
#include "gamedit/io/edit_script.hpp"
#include "gamedit/io/model_file.hpp"
#include "gamedit/io/report_json.hpp"
#include "gamedit/session.hpp"

namespace gamedit::io {

inline constexpr std::array<std::string_view, 14> kMessageCatalog = {
    "LoadModel",  "ListFeatures",  "GetFeature", "PreviewEdit", "ResolvePreview",
    "Undo",       "Redo",          "Checkout",   "ConfirmCommit", "SetMessage",
    "GetMetrics", "GetCorrelation", "GetHistory", "SaveModel",
};

inline bool is_read_only_message(std::string_view name) {
  return name == "ListFeatures" || name == "GetFeature" || name == "GetHistory";
}

struct ServiceOptions {
  double threshold = kDefaultThreshold;
  CsvOptions csv;
};

class Service {
 public:
  Service(ServiceOptions options, std::string dataset_csv,
          History::Clock clock = system_clock_ms)
      : options_(std::move(options)),
        dataset_csv_(std::move(dataset_csv)),
        clock_(std::move(clock)) {}

  // Loads a model file and binds the current dataset to it.
  void load(std::string_view model_text) {
    LoadedModel loaded = load_model(model_text, clock_);
    Dataset dataset = load_dataset(dataset_csv_, loaded.history.current(), options_.csv);
    skipped_rows_ = dataset.skipped_rows;
    session_ = std::make_unique<Session>(std::move(loaded.history),
                                         std::move(dataset.samples), options_.threshold);
  }

  bool loaded() const { return session_ != nullptr; }
  Session& session() { return *session_; }

  Json handle(std::string_view message, const Json& body) {
    try {
      if (std::find(kMessageCatalog.begin(), kMessageCatalog.end(), message) ==
          kMessageCatalog.end()) {
        throw Error(ErrorCode::kBadRequest, std::string(message),
                    "unknown message '" + std::string(message) + "'");
      }
      if (!body.is_object()) schema_fail("", "request body must be a JSON object");
      Json response;
      if (is_read_only_message(message)) {
        std::shared_lock lock(mutex_);
        response = dispatch(message, body);
      } else {
        std::unique_lock lock(mutex_);
        response = dispatch(message, body);
      }
      Json out;
      out["ok"] = true;
      for (auto it = response.begin(); it != response.end(); ++it) out[it.key()] = it.value();
      return out;
    } catch (const Error& e) {
      return error_response(std::string(error_code_name(e.code())), e.subject(), e.what());
    } catch (const std::exception& e) {
      return error_response("InternalError", "", e.what());
    }
  }

  static Json error_response(const std::string& code, const std::string& subject,
                             const std::string& message) {
    Json out;
    out["ok"] = false;
    out["error"] = {{"code", code}, {"subject", subject}, {"message", message}};
    return out;
  }

 private:
  Session& require_session() {
    if (!session_) throw Error(ErrorCode::kNoModel, "session", "no model loaded");
    return *session_;
  }

  static const Json& require(const Json& body, std::string_view key) {
    return field(body, "", key);
  }

  Json head_response() {
    Json j;
    j["head"] = require_session().history().head_id();
    return j;
  }

  Json history_json(const Session& session) const {
    Json j;
    j["head"] = session.history().head_id();
    j["commits"] = Json::array();
    for (const Commit& c : session.history().commits()) {
      j["commits"].push_back(commit_to_json(c));
    }
    if (session.staged()) {
      j["staged"] = {{"diff", diff_to_json(session.staged()->diff)},
                     {"noop", session.staged()->diff.is_noop()},
                     {"message", session.staged()->message}};
    } else {
      j["staged"] = nullptr;
    }
    return j;
  }

  Json dispatch(std::string_view message, const Json& body) {
    if (message == "LoadModel") {
      check_keys(body, "", {"model", "dataset_csv"}, {"model"});
      const Json& model = body["model"];
      if (body.contains("dataset_csv")) {
        dataset_csv_ = read_string(body["dataset_csv"], "dataset_csv");
      }
      load(model.is_string() ? model.get<std::string>() : canonical_dump(model));
      Json j;
      j["features"] = session_->committed().feature_count();
      j["samples"] = session_->samples().size();
      j["skipped_rows"] = skipped_rows_;
      j["commits"] = session_->history().commits().size();
      j["head"] = session_->history().head_id();
      return j;
    }

    Session& session = require_session();

    if (message == "ListFeatures") {
      const GamModel& model = session.working();
      struct Row {
        const FeatureTerm* term;
        std::optional<double> importance;
      };
      std::vector<Row> rows;
      for (const auto& term : model.terms) {
        std::optional<double> importance;
        try {
          importance = feature_importance(term);
        } catch (const Error&) {
        }
        rows.push_back({&term, importance});
      }
      std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        const double ia = a.importance.value_or(-1.0);
        const double ib = b.importance.value_or(-1.0);
        if (ia != ib) return ia > ib;
        return a.term->name < b.term->name;
      });
      Json j;
      j["features"] = Json::array();
      for (const Row& row : rows) {
        j["features"].push_back({{"name", row.term->name},
                                 {"kind", std::string(term_kind_name(row.term->kind))},
                                 {"bins", row.term->bin_count()},
                                 {"importance", optional_number(row.importance)}});
      }
      j["interactions"] = Json::array();
      for (const auto& inter : model.interactions) {
        j["interactions"].push_back({{"name", inter.name()},
                                     {"feature_a", inter.feature_a},
                                     {"feature_b", inter.feature_b}});
      }
      return j;
    }

    if (message == "GetFeature") {
      check_keys(body, "", {"name"}, {"name"});
      const std::string name = read_string(body["name"], "name");
      const GamModel& model = session.working();
      for (const auto& inter : model.interactions) {
        if (inter.name() == name) {
          Json j;
          j["interaction"] = interaction_to_json(model, inter);
          j["editable"] = false;
          return j;
        }
      }
      const FeatureTerm& term = model.term(name);
      const FeatureTerm& original = session.history().original().term(name);
      const FeatureTerm& committed = session.committed().term(name);
      Json j;
      j["term"] = term_to_json(term);
      j["editable"] = true;
      j["original_scores"] = original.scores;
      j["committed_scores"] = committed.scores;
      std::vector<bool> edited(term.bin_count());
      for (std::size_t i = 0; i < edited.size(); ++i) {
        edited[i] = term.scores[i] != original.scores[i];
      }
      j["edited"] = edited;
      return j;
    }

    if (message == "PreviewEdit") {
      check_keys(body, "", {"edit"}, {"edit"});
      EditOp op = edit_from_json(session.committed(), body["edit"], "edit");
      const StagedEdit& staged = session.preview(std::move(op));
      Json j;
      j["diff"] = diff_to_json(staged.diff);
      j["noop"] = staged.diff.is_noop();
      j["message"] = staged.message;
      return j;
    }

    if (message == "ResolvePreview") {
      check_keys(body, "", {"accept"}, {"accept"});
      auto commit = session.resolve(read_bool(body["accept"], "accept"));
      Json j;
      j["commit"] = commit ? commit_to_json(*commit) : Json(nullptr);
      j["head"] = session.history().head_id();
      return j;
    }

    if (message == "Undo") {
      check_keys(body, "", {}, {});
      session.undo();
      return head_response();
    }
    if (message == "Redo") {
      check_keys(body, "", {}, {});
      session.redo();
      return head_response();
    }
    if (message == "Checkout") {
      check_keys(body, "", {"id"}, {"id"});
      session.checkout(read_string(body["id"], "id"));
      return head_response();
    }
    if (message == "ConfirmCommit") {
      check_keys(body, "", {"id", "confirmed"}, {"id"});
      const bool confirmed = body.contains("confirmed") ? read_bool(body["confirmed"], "confirmed")
                                                        : true;
      const std::string id = read_string(body["id"], "id");
      session.confirm(id, confirmed);
      return {{"id", id}, {"confirmed", confirmed}};
    }
    if (message == "SetMessage") {
      check_keys(body, "", {"id", "message"}, {"id", "message"});
      const std::string id = read_string(body["id"], "id");
      session.set_message(id, read_string(body["message"], "message"));
      return {{"id", id}, {"message", session.history().find_commit(id).message}};
    }

    if (message == "GetMetrics") {
      check_keys(body, "", {"scope"}, {});
      const Scope scope = body.contains("scope")
                              ? scope_from_json(session.working(), body["scope"], "scope")
                              : Scope::global();
      return report_triple_to_json(session.metrics(scope));
    }

    if (message == "GetCorrelation") {
      check_keys(body, "", {"selection"}, {"selection"});
      const Selection selection =
          selection_from_json(session.working(), body["selection"], "selection");
      return ranking_to_json(session.correlation(selection));
    }

    if (message == "GetHistory") {
      check_keys(body, "", {}, {});
      return history_json(session);
    }

    if (message == "SaveModel") {
      check_keys(body, "", {"path"}, {});
      const SaveGate gate = session.save_gate();
      Json j;
      if (!gate.ok) {
        j["saved"] = false;
        j["blocked"] = gate.unconfirmed;
        return j;
      }
      const std::string text = save_model(session.history());
      if (body.contains("path")) {
        const std::string path = read_string(body["path"], "path");
        std::ofstream out(path, std::ios::binary);
        out << text;
        if (!out) throw Error(ErrorCode::kBadRequest, path, "cannot write '" + path + "'");
        j["path"] = path;
      }
      j["saved"] = true;
      j["model"] = text;
      return j;
    }

    throw Error(ErrorCode::kBadRequest, std::string(message), "unhandled message");
  }

  ServiceOptions options_;
  std::string dataset_csv_;
  History::Clock clock_;
  std::unique_ptr<Session> session_;
  std::size_t skipped_rows_ = 0;
  std::shared_mutex mutex_;
};

}  // namespace gamedit::io
