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

// One editing session: a history, a validation dataset, metric caches and
// at most one staged (previewed, not yet committed) edit. Not thread safe;
// callers serialize access.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gamedit/correlation.hpp"
#include "gamedit/edit.hpp"
#include "gamedit/history.hpp"
#include "gamedit/metrics.hpp"
#include "gamedit/model.hpp"

namespace gamedit {

struct StagedEdit {
  EditOp op;
  GamModel model;
  EditDiff diff;
  std::string message;
};

class Session {
 public:
  Session(History history, std::vector<Sample> samples,
          double threshold = kDefaultThreshold)
      : history_(std::move(history)),
        samples_(std::make_shared<const std::vector<Sample>>(std::move(samples))),
        engine_(history_.current(), *samples_, threshold) {}

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const History& history() const { return history_; }
  const std::vector<Sample>& samples() const { return *samples_; }
  double threshold() const { return engine_.threshold(); }

  const GamModel& committed() const { return history_.current(); }
  // Staged model when an edit is pending, otherwise the committed one.
  const GamModel& working() const { return staged_ ? staged_->model : committed(); }
  const std::optional<StagedEdit>& staged() const { return staged_; }

  // Model "from the last edit": the committed model while a preview is
  // pending, otherwise the head's parent.
  GamModel previous() const {
    if (staged_) return committed();
    const std::size_t head = history_.head();
    return head == 0 ? history_.original() : history_.model_at(head - 1);
  }

  const StagedEdit& preview(EditOp op) {
    if (staged_) {
      throw Error(ErrorCode::kStagedEditPending, "preview",
                  "an edit is already staged; accept or discard it first");
    }
    const FeatureTerm& term = validate_selection(committed(), op.selection);
    EditResult result = apply_edit(committed(), op);
    std::string message = auto_message(term, result.diff, tool_name(op.kind));
    staged_ = StagedEdit{std::move(op), std::move(result.model), std::move(result.diff),
                         std::move(message)};
    return *staged_;
  }

  // Accepting commits the staged edit and returns the commit; discarding
  // drops it and returns nothing. A no-op edit cannot be accepted and stays
  // staged until discarded.
  std::optional<Commit> resolve(bool accept) {
    if (!staged_) throw Error(ErrorCode::kNoStagedEdit, "resolve", "no staged edit");
    if (!accept) {
      staged_.reset();
      return std::nullopt;
    }
    if (staged_->diff.is_noop()) {
      throw Error(ErrorCode::kNoOpEdit, staged_->diff.term_name,
                  "staged edit changes no score");
    }
    Commit c = history_.commit(staged_->diff, staged_->message);
    staged_.reset();
    return c;
  }

  const GamModel& undo() {
    require_no_staged("undo");
    return history_.undo();
  }
  const GamModel& redo() {
    require_no_staged("redo");
    return history_.redo();
  }
  const GamModel& checkout(std::string_view id) {
    require_no_staged("checkout");
    return history_.checkout(id);
  }
  void confirm(std::string_view id, bool confirmed = true) { history_.confirm(id, confirmed); }
  void set_message(std::string_view id, std::string message) {
    history_.set_message(id, std::move(message));
  }
  SaveGate save_gate() const { return history_.save_gate(); }

  ReportTriple metrics(const Scope& scope) {
    const GamModel previous_model = previous();
    return engine_.report(history_.original(), previous_model, working(), scope);
  }

  CorrelationRanking correlation(const Selection& selection) const {
    return correlation_ranking(working(), *samples_, engine_.bins(), selection);
  }

  void set_threshold(double threshold) { engine_.set_threshold(threshold); }

 private:
  void require_no_staged(const char* what) const {
    if (staged_) {
      throw Error(ErrorCode::kStagedEditPending, what,
                  std::string(what) + " is not allowed while an edit is staged");
    }
  }

  History history_;
  std::shared_ptr<const std::vector<Sample>> samples_;
  MetricEngine engine_;
  std::optional<StagedEdit> staged_;
};

}  // namespace gamedit
