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

// Linear, git-style edit history. Commits store diffs; model versions are
// rebuilt by replaying diffs from the original model, with a memoized
// snapshot every kCheckpointInterval commits.

#pragma once

#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gamedit/canonical_json.hpp"
#include "gamedit/edit.hpp"
#include "gamedit/error.hpp"
#include "gamedit/model.hpp"

namespace gamedit {

inline constexpr std::string_view kRootId = "ROOT";
inline constexpr std::size_t kCheckpointInterval = 32;

struct Commit {
  std::string id;
  std::string parent_id;
  EditDiff diff;
  std::int64_t timestamp_ms = 0;
  std::string message;
  bool confirmed = false;

  friend bool operator==(const Commit&, const Commit&) = default;
};

inline Json diff_to_json(const EditDiff& diff) {
  Json j;
  j["term"] = diff.term_name;
  j["bins"] = diff.bin_indices;
  j["old"] = diff.old_scores;
  j["new"] = diff.new_scores;
  return j;
}

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

// First 8 hex digits of SHA-256 over the parent id and the compact canonical
// diff. Timestamps and messages are deliberately not hashed.
inline std::string commit_id(std::string_view parent_id, const EditDiff& diff) {
  std::string payload(parent_id);
  payload += '\n';
  payload += canonical_dump(diff_to_json(diff), -1);
  return sha256_hex(payload).substr(0, 8);
}

// "<tool> <term> [<low>, <high>] (<n> bins)" for continuous terms, where low
// and high are the left edges of the first and last selected bins, and
// "<tool> <term> {<labels>} (<n> bins)" for categorical terms.
inline std::string auto_message(const FeatureTerm& term, const EditDiff& diff,
                                std::string_view tool) {
  std::string out(tool);
  out += ' ';
  out += term.name;
  out += ' ';
  const auto& bins = diff.bin_indices;
  if (term.is_continuous()) {
    out += '[';
    out += bins.empty() ? "" : format_double(term.bin_edges[bins.front()]);
    out += ", ";
    out += bins.empty() ? "" : format_double(term.bin_edges[bins.back()]);
    out += ']';
  } else {
    out += '{';
    for (std::size_t k = 0; k < bins.size(); ++k) {
      if (k > 0) out += ", ";
      out += term.bin_labels[bins[k]];
    }
    out += '}';
  }
  out += " (" + std::to_string(bins.size()) + " bins)";
  return out;
}

inline std::int64_t system_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

struct SaveGate {
  bool ok = true;
  std::vector<std::string> unconfirmed;
};

class History {
 public:
  using Clock = std::function<std::int64_t()>;

  explicit History(GamModel original, Clock clock = system_clock_ms)
      : original_(std::move(original)), current_(original_), clock_(std::move(clock)) {}

  // Rebuilds a history from a saved head model and its commits. The
  // original model is recovered by reverting commits head..1, and every id
  // and parent link is re-derived; any disagreement raises ReplayMismatch
  // naming the commit.
  static History restore(const GamModel& head_model, std::vector<Commit> commits,
                         std::size_t head, Clock clock = system_clock_ms) {
    if (head > commits.size()) {
      throw Error(ErrorCode::kReplayMismatch, "head", "head is past the last commit");
    }
    std::string parent(kRootId);
    for (const Commit& c : commits) {
      if (c.parent_id != parent || commit_id(parent, c.diff) != c.id) {
        throw Error(ErrorCode::kReplayMismatch, c.id,
                    "commit " + c.id + " does not hash to its recorded id");
      }
      parent = c.id;
    }
    GamModel original = head_model;
    for (std::size_t k = head; k-- > 0;) {
      if (!apply_diff(original, commits[k].diff, DiffDirection::kBackward)) {
        throw Error(ErrorCode::kReplayMismatch, commits[k].id,
                    "commit " + commits[k].id + " does not match the saved scores");
      }
    }
    History history(std::move(original), std::move(clock));
    history.commits_ = std::move(commits);
    // Forward replay over the whole list, redo tail included, must succeed
    // and land on the saved head model.
    GamModel replay = history.original_;
    for (std::size_t k = 0; k < history.commits_.size(); ++k) {
      if (!apply_diff(replay, history.commits_[k].diff, DiffDirection::kForward)) {
        throw Error(ErrorCode::kReplayMismatch, history.commits_[k].id,
                    "commit " + history.commits_[k].id + " does not replay");
      }
      if (k + 1 == head && !(replay == head_model)) {
        throw Error(ErrorCode::kReplayMismatch, history.commits_[k].id,
                    "replay does not reproduce the saved model");
      }
    }
    history.head_ = head;
    history.current_ = head_model;
    return history;
  }

  const GamModel& original() const { return original_; }
  const GamModel& current() const { return current_; }
  std::span<const Commit> commits() const { return commits_; }
  // Number of applied commits; 0 means the head is ROOT.
  std::size_t head() const { return head_; }
  std::string head_id() const {
    return head_ == 0 ? std::string(kRootId) : commits_[head_ - 1].id;
  }
  bool can_undo() const { return head_ > 0; }
  bool can_redo() const { return head_ < commits_.size(); }

  // Appends `diff` after the head, dropping any redo tail. `diff` must
  // transform the current model.
  const Commit& commit(const EditDiff& diff, std::string message) {
    if (diff.bin_indices.empty() || diff.is_noop()) {
      throw Error(ErrorCode::kEmptyDiff, diff.term_name, "diff changes no score");
    }
    GamModel next = current_;
    if (!apply_diff(next, diff, DiffDirection::kForward)) {
      throw Error(ErrorCode::kInvalidValue, diff.term_name,
                  "diff does not apply to the current model");
    }
    truncate_redo_tail();
    Commit c;
    c.parent_id = head_id();
    c.id = commit_id(c.parent_id, diff);
    c.diff = diff;
    c.timestamp_ms = clock_();
    c.message = std::move(message);
    commits_.push_back(std::move(c));
    head_ = commits_.size();
    current_ = std::move(next);
    remember_checkpoint();
    return commits_.back();
  }

  const GamModel& undo() {
    if (!can_undo()) throw Error(ErrorCode::kNothingToUndo, head_id(), "nothing to undo");
    apply_diff(current_, commits_[head_ - 1].diff, DiffDirection::kBackward);
    --head_;
    return current_;
  }

  const GamModel& redo() {
    if (!can_redo()) throw Error(ErrorCode::kNothingToRedo, head_id(), "nothing to redo");
    apply_diff(current_, commits_[head_].diff, DiffDirection::kForward);
    ++head_;
    return current_;
  }

  // Moves the head to `id` (or ROOT). Later commits stay available for
  // redo or another checkout until the next commit truncates them.
  const GamModel& checkout(std::string_view id) {
    const std::size_t target = position_of(id);
    if (target != head_) {
      current_ = model_at(target);
      head_ = target;
    }
    return current_;
  }

  // Model after the first `k` commits.
  GamModel model_at(std::size_t k) const {
    if (k > commits_.size()) {
      throw Error(ErrorCode::kUnknownCommit, std::to_string(k), "commit index out of range");
    }
    auto it = checkpoints_.upper_bound(k);
    std::size_t start = 0;
    GamModel model = original_;
    if (it != checkpoints_.begin()) {
      --it;
      start = it->first;
      model = it->second;
    }
    for (std::size_t i = start; i < k; ++i) {
      apply_diff(model, commits_[i].diff, DiffDirection::kForward);
      if ((i + 1) % kCheckpointInterval == 0 && !checkpoints_.count(i + 1)) {
        checkpoints_.emplace(i + 1, model);
      }
    }
    return model;
  }

  void confirm(std::string_view id, bool confirmed = true) {
    find(id).confirmed = confirmed;
  }

  void set_message(std::string_view id, std::string message) {
    find(id).message = std::move(message);
  }

  // Blocks until every commit up to the head is confirmed.
  SaveGate save_gate() const {
    SaveGate gate;
    for (std::size_t k = 0; k < head_; ++k) {
      if (!commits_[k].confirmed) gate.unconfirmed.push_back(commits_[k].id);
    }
    gate.ok = gate.unconfirmed.empty();
    return gate;
  }

  const Commit& find_commit(std::string_view id) const {
    return commits_[position_of(id, /*allow_root=*/false) - 1];
  }

 private:
  std::size_t position_of(std::string_view id, bool allow_root = true) const {
    if (allow_root && id == kRootId) return 0;
    for (std::size_t k = 0; k < commits_.size(); ++k) {
      if (commits_[k].id == id) return k + 1;
    }
    throw Error(ErrorCode::kUnknownCommit, std::string(id),
                "no commit with id '" + std::string(id) + "'");
  }

  Commit& find(std::string_view id) {
    return commits_[position_of(id, /*allow_root=*/false) - 1];
  }

  void truncate_redo_tail() {
    commits_.resize(head_);
    checkpoints_.erase(checkpoints_.upper_bound(head_), checkpoints_.end());
  }

  void remember_checkpoint() {
    if (head_ % kCheckpointInterval == 0) checkpoints_.insert_or_assign(head_, current_);
  }

  GamModel original_;
  GamModel current_;
  std::vector<Commit> commits_;
  std::size_t head_ = 0;
  Clock clock_;
  mutable std::map<std::size_t, GamModel> checkpoints_;
};

}  // namespace gamedit
