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

#include <stdexcept>
#include <string>
#include <string_view>

namespace gamedit {

enum class ErrorCode {
  kUnknownCategory,
  kDegenerateCounts,
  kDegenerateGeometry,
  kInvalidValue,
  kInvalidSelection,
  kInteractionNotEditable,
  kStagedEditPending,
  kNoStagedEdit,
  kNoOpEdit,
  kEmptyDiff,
  kNothingToUndo,
  kNothingToRedo,
  kUnknownCommit,
  kUnknownSlice,
  kSchemaError,
  kReplayMismatch,
  kMissingColumn,
  kRowParseError,
  kScriptError,
  kNoModel,
  kBadRequest,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownCategory: return "UnknownCategory";
    case ErrorCode::kDegenerateCounts: return "DegenerateCounts";
    case ErrorCode::kDegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::kInvalidValue: return "InvalidValue";
    case ErrorCode::kInvalidSelection: return "InvalidSelection";
    case ErrorCode::kInteractionNotEditable: return "InteractionNotEditable";
    case ErrorCode::kStagedEditPending: return "StagedEditPending";
    case ErrorCode::kNoStagedEdit: return "NoStagedEdit";
    case ErrorCode::kNoOpEdit: return "NoOpEdit";
    case ErrorCode::kEmptyDiff: return "EmptyDiff";
    case ErrorCode::kNothingToUndo: return "NothingToUndo";
    case ErrorCode::kNothingToRedo: return "NothingToRedo";
    case ErrorCode::kUnknownCommit: return "UnknownCommit";
    case ErrorCode::kUnknownSlice: return "UnknownSlice";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kReplayMismatch: return "ReplayMismatch";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kRowParseError: return "RowParseError";
    case ErrorCode::kScriptError: return "ScriptError";
    case ErrorCode::kNoModel: return "NoModel";
    case ErrorCode::kBadRequest: return "BadRequest";
  }
  return "Unknown";
}

// All library failures surface as this exception. `subject` carries the
// term name, JSON path, commit id, column name, or row number the error
// refers to, so callers can report it without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        subject_(std::move(subject)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorCode code_;
  std::string subject_;
};

}  // namespace gamedit
