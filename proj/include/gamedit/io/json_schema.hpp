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

// Small helpers for reading strictly-typed JSON documents. Every failure is
// a SchemaError whose subject is the slash-separated path of the offending
// value.

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "gamedit/canonical_json.hpp"
#include "gamedit/error.hpp"

namespace gamedit::io {

inline std::string join_path(std::string_view base, std::string_view key) {
  if (base.empty()) return std::string(key);
  return std::string(base) + "/" + std::string(key);
}

inline std::string join_path(std::string_view base, std::size_t index) {
  return join_path(base, std::to_string(index));
}

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kSchemaError, path, (path.empty() ? "document" : path) + ": " + what);
}

inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    schema_fail("", std::string(what) + " is not valid JSON (" + e.what() + ")");
  }
}

// Rejects keys outside `allowed` and reports missing `required` keys.
inline void check_keys(const Json& object, const std::string& path,
                       std::initializer_list<std::string_view> allowed,
                       std::initializer_list<std::string_view> required) {
  if (!object.is_object()) schema_fail(path, "expected an object");
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool known = false;
    for (auto key : allowed) known = known || it.key() == key;
    if (!known) schema_fail(join_path(path, it.key()), "unknown field");
  }
  for (auto key : required) {
    if (!object.contains(key)) schema_fail(join_path(path, key), "missing required field");
  }
}

inline const Json& field(const Json& object, const std::string& path, std::string_view key) {
  auto it = object.find(key);
  if (it == object.end()) schema_fail(join_path(path, key), "missing required field");
  return *it;
}

inline double read_double(const Json& value, const std::string& path) {
  if (!value.is_number()) schema_fail(path, "expected a number");
  const double d = value.get<double>();
  if (!std::isfinite(d)) schema_fail(path, "expected a finite number");
  return d;
}

inline std::int64_t read_int(const Json& value, const std::string& path) {
  if (value.is_number_unsigned()) {
    const auto u = value.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      schema_fail(path, "integer out of range");
    }
    return static_cast<std::int64_t>(u);
  }
  if (!value.is_number_integer()) schema_fail(path, "expected an integer");
  return value.get<std::int64_t>();
}

inline std::size_t read_index(const Json& value, const std::string& path) {
  const auto i = read_int(value, path);
  if (i < 0) schema_fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

inline std::string read_string(const Json& value, const std::string& path) {
  if (!value.is_string()) schema_fail(path, "expected a string");
  return value.get<std::string>();
}

inline bool read_bool(const Json& value, const std::string& path) {
  if (!value.is_boolean()) schema_fail(path, "expected a boolean");
  return value.get<bool>();
}

inline const Json& read_array(const Json& value, const std::string& path) {
  if (!value.is_array()) schema_fail(path, "expected an array");
  return value;
}

template <typename Reader>
auto read_list(const Json& value, const std::string& path, Reader reader) {
  read_array(value, path);
  std::vector<decltype(reader(value, path))> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(reader(value[i], join_path(path, i)));
  return out;
}

}  // namespace gamedit::io
