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

// Deterministic JSON text. Keys keep insertion order, floats are written
// as the shortest decimal that parses back to the same double, and layout
// is fixed, so equal values always produce equal bytes.

#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "json.hpp"

namespace gamedit {

using Json = nlohmann::ordered_json;

inline std::string format_double(double value) {
  if (value == 0.0) return std::signbit(value) ? "-0.0" : "0";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) return "null";
  return std::string(buffer, end);
}

namespace internal {

inline bool is_scalar_array(const Json& value) {
  for (const auto& element : value) {
    if (element.is_structured()) return false;
  }
  return true;
}

inline void write_scalar(const Json& value, std::string& out) {
  if (value.is_number_float()) {
    const double d = value.get<double>();
    out += std::isfinite(d) ? format_double(d) : "null";
  } else {
    out += value.dump();
  }
}

inline void write_json(const Json& value, std::string& out, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  if (value.is_object()) {
    if (value.empty()) {
      out += "{}";
      return;
    }
    out += '{';
    bool first = true;
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      out += Json(it.key()).dump();
      out += pretty ? ": " : ":";
      write_json(it.value(), out, indent, depth + 1);
    }
    newline(depth);
    out += '}';
  } else if (value.is_array()) {
    if (value.empty()) {
      out += "[]";
      return;
    }
    const bool inline_array = !pretty || is_scalar_array(value);
    out += '[';
    bool first = true;
    for (const auto& element : value) {
      if (!first) out += inline_array && pretty ? ", " : ",";
      first = false;
      if (!inline_array) newline(depth + 1);
      write_json(element, out, indent, depth + 1);
    }
    if (!inline_array) newline(depth);
    out += ']';
  } else {
    write_scalar(value, out);
  }
}

}  // namespace internal

// indent < 0 writes the compact form used for hashing.
inline std::string canonical_dump(const Json& value, int indent = 2) {
  std::string out;
  internal::write_json(value, out, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

}  // namespace gamedit
