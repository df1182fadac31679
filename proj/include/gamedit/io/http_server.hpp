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

// HTTP binding for the message catalog: POST /api/<Message> with a JSON
// body. GET /api lists the catalog. Static UI assets, when a directory is
// given, are served from "/".

#pragma once

#include <string>

#include "gamedit/io/protocol.hpp"
#include "httplib.h"

namespace gamedit::io {

inline int http_status_for(const Json& response) {
  if (response.value("ok", false)) return 200;
  const std::string code = response["error"].value("code", "");
  if (code == "InternalError") return 500;
  if (code == "StagedEditPending" || code == "NoOpEdit" || code == "NothingToUndo" ||
      code == "NothingToRedo") {
    return 409;
  }
  return 400;
}

inline void install_routes(httplib::Server& server, Service& service) {
  server.Get("/api", [](const httplib::Request&, httplib::Response& res) {
    Json j;
    j["messages"] = Json::array();
    for (auto name : kMessageCatalog) j["messages"].push_back(std::string(name));
    res.set_content(canonical_dump(j, -1), "application/json");
  });
  server.Post(R"(/api/(\w+))", [&service](const httplib::Request& req, httplib::Response& res) {
    Json response;
    Json body = Json::object();
    if (!req.body.empty()) {
      try {
        body = Json::parse(req.body);
      } catch (const nlohmann::json::parse_error& e) {
        response = Service::error_response("SchemaError", "", std::string("invalid JSON: ") + e.what());
      }
    }
    const std::string message = req.matches[1].str();
    const bool known = std::find(kMessageCatalog.begin(), kMessageCatalog.end(), message) !=
                       kMessageCatalog.end();
    if (response.is_null()) response = service.handle(message, body);
    res.status = known ? http_status_for(response) : 404;
    res.set_content(canonical_dump(response, -1), "application/json");
  });
}

// Blocks until server.stop() is called. Throws when the port cannot be bound.
inline void serve(httplib::Server& server, Service& service, const std::string& host, int port,
                  const std::string& ui_dir = {}) {
  install_routes(server, service);
  if (!ui_dir.empty() && !server.set_mount_point("/", ui_dir)) {
    throw std::runtime_error("UI directory '" + ui_dir + "' does not exist");
  }
  // The library default adds SO_REUSEPORT, which lets a second server share a
  // port that is already in use. Keep only SO_REUSEADDR so that case fails.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  if (!server.bind_to_port(host, port)) {
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port) +
                             " (port in use?)");
  }
  server.listen_after_bind();
}

}  // namespace gamedit::io
