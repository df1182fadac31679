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

// Umbrella header for the editing engine. The HTTP binding lives in
// gamedit/io/http_server.hpp and is not included here.

#pragma once

#include "gamedit/canonical_json.hpp"
#include "gamedit/correlation.hpp"
#include "gamedit/edit.hpp"
#include "gamedit/error.hpp"
#include "gamedit/history.hpp"
#include "gamedit/io/csv_dataset.hpp"
#include "gamedit/io/edit_script.hpp"
#include "gamedit/io/model_file.hpp"
#include "gamedit/io/protocol.hpp"
#include "gamedit/io/report_json.hpp"
#include "gamedit/io/script_runner.hpp"
#include "gamedit/isotonic.hpp"
#include "gamedit/metrics.hpp"
#include "gamedit/model.hpp"
#include "gamedit/session.hpp"
