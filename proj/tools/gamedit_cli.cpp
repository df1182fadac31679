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

// gamedit command line: serve an editing session over HTTP, replay edit
// scripts, compute metrics, validate files and export canonical models.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gamedit/gamedit.hpp"
#include "gamedit/io/http_server.hpp"

namespace {

using gamedit::Json;
namespace io = gamedit::io;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

struct DataFlags {
  std::string data_path;
  std::string label_column = "label";
  bool lenient = false;
  double threshold = gamedit::kDefaultThreshold;

  io::CsvOptions csv() const { return {label_column, lenient}; }
};

void add_data_flags(CLI::App* app, DataFlags& flags, bool required) {
  auto* opt = app->add_option("-d,--data", flags.data_path, "validation dataset (CSV)");
  if (required) opt->required();
  app->add_option("--label-column", flags.label_column, "name of the label column")
      ->capture_default_str();
  app->add_flag("--lenient", flags.lenient, "skip malformed rows instead of failing");
  app->add_option("--threshold", flags.threshold, "classification threshold")
      ->capture_default_str();
}

void report_skipped(const io::Dataset& dataset) {
  if (dataset.skipped_rows == 0) return;
  std::cerr << "skipped " << dataset.skipped_rows << " malformed row(s)\n";
  for (const auto& issue : dataset.issues) {
    std::cerr << "  line " << issue.line << ": " << issue.message << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive editor for binned generalized additive models"};
  app.require_subcommand(1);

  std::string model_path;
  DataFlags data;

  auto* serve = app.add_subcommand("serve", "serve an editing session over HTTP");
  std::string host = "127.0.0.1";
  int port = 8765;
  std::string ui_dir;
  serve->add_option("-m,--model", model_path, "model file")->required();
  add_data_flags(serve, data, true);
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("-p,--port", port)->capture_default_str();
  serve->add_option("--ui-dir", ui_dir, "directory of static UI assets to serve at /");

  auto* apply = app.add_subcommand("apply", "run an edit script and commit every edit");
  std::string script_path, out_path;
  apply->add_option("-m,--model", model_path, "model file")->required();
  add_data_flags(apply, data, true);
  apply->add_option("-s,--script", script_path, "edit script (JSON)")->required();
  apply->add_option("-o,--out", out_path, "where to write the edited model");

  auto* metrics = app.add_subcommand("metrics", "print metrics of a model on a dataset");
  std::string slice;
  metrics->add_option("-m,--model", model_path, "model file")->required();
  add_data_flags(metrics, data, true);
  metrics->add_option("--slice", slice, "restrict to a categorical level, as term=label");

  auto* validate = app.add_subcommand("validate", "check a model file (and a dataset)");
  validate->add_option("-m,--model", model_path, "model file")->required();
  add_data_flags(validate, data, false);

  auto* export_cmd = app.add_subcommand("export", "write a model in canonical form");
  bool recenter = false;
  export_cmd->add_option("-m,--model", model_path, "model file")->required();
  export_cmd->add_option("-o,--out", out_path, "output path")->required();
  export_cmd->add_flag("--recenter", recenter,
                       "recenter shape functions into the intercept (drops history)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      io::Service service({data.threshold, data.csv()}, read_file(data.data_path));
      service.load(read_file(model_path));
      httplib::Server server;
      std::cerr << "serving " << model_path << " on http://" << host << ":" << port << "\n";
      io::serve(server, service, host, port, ui_dir);
      return 0;
    }

    io::LoadedModel loaded = io::load_model(read_file(model_path));

    if (*apply) {
      io::Dataset dataset =
          io::load_dataset(read_file(data.data_path), loaded.history.current(), data.csv());
      report_skipped(dataset);
      gamedit::Session session(std::move(loaded.history), std::move(dataset.samples),
                               data.threshold);
      const io::EditScript script = io::parse_edit_script(read_file(script_path));
      const io::ScriptResult result = io::run_script(session, script);
      if (!out_path.empty()) write_file(out_path, io::save_model(session.history()));
      std::cout << gamedit::canonical_dump(io::script_result_to_json(result));
      return 0;
    }

    if (*metrics) {
      io::Dataset dataset =
          io::load_dataset(read_file(data.data_path), loaded.history.current(), data.csv());
      report_skipped(dataset);
      gamedit::Scope scope = gamedit::Scope::global();
      if (!slice.empty()) {
        const auto eq = slice.find('=');
        if (eq == std::string::npos) throw std::runtime_error("--slice expects term=label");
        scope = gamedit::Scope::slice(slice.substr(0, eq), slice.substr(eq + 1));
      }
      const gamedit::MetricReport report = gamedit::full_report(
          loaded.history.current(), dataset.samples, scope, data.threshold);
      std::cout << gamedit::canonical_dump(io::report_to_json(report));
      return 0;
    }

    if (*validate) {
      const gamedit::GamModel& model = loaded.history.current();
      Json summary;
      summary["features"] = model.feature_count();
      summary["interactions"] = model.interactions.size();
      summary["commits"] = loaded.history.commits().size();
      summary["head"] = loaded.history.head_id();
      summary["unconfirmed"] = loaded.history.save_gate().unconfirmed;
      if (!data.data_path.empty()) {
        io::Dataset dataset = io::load_dataset(read_file(data.data_path), model, data.csv());
        report_skipped(dataset);
        summary["samples"] = dataset.samples.size();
        summary["skipped_rows"] = dataset.skipped_rows;
      }
      std::cout << gamedit::canonical_dump(summary);
      return 0;
    }

    if (*export_cmd) {
      const gamedit::SaveGate gate = loaded.history.save_gate();
      if (!gate.ok) {
        std::cerr << "refusing to export: unconfirmed commits";
        for (const auto& id : gate.unconfirmed) std::cerr << ' ' << id;
        std::cerr << "\n";
        return 2;
      }
      if (recenter) {
        write_file(out_path, io::save_model(gamedit::recenter(loaded.history.current())));
      } else if (loaded.has_history_block) {
        write_file(out_path, io::save_model(loaded.history));
      } else {
        write_file(out_path, io::save_model(loaded.history.current()));
      }
      return 0;
    }
  } catch (const gamedit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
