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

#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "gamedit/gamedit.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace gamedit::io {
namespace {

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(GAMEDIT_TEST_DATA) + "/" + name, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

History::Clock fixed_clock() {
  return [t = std::int64_t{1700000000000}]() mutable { return t += 1000; };
}

Error error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return Error(ErrorCode::kBadRequest, "", "");
}

TEST(CanonicalJsonTest, Numbers) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-0.0), "-0.0");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(1e300), "1e+300");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
  Json j;
  j["b"] = std::vector<double>{1.5, -0.0};
  j["a"] = Json::object();
  j["c"] = Json::array({Json::object({{"x", 1}})});
  EXPECT_EQ(canonical_dump(j, -1), R"({"b":[1.5,-0.0],"a":{},"c":[{"x":1}]})");
  EXPECT_EQ(canonical_dump(j), "{\n  \"b\": [1.5, -0.0],\n  \"a\": {},\n  \"c\": [\n    {\n"
                               "      \"x\": 1\n    }\n  ]\n}\n");
}

TEST(CanonicalJsonTest, DoublesRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20000; ++i) {
    double d;
    const std::uint64_t bits = rng();
    std::memcpy(&d, &bits, sizeof d);
    if (!std::isfinite(d)) continue;
    const Json parsed = Json::parse(format_double(d));
    const double back = parsed.get<double>();
    EXPECT_EQ(std::memcmp(&back, &d, sizeof d), 0) << format_double(d);
  }
}

TEST(ModelFileTest, FixtureMatchesBuiltInModel) {
  const std::string text = read_file("pneumonia_model.json");
  EXPECT_EQ(text, save_model(testing::pneumonia_like_model()));
  const LoadedModel loaded = load_model(text);
  EXPECT_FALSE(loaded.has_history_block);
  EXPECT_EQ(loaded.history.current(), testing::pneumonia_like_model());
}

TEST(ModelFileTest, RoundTripWithoutHistory) {
  std::mt19937_64 rng(21);
  testing::RandomModelOptions options;
  options.interactions = true;
  for (int trial = 0; trial < 50; ++trial) {
    options.link = trial % 2 ? LinkFunction::kIdentity : LinkFunction::kLogit;
    GamModel model = testing::random_model(rng, options);
    model.terms[0].scores[0] = -0.0;
    const std::string first = save_model(model);
    const LoadedModel loaded = load_model(first);
    EXPECT_EQ(loaded.history.current(), model);
    EXPECT_TRUE(std::signbit(loaded.history.current().terms[0].scores[0]));
    EXPECT_EQ(save_model(loaded.history.current()), first);
  }
}

TEST(ModelFileTest, RoundTripWithHistory) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const GamModel model = testing::random_model(rng);
    History h(model, fixed_clock());
    std::uniform_real_distribution<double> delta(-1, 1);
    for (int k = 0; k < 1 + trial % 6; ++k) {
      const auto& t = model.terms[static_cast<std::size_t>(k) % model.terms.size()];
      h.commit(apply_edit(h.current(), {MoveEdit{delta(rng)}, Selection{t.name, {0}}}).diff,
               "edit \"" + std::to_string(k) + "\"\n");
      if (k % 2) h.confirm(h.head_id());
    }
    if (trial % 3 == 0) h.undo();
    const std::string first = save_model(h);
    const LoadedModel loaded = load_model(first, fixed_clock());
    EXPECT_TRUE(loaded.has_history_block);
    EXPECT_EQ(loaded.history.original(), model);
    EXPECT_EQ(loaded.history.current(), h.current());
    EXPECT_EQ(loaded.history.head(), h.head());
    EXPECT_EQ(save_model(loaded.history), first);
  }
}

TEST(ModelFileTest, SchemaErrorsNameThePath) {
  Json j = model_to_json(testing::pneumonia_like_model());
  auto path_of = [](const Json& doc) {
    return error_of([&] { load_model(canonical_dump(doc)); }).subject();
  };
  Json bad = j;
  bad["terms"][3]["edges"].erase(0);
  EXPECT_EQ(path_of(bad), "terms/3/edges");
  bad = j;
  bad["terms"][1]["colour"] = "red";
  EXPECT_EQ(path_of(bad), "terms/1/colour");
  bad = j;
  bad["terms"][1]["scores"][0] = "x";
  EXPECT_EQ(path_of(bad), "terms/1/scores/0");
  bad = j;
  bad["link"] = "probit";
  EXPECT_EQ(path_of(bad), "link");
  bad = j;
  bad.erase("intercept");
  EXPECT_EQ(path_of(bad), "intercept");
  bad = j;
  bad["format_version"] = 2;
  EXPECT_EQ(path_of(bad), "format_version");
  EXPECT_EQ(error_of([] { load_model("{not json"); }).code(), ErrorCode::kSchemaError);
  EXPECT_EQ(error_of([] { load_model("[]"); }).code(), ErrorCode::kSchemaError);
}

TEST(ModelFileTest, TamperedHistoryIsRejected) {
  const GamModel model = testing::pneumonia_like_model();
  History h(model, fixed_clock());
  h.commit(apply_edit(model, {DeleteEdit{}, Selection{"Asthma", {1}}}).diff, "");
  h.commit(apply_edit(h.current(), {MoveEdit{0.5}, Selection{"Temperature", {2, 3}}}).diff, "");
  const std::string text = save_model(h);
  // Flip one digit inside the second commit's recorded new scores.
  const std::size_t at = text.find("\"new\": [0.6");
  ASSERT_NE(at, std::string::npos);
  std::string tampered = text;
  tampered[at + 10] = '7';
  const Error e = error_of([&] { load_model(tampered); });
  EXPECT_EQ(e.code(), ErrorCode::kReplayMismatch);
  EXPECT_EQ(e.subject(), h.commits()[1].id);
  // Messages and confirmation flags are not hashed.
  std::string annotated = text;
  annotated.replace(annotated.find("\"message\": \"\""), 13, "\"message\": \"ok\"");
  EXPECT_NO_THROW(load_model(annotated));
}

TEST(CsvTest, ParsesQuotesAndLineEndings) {
  const auto records = parse_csv("\xEF\xBB\xBF" "a,b\r\n\"x, \"\"y\"\"\",2\n\n\"multi\nline\",3");
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].fields, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(records[1].fields, (std::vector<std::string>{"x, \"y\"", "2"}));
  EXPECT_EQ(records[2].line, 4u);
  EXPECT_EQ(records[2].fields[0], "multi\nline");
  EXPECT_EQ(error_of([] { parse_csv("a\n\"open"); }).code(), ErrorCode::kRowParseError);
}

GamModel tiny_model() {
  GamModel model;
  model.terms.push_back(FeatureTerm{"age", TermKind::kContinuous, {0, 50}, {}, {-0.5, 0.5},
                                    {1, 1}, std::nullopt});
  model.terms.push_back(FeatureTerm{"gender", TermKind::kCategorical, {}, {"female", "male"},
                                    {0.1, -0.1}, {1, 1}, std::nullopt});
  return model;
}

TEST(CsvTest, LoadsFixture) {
  const Dataset d = load_dataset(read_file("tiny.csv"), tiny_model());
  ASSERT_EQ(d.samples.size(), 5u);
  EXPECT_EQ(std::get<double>(d.samples[1].values[0]), 70.0);
  EXPECT_EQ(std::get<std::string>(d.samples[1].values[1]), "male");
  EXPECT_EQ(d.samples[1].label, 1.0);
  EXPECT_EQ(d.skipped_rows, 0u);
}

TEST(CsvTest, MissingColumns) {
  const Error label = error_of([] { load_dataset("age,gender\n1,male\n", tiny_model()); });
  EXPECT_EQ(label.code(), ErrorCode::kMissingColumn);
  EXPECT_EQ(label.subject(), "label");
  const Error feature = error_of([] { load_dataset("age,label\n1,0\n", tiny_model()); });
  EXPECT_EQ(feature.subject(), "gender");
  CsvOptions options;
  options.label_column = "died";
  EXPECT_EQ(load_dataset("gender,died,extra,age\nmale,1,zz,3\n", tiny_model(), options)
                .samples.size(),
            1u);
}

TEST(CsvTest, StrictAndLenientRows) {
  const std::string csv =
      "age,gender,label\n"
      "20,female,0\n"
      "abc,male,1\n"
      "30,other,0\n"
      "40,male,0.5\n"
      "41,male\n"
      " 1e1 ,male,1\n";
  const Error strict = error_of([&] { load_dataset(csv, tiny_model()); });
  EXPECT_EQ(strict.code(), ErrorCode::kRowParseError);
  EXPECT_EQ(strict.subject(), "3");
  CsvOptions lenient;
  lenient.lenient = true;
  const Dataset d = load_dataset(csv, tiny_model(), lenient);
  EXPECT_EQ(d.samples.size(), 2u);
  EXPECT_EQ(d.skipped_rows, 4u);
  ASSERT_EQ(d.issues.size(), 4u);
  EXPECT_EQ(d.issues[0].line, 3u);
  EXPECT_EQ(d.issues[3].line, 6u);
  EXPECT_EQ(std::get<double>(d.samples[1].values[0]), 10.0);
}

TEST(CsvTest, EmptyCategoricalIsMissing) {
  GamModel model = tiny_model();
  EXPECT_EQ(error_of([&] { load_dataset("age,gender,label\n1,,0\n", model); }).code(),
            ErrorCode::kRowParseError);
  model.terms[1].bin_labels = {"female", std::string(kMissingLabel)};
  const Dataset d = load_dataset("age,gender,label\n1,,0\n", model);
  EXPECT_EQ(std::get<std::string>(d.samples[0].values[1]), kMissingLabel);
}

TEST(CsvTest, RegressionLabelsAreFree) {
  GamModel model = tiny_model();
  model.link = LinkFunction::kIdentity;
  EXPECT_EQ(load_dataset("age,gender,label\n1,male,-12.5\n", model).samples[0].label, -12.5);
}

TEST(EditScriptTest, ParsesEveryForm) {
  const GamModel model = testing::pneumonia_like_model();
  const EditScript script = parse_edit_script(read_file("pneumonia_edits.json"));
  ASSERT_EQ(script.records.size(), 3u);
  const EditOp first = edit_from_json(model, script.records[0], "edits/0");
  EXPECT_EQ(first.selection, select_x_range(model, "Age", 81, 87));
  EXPECT_EQ(first.selection.bin_indices.size(), 7u);
  const EditOp second = edit_from_json(model, script.records[1], "edits/1");
  EXPECT_EQ(second.selection.bin_indices.size(), 8u);
  EXPECT_EQ(tool_name(second.kind), "align-left");

  const Json records = Json::parse(R"([
    {"tool": "move", "delta": -0.25, "term": "Temperature", "bins": [1, 3]},
    {"tool": "interpolate", "mode": "equal_bins", "segments": 2, "term": "Age", "indices": [3, 4, 5]},
    {"tool": "interpolate", "mode": "regression", "term": "Age", "bins": [0, 9]},
    {"tool": "monotonize", "direction": "decreasing", "term": "Temperature", "x_range": [null, 97]},
    {"tool": "align", "anchor": "weighted_mean", "term": "Gender", "labels": ["male", "female"]}
  ])");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const EditOp op = edit_from_json(model, records[i], "edits/" + std::to_string(i));
    // edit_to_json emits the resolved index form, which parses back to the same op.
    const EditOp again = edit_from_json(model, edit_to_json(op), "x");
    EXPECT_EQ(again.selection, op.selection);
    EXPECT_EQ(tool_name(again.kind), tool_name(op.kind));
  }
}

TEST(EditScriptTest, RejectsBadRecords) {
  const GamModel model = testing::pneumonia_like_model();
  auto subject = [&](const char* text) {
    return error_of([&] { edit_from_json(model, Json::parse(text), "edits/0"); }).subject();
  };
  EXPECT_EQ(subject(R"({"tool": "twist", "term": "Age", "bins": [0, 1]})"), "edits/0/tool");
  EXPECT_EQ(subject(R"({"tool": "move", "term": "Age", "bins": [0, 1]})"), "edits/0/delta");
  EXPECT_EQ(subject(R"({"tool": "delete", "term": "Age"})"), "edits/0");
  EXPECT_EQ(subject(R"({"tool": "delete", "term": "Age", "bins": [0, 1], "indices": [0]})"),
            "edits/0");
  EXPECT_EQ(subject(R"({"tool": "delete", "term": "Age", "bins": [3, 1]})"), "edits/0/bins");
  EXPECT_EQ(subject(R"({"tool": "delete", "term": "Age", "bins": [0, 1], "oops": 1})"),
            "edits/0/oops");
  EXPECT_EQ(subject(R"({"tool": "align", "anchor": "middle", "term": "Age", "bins": [0, 1]})"),
            "edits/0/anchor");
  EXPECT_EQ(error_of([] { parse_edit_script(R"({"edits": []})"); }).subject(), "format_version");
}

Session make_session(std::size_t samples = 400) {
  Dataset d = load_dataset(read_file("pneumonia.csv"), testing::pneumonia_like_model());
  d.samples.resize(std::min(samples, d.samples.size()));
  return Session(History(testing::pneumonia_like_model(), fixed_clock()), std::move(d.samples));
}

TEST(ScriptRunnerTest, EmptyScriptChangesNothing) {
  Session s = make_session();
  const ScriptResult r = run_script(s, parse_edit_script(R"({"format_version": 1, "edits": []})"));
  EXPECT_TRUE(r.commits.empty());
  EXPECT_EQ(s.committed(), testing::pneumonia_like_model());
  EXPECT_EQ(r.before, r.after);
}

TEST(ScriptRunnerTest, NoOpAbortsAtItsIndex) {
  Session s = make_session();
  const auto script = parse_edit_script(R"({"format_version": 1, "edits": [
      {"tool": "move", "delta": 0, "term": "Gender", "labels": ["male"]}]})");
  const Error e = error_of([&] { run_script(s, script); });
  EXPECT_EQ(e.code(), ErrorCode::kScriptError);
  EXPECT_EQ(e.subject(), "0");
  EXPECT_NE(std::string(e.what()).find("NoOpEdit"), std::string::npos);
  EXPECT_FALSE(s.staged());

  const auto second_fails = parse_edit_script(R"({"format_version": 1, "edits": [
      {"tool": "delete", "term": "Asthma", "labels": ["true"]},
      {"tool": "delete", "term": "Asthma", "labels": ["true"]}]})");
  EXPECT_EQ(error_of([&] { run_script(s, second_fails); }).subject(), "1");
  EXPECT_EQ(s.history().head(), 1u);
}

TEST(ScriptRunnerTest, CaseStudyWorkflow) {
  const auto script = parse_edit_script(read_file("pneumonia_edits.json"));
  Session s = make_session();
  const ScriptResult r = run_script(s, script);
  ASSERT_EQ(r.commits.size(), 3u);
  for (const Commit& c : r.commits) EXPECT_TRUE(c.confirmed);
  EXPECT_TRUE(s.save_gate().ok);
  EXPECT_EQ(r.commits[0].message, "Smooth the dip and jump between 81 and 87");

  const GamModel& edited = s.committed();
  const FeatureTerm& age = edited.term("Age");
  const FeatureTerm& before = testing::pneumonia_like_model().term("Age");
  const std::size_t a81 = bin_index(age, 81.0), a87 = bin_index(age, 87.0);
  for (std::size_t i = a81; i <= a87; ++i) {
    const double t = (age.bin_edges[i] - 81.0) / 6.0;
    EXPECT_LE(age.scores[i], std::lerp(before.scores[a81], before.scores[a87], t) + 1e-12);
  }
  const std::size_t a99 = bin_index(age, 99.0);
  for (std::size_t i = a99; i < age.bin_count(); ++i) EXPECT_EQ(age.scores[i], before.scores[a99]);
  EXPECT_EQ(edited.term("Asthma").scores, (std::vector<double>{0, 0}));

  // Same script, same model: the same file apart from timestamps.
  Session again = make_session();
  run_script(again, script);
  EXPECT_EQ(save_model(again.history()), save_model(s.history()));
  const Json out = script_result_to_json(r);
  EXPECT_EQ(out["commits"].size(), 3u);
  EXPECT_EQ(out["before"]["scope"]["kind"], "global");
}

TEST(ReportJsonTest, UndefinedValuesAreNull) {
  MetricReport report{Scope::global(), 1, classification_metrics(std::vector<double>{0.9},
                                                                 std::vector<double>{1}),
                      std::nullopt};
  const Json j = report_to_json(report);
  EXPECT_TRUE(j["classification"]["auc"].is_null());
  EXPECT_EQ(j["classification"]["accuracy"], 1.0);
  EXPECT_EQ(canonical_dump(j["classification"]["confusion"], -1),
            R"({"tp":1,"fp":0,"tn":0,"fn":0})");
}

TEST(ReportJsonTest, ScopeRoundTrip) {
  const GamModel model = testing::pneumonia_like_model();
  for (const Scope& scope : {Scope::global(), Scope::slice("Gender", "female"),
                             Scope::selected(select_bin_range(model, "Age", 3, 5))}) {
    EXPECT_EQ(scope_from_json(model, scope_to_json(scope), "scope"), scope);
  }
  EXPECT_EQ(error_of([&] {
              scope_from_json(model, Json::parse(R"({"kind": "zoom"})"), "scope");
            }).subject(),
            "scope/kind");
}

}  // namespace
}  // namespace gamedit::io
