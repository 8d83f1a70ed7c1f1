// Copyright 2026 The Proxyline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "proxyline/cli/check.h"
#include "proxyline/cli/commands.h"
#include "proxyline/cli/replicate.h"
#include "proxyline/cli/report.h"
#include "proxyline/cli/scenario_file.h"

namespace proxyline::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = PROXYLINE_TEST_FIXTURES;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

fs::path TempDir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("proxyline_cli_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

SchemaError ParseError(const std::string& text) {
  try {
    ParseScenarioFile(text, "doc");
  } catch (const SchemaError& e) {
    return e;
  }
  FAIL("document was accepted");
  return SchemaError("", "", 0, "");
}

TEST_CASE("scenario file with every section") {
  const ScenarioFile f = ParseScenarioFile(R"({
    "schema_version": 1,
    "name": "full",
    "scenario": {"peaks": [-2, 3], "followers": [0, 1],
                 "space": {"kind": "discrete", "step": 0.5},
                 "tie_break": {"delegation": "lower_proxy_index"}},
    "policies": [{"kind": "scripted", "script": [1], "after": {"kind": "monotone", "fraction": 0.25}},
                 {"kind": "best_response", "truth_oriented": true}],
    "scheduler": {"kind": "scripted", "order": [1, 0]},
    "run": {"max_steps": 12, "oscillation_window": 8, "alpha": 0.75, "seed": 9},
    "mode": "full_info",
    "output": {"trace": "t.jsonl", "summary": "s.json"}
  })",
                                           "doc");
  CHECK(f.name == "full");
  CHECK(f.peaks == std::vector<double>{-2, 3});
  CHECK(f.space == Space::Discrete(0.5));
  REQUIRE(f.policies.size() == 2);
  CHECK(f.policies[0].kind == PolicySpec::Kind::kScripted);
  REQUIRE(f.policies[0].after_script);
  CHECK(f.policies[0].after_script->fraction == 0.25);
  CHECK(f.policies[1].truth_oriented);
  CHECK(f.scheduler.order == std::vector<ProxyId>{1, 0});
  CHECK(f.run.max_steps == 12);
  CHECK(f.run.oscillation_window == 8);
  CHECK(f.alpha == 0.75);
  CHECK(f.seed == 9);
  CHECK(f.trace_path == "t.jsonl");
}

TEST_CASE("defaults: one monotone policy, round robin, full information") {
  const ScenarioFile f =
      ParseScenarioFile(R"({"schema_version": 1, "scenario": {"peaks": [0]}})", "doc");
  CHECK(f.followers.empty());
  REQUIRE(f.policies.size() == 1);
  CHECK(f.policies[0].kind == PolicySpec::Kind::kMonotoneBetterResponse);
  CHECK(f.scheduler.kind == Scheduler::Kind::kRoundRobin);
  CHECK(f.mode == Mode::kFullInfo);
}

TEST_CASE("unknown fields are rejected with their line") {
  SchemaError e = ParseError("{\n  \"schema_version\": 1,\n  \"scenario\": {\n"
                             "    \"peaks\": [1, 2],\n    \"folowers\": [0]\n  }\n}\n");
  CHECK(e.where() == "/scenario/folowers");
  CHECK(e.line() == 5);
  CHECK(std::string(e.what()).find("unknown field") != std::string::npos);

  e = ParseError(R"({"schema_version": 1, "scenario": {"peaks": [1]}, "extra": 0})");
  CHECK(e.where() == "/extra");
  e = ParseError(R"({"schema_version": 1, "scenario": {"peaks": [1]},
                     "policies": [{"kind": "monotone", "speed": 2}]})");
  CHECK(e.where() == "/policies/0/speed");
  CHECK(e.line() == 2);
}

TEST_CASE("type, value and syntax errors") {
  CHECK(ParseError(R"({"schema_version": 2, "scenario": {"peaks": [1]}})").where() ==
        "/schema_version");
  CHECK(ParseError(R"({"scenario": {"peaks": [1]}})").where() == "/schema_version");
  CHECK(ParseError(R"({"schema_version": 1})").where() == "/scenario");
  CHECK(ParseError("{\"schema_version\": 1,\n \"scenario\": {\"peaks\": [1, \"x\"]}}").where() ==
        "/scenario/peaks/1");
  CHECK(ParseError(R"({"schema_version": 1, "scenario": {"peaks": [1]},
                       "policies": [{"kind": "monotone", "fraction": 2}]})")
            .where() == "/policies/0");
  CHECK(ParseError(R"({"schema_version": 1, "scenario": {"peaks": [1, 2]},
                       "policies": [{"kind": "monotone"}, {"kind": "monotone"}, {"kind": "monotone"}]})")
            .where() == "/policies");
  CHECK(ParseError(R"({"schema_version": 1, "scenario": {"peaks": [1, 2]},
                       "scheduler": {"kind": "scripted", "order": [5]}})")
            .where() == "/scheduler");
  CHECK(ParseError(R"({"schema_version": 1, "scenario": {"peaks": []}})").where() == "/scenario");
  CHECK(ParseError(R"({"schema_version": 1, "scenario": {"peaks": [1]}, "mode": "x"})").where() ==
        "/mode");

  SchemaError syntax = ParseError("{\n  \"schema_version\": 1,\n  \"scenario\": {\"peaks\": [1],,}\n}");
  CHECK(syntax.line() == 3);
  CHECK(std::string(syntax.what()).find("column") != std::string::npos);
}

TEST_CASE("random scenario block follows the seed") {
  const std::string text = R"({"schema_version": 1,
    "scenario": {"random": {"min_proxies": 2, "max_proxies": 3, "max_followers": 4}}})";
  ScenarioFile a = ParseScenarioFile(text, "doc");
  ScenarioFile b = a;
  CHECK(a.MakeScenario().proxy_peaks() == b.MakeScenario().proxy_peaks());
  CHECK(a.MakeScenario().num_proxies() >= 2);
  CHECK(a.MakeScenario().num_proxies() <= 3);
  CHECK(ParseError(R"({"schema_version": 1,
    "scenario": {"random": {}, "peaks": [1]}})").where() == "/scenario");
}

TEST_CASE("summary re-parses under its schema") {
  for (const char* name : {"appendix_a", "appendix_b", "example3", "fig5_metamove"}) {
    CAPTURE(name);
    const RunResult r = Execute(LoadScenarioFile(kFixtures / (std::string(name) + ".json")));
    const Summary s = MakeSummary(r);
    const Summary back = ParseSummary(SummaryText(s), name);
    CHECK(back.dump() == Summary::parse(SummaryText(s)).dump());
    CHECK(SummaryText(back) == SummaryText(s));
  }
  CHECK_THROWS_AS(ParseSummary(R"({"schema_version": 1, "bogus": 1})", "s"), SchemaError);
  const RunResult r = Execute(LoadScenarioFile(kFixtures / "appendix_a.json"));
  Summary wrong = MakeSummary(r);
  wrong["turns"] = "many";
  CHECK_THROWS_AS(ParseSummary(wrong.dump(), "s"), SchemaError);
  Summary extra = MakeSummary(r);
  extra["note"] = "x";
  CHECK_THROWS_AS(ParseSummary(extra.dump(), "s"), SchemaError);
}

TEST_CASE("trace has one parseable record per move") {
  const RunResult r = Execute(LoadScenarioFile(kFixtures / "appendix_b.json"));
  std::istringstream lines(TraceLines(r));
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    Summary record = Summary::parse(line);
    CHECK(record.contains("interval_after"));
    CHECK(record["mover"] == r.dynamics.moves[count].mover);
    ++count;
  }
  CHECK(count == r.dynamics.moves.size());
}

TEST_CASE("run output is byte-identical across repeats") {
  std::ostringstream out;
  std::ostringstream err;
  fs::path a = TempDir("a");
  fs::path b = TempDir("b");
  for (const char* name : {"appendix_a", "appendix_b", "example3"}) {
    CAPTURE(name);
    const fs::path file = kFixtures / (std::string(name) + ".json");
    REQUIRE(CmdRun(file, {}, {1, a}, out, err) == kExitOk);
    REQUIRE(CmdRun(file, {}, {1, b}, out, err) == kExitOk);
    for (const char* suffix : {".trace.jsonl", ".summary.json"}) {
      const std::string leaf = std::string(name) + suffix;
      CHECK(fs::exists(a / leaf));
      CHECK(Slurp(a / leaf) == Slurp(b / leaf));
    }
  }
}

TEST_CASE("run overrides and exit codes") {
  std::ostringstream out;
  std::ostringstream err;
  fs::path dir = TempDir("overrides");
  RunOverrides overrides;
  overrides.max_steps = 3;
  REQUIRE(CmdRun(kFixtures / "example3.json", overrides, {1, dir}, out, err) == kExitOk);
  Summary s = ParseSummary(Slurp(dir / "example3.summary.json"), "summary");
  CHECK(s["turns"] == 3);
  CHECK(s["stop_reason"] == "MaxSteps");

  std::ofstream(dir / "bad.json") << "{\"schema_version\": 1, \"scenario\": {\"peaks\": [1], \"x\": 1}}";
  CHECK(CmdRun(dir / "bad.json", {}, {1, dir}, out, err) == kExitInvalid);
  CHECK(err.str().find("/scenario/x") != std::string::npos);
  CHECK(CmdRun(dir / "missing.json", {}, {1, dir}, out, err) == kExitInvalid);
  CHECK(CmdCheckFile(dir / "bad.json", {}, out, err) == kExitInvalid);
  CHECK(CmdReplicate("no_such_fixture", false, {}, out, err) == kExitInvalid);
}

TEST_CASE("every named fixture replicates") {
  for (const std::string& name : ReplicationNames()) {
    CAPTURE(name);
    const Replication rep = Replicate(name, kFixtures);
    CHECK(rep.expected_found);
    CHECK(rep.diffs.empty());
    for (const Assertion& a : rep.assertions) {
      CAPTURE(a.what);
      CAPTURE(a.detail);
      CHECK(a.ok);
    }
    CHECK(rep.ok());
  }
}

TEST_CASE("expected-file diffs honour the tolerance") {
  Summary expected = Summary::parse(R"({"a": 1.0, "b": "x", "c": [1, 2]})");
  Summary actual = Summary::parse(R"({"a": 1.0000005, "b": "x", "c": [1, 2.0000001]})");
  CHECK(DiffQuantities(expected, actual, 1e-6).empty());
  actual["a"] = 1.01;
  CHECK(DiffQuantities(expected, actual, 1e-6).size() == 1);
  actual = expected;
  actual["d"] = true;
  CHECK(DiffQuantities(expected, actual, 1e-6).size() == 1);
  actual = expected;
  actual.erase("b");
  CHECK(DiffQuantities(expected, actual, 1e-6).size() == 1);
}

TEST_CASE("random check is independent of the worker count") {
  const CheckReport one = CheckRandom(40, 3, 1);
  const CheckReport four = CheckRandom(40, 3, 4);
  REQUIRE(one.rows.size() == four.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CAPTURE(one.rows[i].name);
    CHECK(one.rows[i].checked == four.rows[i].checked);
    CHECK(one.rows[i].skipped == four.rows[i].skipped);
    CHECK(one.rows[i].failed == 0);
  }
  CHECK(one.ok());
}

TEST_CASE("check on the indistinguishable pair compares observations") {
  const CheckReport r = CheckFile(LoadScenarioFile(kFixtures / "fig7_indistinguishable.json"));
  CHECK(r.ok());
  CHECK(r.rows.back().name == "alternate_profile_same_observation");
  CHECK(r.rows.back().checked == 1);
}

}  // namespace
}  // namespace proxyline::cli
