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

#include "proxyline/cli/commands.h"

#include <cstdlib>
#include <fstream>

#include "proxyline/cli/check.h"
#include "proxyline/cli/replicate.h"
#include "proxyline/cli/report.h"

#ifndef PROXYLINE_DEFAULT_FIXTURES
#define PROXYLINE_DEFAULT_FIXTURES "fixtures"
#endif

namespace proxyline::cli {
namespace {

namespace fs = std::filesystem;

fs::path OutputDir(const GlobalOptions& global) { return global.output_dir.value_or("."); }

void WriteFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw Error("write failed for " + path.string());
}

fs::path Resolve(const fs::path& dir, const std::optional<std::string>& configured,
                 const std::string& fallback) {
  const fs::path p = configured.value_or(fallback);
  return p.is_absolute() ? p : dir / p;
}

}  // namespace

fs::path FixtureRoot() {
  if (const char* env = std::getenv("PROXYLINE_FIXTURES"); env && *env) return env;
  return PROXYLINE_DEFAULT_FIXTURES;
}

int CmdRun(const fs::path& path, const RunOverrides& overrides, const GlobalOptions& global,
           std::ostream& out, std::ostream& err) {
  ScenarioFile file;
  std::optional<RunResult> result;
  try {
    file = LoadScenarioFile(path);
    if (overrides.max_steps) {
      if (*overrides.max_steps < 1) throw SchemaError("--max-steps", "", 0, "must be at least 1");
      file.run.max_steps = *overrides.max_steps;
    }
    if (overrides.seed) file.seed = *overrides.seed;
    result = Execute(file);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  const Summary summary = MakeSummary(*result);
  const fs::path dir = OutputDir(global);
  const fs::path trace_path = Resolve(dir, file.trace_path, file.name + ".trace.jsonl");
  const fs::path summary_path = Resolve(dir, file.summary_path, file.name + ".summary.json");
  try {
    WriteFile(trace_path, "");
    std::ofstream trace(trace_path, std::ios::binary | std::ios::app);
    trace << TraceLines(*result);
    if (!trace.flush()) throw Error("write failed for " + trace_path.string());
    WriteFile(summary_path, SummaryText(summary));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  out << SummaryText(summary);
  out << "trace: " << trace_path.string() << "\nsummary: " << summary_path.string() << "\n";
  return kExitOk;
}

int CmdCheckFile(const fs::path& path, const GlobalOptions&, std::ostream& out,
                 std::ostream& err) {
  ScenarioFile file;
  try {
    file = LoadScenarioFile(path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  const CheckReport report = CheckFile(file);
  out << "check " << path.string() << "\n";
  report.Print(out);
  return report.ok() ? kExitOk : kExitFailed;
}

int CmdCheckRandom(std::size_t count, std::uint64_t seed, const GlobalOptions& global,
                   std::ostream& out, std::ostream&) {
  const CheckReport report = CheckRandom(count, seed, global.jobs);
  out << "check --random " << count << " --seed " << seed << "\n";
  report.Print(out);
  return report.ok() ? kExitOk : kExitFailed;
}

int CmdReplicate(const std::string& name, bool update_expected, const GlobalOptions& global,
                 std::ostream& out, std::ostream& err) {
  if (!IsReplicationName(name)) {
    err << "error: unknown replication \"" << name << "\"; known:";
    for (const std::string& n : ReplicationNames()) err << " " << n;
    err << "\n";
    return kExitInvalid;
  }
  const fs::path root = FixtureRoot();
  Replication rep;
  try {
    rep = Replicate(name, root);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  if (update_expected) {
    WriteFile(root / "expected" / (name + ".json"), SummaryText(rep.quantities));
    rep.expected_found = true;
    rep.diffs.clear();
    out << "updated " << (root / "expected" / (name + ".json")).string() << "\n";
  }
  if (global.output_dir) {
    WriteFile(*global.output_dir / (name + ".quantities.json"), SummaryText(rep.quantities));
  }
  out << "replicate " << name << "\n";
  for (const Assertion& a : rep.assertions) {
    out << (a.ok ? "  ok    " : "  FAIL  ") << a.what;
    if (!a.ok && !a.detail.empty()) out << " (" << a.detail << ")";
    out << "\n";
  }
  if (!rep.expected_found) out << "  FAIL  expected file missing under " << root.string() << "\n";
  for (const std::string& d : rep.diffs) out << "  DIFF  " << d << "\n";
  out << (rep.ok() ? "PASS" : "FAIL") << " " << name << "\n";
  return rep.ok() ? kExitOk : kExitFailed;
}

}  // namespace proxyline::cli
