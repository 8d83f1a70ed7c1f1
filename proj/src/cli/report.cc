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

#include "proxyline/cli/report.h"

#include <cmath>

#include "json_reader.h"
#include "proxyline/manipulation.h"
#include "proxyline/metrics.h"

namespace proxyline::cli {
namespace {

enum class FieldType { kInteger, kNumber, kNumberOrNull, kBool, kString, kNumberArray };

struct Field {
  const char* key;
  FieldType type;
  bool required;
};

constexpr Field kSummaryFields[] = {
    {"schema_version", FieldType::kInteger, true},
    {"name", FieldType::kString, true},
    {"mode", FieldType::kString, true},
    {"seed", FieldType::kInteger, true},
    {"proxies", FieldType::kInteger, true},
    {"followers", FieldType::kInteger, true},
    {"true_median", FieldType::kNumber, true},
    {"stop_reason", FieldType::kString, true},
    {"turns", FieldType::kInteger, true},
    {"moves", FieldType::kInteger, true},
    {"converged", FieldType::kBool, true},
    {"initial_winner", FieldType::kInteger, true},
    {"initial_outcome", FieldType::kNumber, true},
    {"final_winner", FieldType::kInteger, true},
    {"final_outcome", FieldType::kNumber, true},
    {"final_positions", FieldType::kNumberArray, true},
    {"delta_initial", FieldType::kNumber, true},
    {"delta_final", FieldType::kNumber, true},
    {"limit_delta", FieldType::kNumberOrNull, true},
    {"sc_initial", FieldType::kNumber, true},
    {"sc_final", FieldType::kNumber, true},
    {"final_is_pne", FieldType::kBool, true},
    {"bound_invariant", FieldType::kBool, true},
    {"monotone_median", FieldType::kBool, true},
    {"meta_moves", FieldType::kInteger, true},
    {"big_steps", FieldType::kInteger, true},
    {"small_steps", FieldType::kInteger, true},
    {"intervals", FieldType::kInteger, false},
    {"initial_interval", FieldType::kString, false},
    {"final_interval", FieldType::kString, false},
};

bool HasType(const Json& v, FieldType type) {
  switch (type) {
    case FieldType::kInteger:
      return v.is_number_unsigned();
    case FieldType::kNumber:
      return v.is_number();
    case FieldType::kNumberOrNull:
      return v.is_number() || v.is_null();
    case FieldType::kBool:
      return v.is_boolean();
    case FieldType::kString:
      return v.is_string();
    case FieldType::kNumberArray:
      if (!v.is_array()) return false;
      for (const Json& x : v) {
        if (!x.is_number()) return false;
      }
      return true;
  }
  return false;
}

// JSON has no infinities; they only occur in interval bounds, which are
// written as strings.
Summary Num(double x) { return std::isfinite(x) ? Summary(x) : Summary(nullptr); }

}  // namespace

RunResult Execute(const ScenarioFile& file) {
  Scenario scenario = file.MakeScenario();
  if (file.mode == Mode::kPartialInfo) {
    PartialInfoTrace t = RunPartialInfoDynamics(scenario, file.scheduler, file.policies, file.run);
    return {file, scenario, std::move(t.dynamics), std::move(t.intervals)};
  }
  DynamicsTrace t = RunDynamics(scenario, file.scheduler, file.policies, file.run);
  return {file, scenario, std::move(t), {}};
}

std::string TraceLines(const RunResult& result) {
  std::string out;
  const bool partial = result.file.mode == Mode::kPartialInfo;
  for (std::size_t i = 0; i < result.dynamics.moves.size(); ++i) {
    const MoveRecord& m = result.dynamics.moves[i];
    Summary line;
    line["step"] = m.step;
    line["mover"] = m.mover;
    line["from"] = m.from;
    line["to"] = m.to;
    line["winner_before"] = m.winner_before;
    line["winner_after"] = m.winner_after;
    line["wm_before"] = m.wm_before;
    line["wm_after"] = m.wm_after;
    line["median_after"] = m.median_after;
    line["delta_before"] = m.delta_before;
    line["delta_after"] = m.delta_after;
    line["sc_after"] = SocialCost(result.scenario, m.wm_after);
    if (partial && i + 1 < result.intervals.size()) {
      line["interval_after"] = result.intervals[i + 1].ToString();
    }
    out += line.dump();
    out += '\n';
  }
  return out;
}

Summary MakeSummary(const RunResult& result) {
  const Scenario& s = result.scenario;
  const DynamicsTrace& d = result.dynamics;
  const DeclaredState truthful = DeclaredState::Truthful(s);
  const Winner before = WmWinner(s, truthful);
  const Winner after = WmWinner(s, d.final_state);
  std::size_t big = 0;
  std::size_t small = 0;
  for (const MetaStep& step : ClassifyMetaSteps(d.moves, result.file.alpha)) {
    ++(step.label == MetaStepLabel::kBig ? big : small);
  }

  Summary out;
  out["schema_version"] = kSchemaVersion;
  out["name"] = result.file.name;
  out["mode"] = ModeName(result.file.mode);
  out["seed"] = result.file.seed;
  out["proxies"] = s.num_proxies();
  out["followers"] = s.followers().size();
  out["true_median"] = TrueMedian(s);
  out["stop_reason"] = StopReasonName(d.stop_reason);
  out["turns"] = d.turns;
  out["moves"] = d.moves.size();
  out["converged"] = d.converged;
  out["initial_winner"] = before.id;
  out["initial_outcome"] = before.position;
  out["final_winner"] = after.id;
  out["final_outcome"] = after.position;
  out["final_positions"] = d.final_state.positions();
  out["delta_initial"] = Delta(s, truthful);
  out["delta_final"] = Delta(s, d.final_state);
  out["limit_delta"] = d.limit_delta ? Num(*d.limit_delta) : Summary(nullptr);
  out["sc_initial"] = SocialCost(s, before.position);
  out["sc_final"] = SocialCost(s, after.position);
  out["final_is_pne"] = IsPne(s, d.final_state);
  out["bound_invariant"] = CheckBoundInvariant(d);
  out["monotone_median"] = MonotoneMedianCheck(d);
  out["meta_moves"] = d.segments.size();
  out["big_steps"] = big;
  out["small_steps"] = small;
  if (result.file.mode == Mode::kPartialInfo && !result.intervals.empty()) {
    out["intervals"] = result.intervals.size();
    out["initial_interval"] = result.intervals.front().ToString();
    out["final_interval"] = result.intervals.back().ToString();
  }
  return out;
}

std::string SummaryText(const Summary& summary) { return summary.dump(2) + "\n"; }

Summary ParseSummary(const std::string& text, const std::string& origin) {
  const Document doc = Document::Parse(text, origin);
  ObjectReader r(doc, doc.root, "");
  Summary out;
  for (const Field& field : kSummaryFields) {
    if (!r.Has(field.key)) {
      if (field.required) r.Get(field.key);  // reports the missing field
      continue;
    }
    const Json& v = r.Get(field.key);
    if (!HasType(v, field.type)) doc.Fail(r.PointerTo(field.key), "wrong type: " + v.dump());
    out[field.key] = Summary::parse(v.dump());
  }
  r.Finish();
  if (out["schema_version"] != kSchemaVersion) {
    doc.Fail("/schema_version", "unsupported schema_version");
  }
  return out;
}

}  // namespace proxyline::cli
