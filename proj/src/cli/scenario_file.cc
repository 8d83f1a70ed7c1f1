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

#include "proxyline/cli/scenario_file.h"

#include <fstream>
#include <random>
#include <sstream>

#include "json_reader.h"
#include "proxyline/random_scenarios.h"

namespace proxyline::cli {
namespace {

Space ReadSpace(ObjectReader r) {
  const std::string kind = r.String("kind");
  Space space = Space::Continuous();
  if (kind == "discrete") {
    const double step = r.Number("step", 1.0);
    if (!(step > 0)) r.doc().Fail(r.PointerTo("step"), "step must be positive");
    space = Space::Discrete(step);
  } else if (kind != "continuous") {
    r.doc().Fail(r.PointerTo("kind"), "expected \"continuous\" or \"discrete\"");
  }
  r.Finish();
  return space;
}

TieBreakRule ReadTieBreak(ObjectReader r) {
  if (r.String("delegation", "lower_proxy_index") != "lower_proxy_index") {
    r.doc().Fail(r.PointerTo("delegation"), "only \"lower_proxy_index\" is supported");
  }
  if (r.String("weighted_median", "position_then_index") != "position_then_index") {
    r.doc().Fail(r.PointerTo("weighted_median"), "only \"position_then_index\" is supported");
  }
  r.Finish();
  return {};
}

RandomScenarioBlock ReadRandomBlock(ObjectReader r) {
  RandomScenarioBlock b;
  b.min_proxies = r.Count("min_proxies", b.min_proxies);
  b.max_proxies = r.Count("max_proxies", b.max_proxies);
  b.min_followers = r.Count("min_followers", b.min_followers);
  b.max_followers = r.Count("max_followers", b.max_followers);
  b.lower = static_cast<int>(r.Integer("lower", b.lower));
  b.upper = static_cast<int>(r.Integer("upper", b.upper));
  b.real_positions = r.Boolean("real_positions", b.real_positions);
  if (b.min_proxies < 1 || b.min_proxies > b.max_proxies) {
    r.doc().Fail(r.pointer(), "need 1 <= min_proxies <= max_proxies");
  }
  if (b.min_followers > b.max_followers) {
    r.doc().Fail(r.pointer(), "need min_followers <= max_followers");
  }
  if (b.lower > b.upper) r.doc().Fail(r.pointer(), "need lower <= upper");
  r.Finish();
  return b;
}

PolicySpec ReadPolicy(const Document& doc, const Json& value, const std::string& pointer) {
  ObjectReader r(doc, value, pointer);
  const std::string kind = r.String("kind");
  PolicySpec p;
  if (kind == "monotone") {
    p = PolicySpec::Monotone(r.Number("fraction", 0.5), r.Boolean("truth_oriented", false));
  } else if (kind == "best_response") {
    p = PolicySpec::BestResponse(r.Boolean("truth_oriented", false));
  } else if (kind == "oscillating") {
    p = PolicySpec::Oscillating(r.Number("alpha1", 0.25), r.Number("decay", 0.5));
    p.truth_oriented = r.Boolean("truth_oriented", false);
  } else if (kind == "minimax_regret") {
    p = PolicySpec::MinimaxRegret();
  } else if (kind == "scripted") {
    std::optional<PolicySpec> after;
    if (r.Has("after")) after = ReadPolicy(doc, r.Get("after"), r.PointerTo("after"));
    p = PolicySpec::Scripted(r.Numbers("script"), after);
    p.truth_oriented = r.Boolean("truth_oriented", false);
  } else {
    doc.Fail(r.PointerTo("kind"),
             "unknown policy \"" + kind +
                 "\" (monotone, best_response, oscillating, minimax_regret, scripted)");
  }
  r.Finish();
  return p;
}

Scheduler ReadScheduler(ObjectReader r) {
  const std::string kind = r.String("kind");
  Scheduler s;
  if (kind == "scripted") {
    const Json& order = r.Get("order");
    if (!order.is_array()) r.doc().Fail(r.PointerTo("order"), "expected an array of proxy ids");
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (!order[i].is_number_unsigned()) {
        r.doc().Fail(r.PointerTo("order") + "/" + std::to_string(i), "expected a proxy id");
      }
      s.order.push_back(order[i].get<ProxyId>());
    }
    s.kind = Scheduler::Kind::kScripted;
  } else if (kind != "round_robin") {
    r.doc().Fail(r.PointerTo("kind"), "expected \"round_robin\" or \"scripted\"");
  }
  r.Finish();
  return s;
}

}  // namespace

SchemaError::SchemaError(std::string origin, std::string where, std::size_t line,
                         const std::string& message)
    : Error(origin + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
            (where.empty() ? std::string() : where + ": ") + message),
      where_(std::move(where)),
      line_(line) {}

Scenario ScenarioFile::MakeScenario() const {
  if (!random) return Scenario(peaks, followers, space, tie_break);
  RandomScenarioOptions options;
  options.min_proxies = random->min_proxies;
  options.max_proxies = random->max_proxies;
  options.min_followers = random->min_followers;
  options.max_followers = random->max_followers;
  options.lower = random->lower;
  options.upper = random->upper;
  options.real_positions = random->real_positions;
  options.discrete_space = space.discrete();
  options.step = space.discrete() ? space.step() : 1.0;
  std::mt19937_64 rng(seed);
  Scenario drawn = RandomScenario(rng, options);
  return Scenario(drawn.proxy_peaks(), drawn.followers(), space, tie_break);
}

ScenarioFile ParseScenarioFile(const std::string& text, const std::string& origin) {
  const Document doc = Document::Parse(text, origin);
  ObjectReader top(doc, doc.root, "");
  const Json& version = top.Get("schema_version");
  if (version != kSchemaVersion) {
    doc.Fail("/schema_version", "unsupported schema_version " + version.dump() + " (expected 1)");
  }
  ScenarioFile f;
  f.name = top.String("name", "");
  f.description = top.String("description", "");

  ObjectReader sc(doc, top.Get("scenario"), "/scenario");
  if (sc.Has("random")) {
    f.random = ReadRandomBlock(ObjectReader(doc, sc.Get("random"), "/scenario/random"));
    if (sc.Has("peaks") || sc.Has("followers")) {
      doc.Fail("/scenario", "give either random or peaks/followers, not both");
    }
  } else {
    f.peaks = sc.Numbers("peaks");
    if (sc.Has("followers")) f.followers = sc.Numbers("followers");
  }
  if (sc.Has("alternate_followers")) f.alternate_followers = sc.Numbers("alternate_followers");
  if (sc.Has("space")) f.space = ReadSpace(ObjectReader(doc, sc.Get("space"), "/scenario/space"));
  if (sc.Has("tie_break")) {
    f.tie_break = ReadTieBreak(ObjectReader(doc, sc.Get("tie_break"), "/scenario/tie_break"));
  }
  sc.Finish();

  if (top.Has("policies")) {
    const Json& list = top.Get("policies");
    if (!list.is_array() || list.empty()) doc.Fail("/policies", "expected a non-empty array");
    f.policies.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      f.policies.push_back(ReadPolicy(doc, list[i], "/policies/" + std::to_string(i)));
    }
  }
  if (top.Has("scheduler")) {
    f.scheduler = ReadScheduler(ObjectReader(doc, top.Get("scheduler"), "/scheduler"));
  }
  if (top.Has("run")) {
    ObjectReader run(doc, top.Get("run"), "/run");
    f.run.max_steps = run.Count("max_steps", f.run.max_steps);
    f.run.oscillation_window = run.Count("oscillation_window", f.run.oscillation_window);
    f.run.oscillation_tolerance = run.Number("oscillation_tolerance", f.run.oscillation_tolerance);
    f.run.convergence_tolerance = run.Number("convergence_tolerance", f.run.convergence_tolerance);
    f.alpha = run.Number("alpha", f.alpha);
    f.seed = run.Count("seed", f.seed);
    if (!(f.alpha > 0 && f.alpha <= 1)) doc.Fail("/run/alpha", "alpha must lie in (0, 1]");
    run.Finish();
  }
  const std::string mode = top.String("mode", "full_info");
  if (mode == "partial_info") {
    f.mode = Mode::kPartialInfo;
  } else if (mode != "full_info") {
    doc.Fail("/mode", "expected \"full_info\" or \"partial_info\"");
  }
  if (top.Has("output")) {
    ObjectReader out(doc, top.Get("output"), "/output");
    if (out.Has("trace")) f.trace_path = out.String("trace");
    if (out.Has("summary")) f.summary_path = out.String("summary");
    out.Finish();
  }
  top.Finish();

  // Semantic checks that need the whole document.
  try {
    Scenario scenario = f.MakeScenario();
    if (f.alternate_followers) {
      Scenario(f.peaks, *f.alternate_followers, f.space, f.tie_break);
    }
    if (f.policies.size() != 1 && f.policies.size() != scenario.num_proxies()) {
      doc.Fail("/policies", "need one policy, or one per proxy (" +
                                std::to_string(scenario.num_proxies()) + ")");
    }
    for (std::size_t i = 0; i < f.policies.size(); ++i) {
      try {
        f.policies[i].Validate(scenario.space());
      } catch (const ConfigError& e) {
        doc.Fail("/policies/" + std::to_string(i), e.what());
      }
    }
    try {
      f.scheduler.Validate(scenario.num_proxies());
    } catch (const ConfigError& e) {
      doc.Fail("/scheduler", e.what());
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    doc.Fail("/scenario", e.what());
  }
  return f;
}

ScenarioFile LoadScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path.string(), "", 0, "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  ScenarioFile f = ParseScenarioFile(text.str(), path.string());
  if (f.name.empty()) f.name = path.stem().string();
  return f;
}

std::string ModeName(Mode mode) {
  return mode == Mode::kFullInfo ? "full_info" : "partial_info";
}

}  // namespace proxyline::cli
