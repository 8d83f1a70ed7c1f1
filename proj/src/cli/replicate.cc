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

#include "proxyline/cli/replicate.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "proxyline/manipulation.h"
#include "proxyline/metrics.h"
#include "proxyline/oracle.h"
#include "proxyline/partial_info.h"

namespace proxyline::cli {
namespace {

class Asserter {
 public:
  explicit Asserter(std::vector<Assertion>& out) : out_(out) {}

  void That(bool ok, const std::string& what, const std::string& detail = "") {
    out_.push_back({what, ok, detail});
  }
  void Equal(double actual, double expected, const std::string& what) {
    That(actual == expected, what + " = " + FormatNumber(expected), "got " + FormatNumber(actual));
  }
  void Near(double actual, double expected, double tolerance, const std::string& what) {
    That(std::abs(actual - expected) <= tolerance,
         what + " = " + FormatNumber(expected) + " within " + FormatNumber(tolerance),
         "got " + FormatNumber(actual));
  }
  void Same(const std::string& actual, const std::string& expected, const std::string& what) {
    That(actual == expected, what + " = " + expected, "got " + actual);
  }

 private:
  std::vector<Assertion>& out_;
};

struct Context {
  ScenarioFile file;
  Scenario scenario;
  Summary& q;
  Asserter check;
};

void Example1(Context& c) {
  const Scenario& s = c.scenario;
  const Winner w = WmWinner(s, DeclaredState::Truthful(s));
  c.q["winner"] = w.id;
  c.q["winner_position"] = w.position;
  c.q["weights"] = DelegationWeights(s, DeclaredState::Truthful(s));
  c.q["true_median"] = TrueMedian(s);
  c.check.Equal(static_cast<double>(w.id), 0, "winner id");
  c.check.Equal(w.position, -1, "winner position");
}

void Example2(Context& c) {
  const Scenario& s = c.scenario;
  const DeclaredState t = DeclaredState::Truthful(s);
  const double before = std::abs(WmWinner(s, t).position - s.peak(1));
  c.q["distance_truthful"] = before;
  for (double eps : {0.25, 0.5, 1.0}) {
    const std::string key = "eps_" + FormatNumber(eps);
    const Winner w = WmWinner(s, t.With(1, 1 - eps));
    c.q[key + "_winner"] = w.id;
    c.q[key + "_outcome"] = w.position;
    c.check.That(w.id == 1 && w.position == 1 - eps,
                 "report " + FormatNumber(1 - eps) + " by proxy 1 wins",
                 "winner " + std::to_string(w.id) + " at " + FormatNumber(w.position));
    c.check.That(std::abs(w.position - s.peak(1)) < before,
                 "report " + FormatNumber(1 - eps) + " strictly improves proxy 1");
  }
}

bool OracleFindsDeviation(const Scenario& s) {
  GridSpec grid = DefaultScanGrid(s, 0.25);
  grid.lower = std::floor(grid.lower);
  grid.upper = std::ceil(grid.upper);
  const DeclaredState t = DeclaredState::Truthful(s);
  for (ProxyId j = 0; j < s.num_proxies(); ++j) {
    if (OracleBestDeviation(s, t, j, grid)) return true;
  }
  return false;
}

void Theorem2Fig2(Context& c) {
  const Scenario& s = c.scenario;
  const ManipulationVerdict v = CharacterizeTruthfulManipulability(s);
  const bool oracle = OracleFindsDeviation(s);
  c.q["manipulable"] = v.manipulable;
  c.q["oracle_manipulable"] = oracle;
  c.q["true_median"] = TrueMedian(s);
  if (v.manipulable) {
    c.q["witness_proxy"] = *v.witness_proxy;
    c.q["witness_position"] = *v.witness_position;
  }
  c.q["better_responses_proxy_1"] =
      BetterResponseSet(s, DeclaredState::Truthful(s), 1).ToString();
  c.check.That(v.manipulable, "truthful state is manipulable");
  c.check.That(oracle == v.manipulable, "grid oracle agrees");
  c.check.That(v.witness_proxy == ProxyId{1}, "witness is proxy 1");
  c.check.That(v.witness_position == TrueMedian(s), "witness moves to the median");
  if (v.manipulable) {
    c.check.That(IsBetterResponse(s, DeclaredState::Truthful(s), *v.witness_proxy,
                                  *v.witness_position),
                 "witness is a better response");
  }
}

void AddRunSummary(Context& c, const RunResult& r) {
  const Summary summary = MakeSummary(r);
  for (auto& [key, value] : summary.items()) c.q[key] = value;
}

void Fig3OneSide(Context& c) {
  const Scenario& s = c.scenario;
  const ManipulationVerdict v = CharacterizeTruthfulManipulability(s);
  const bool oracle = OracleFindsDeviation(s);
  const RunResult r = Execute(c.file);
  AddRunSummary(c, r);
  c.q["manipulable"] = v.manipulable;
  c.q["oracle_manipulable"] = oracle;
  const Position med = TrueMedian(s);
  c.check.That(std::all_of(s.proxy_peaks().begin(), s.proxy_peaks().end(),
                           [med](double p) { return p < med; }),
               "all proxies left of the median");
  c.check.That(!v.manipulable, "truthful state is not manipulable");
  c.check.That(!oracle, "grid oracle finds no deviation");
  c.check.That(IsPne(s, DeclaredState::Truthful(s)), "truthful state is a PNE");
  c.check.Same(StopReasonName(r.dynamics.stop_reason), "PNE", "stop reason");
  c.check.Equal(static_cast<double>(r.dynamics.moves.size()), 0, "moves");
  c.check.Equal(WmWinner(s, r.dynamics.final_state).position, -15, "outcome");
}

void Fig5MetaMove(Context& c) {
  const RunResult r = Execute(c.file);
  AddRunSummary(c, r);
  const auto& segs = r.dynamics.segments;
  c.check.Equal(static_cast<double>(segs.size()), 1, "meta-move segments");
  if (segs.size() != 1 || r.dynamics.moves.size() < 2) return;
  const double inside = r.dynamics.moves[segs[0].start].delta_after;
  c.q["segment_length"] = segs[0].length;
  c.q["segment_entry_delta"] = segs[0].entry_delta;
  c.q["segment_inside_delta"] = inside;
  c.q["segment_exit_delta"] = segs[0].exit_delta;
  c.check.Equal(static_cast<double>(segs[0].length), 1, "segment length");
  c.check.Equal(segs[0].entry_delta, 4, "entry Delta");
  c.check.Equal(inside, 2, "Delta after the arrival");
  c.check.Equal(segs[0].exit_delta, 3, "exit Delta");
  c.check.That(segs[0].exit_delta > inside, "continuation increases Delta");
  c.check.That(segs[0].exit_delta < segs[0].entry_delta, "meta-move decreases Delta overall");
}

void Example3(Context& c) {
  const RunResult r = Execute(c.file);
  AddRunSummary(c, r);
  const DynamicsTrace& d = r.dynamics;
  const double delta1 = Delta(c.scenario, DeclaredState::Truthful(c.scenario));
  c.check.Same(StopReasonName(d.stop_reason), "OscillationDetected", "stop reason");
  c.check.That(d.turns <= 200, "at most 200 steps", std::to_string(d.turns) + " steps");
  c.check.Near(d.limit_delta.value_or(kInfinity), delta1 / 2, 1e-6, "limit Delta");
  if (d.moves.size() < 2) {
    c.check.That(false, "oscillation points", "fewer than two moves");
    return;
  }
  const double a = d.moves[d.moves.size() - 1].wm_after;
  const double b = d.moves[d.moves.size() - 2].wm_after;
  c.q["oscillation_low"] = std::min(a, b);
  c.q["oscillation_high"] = std::max(a, b);
  c.check.Near(std::min(a, b), -0.5, 1e-6, "lower oscillation point");
  c.check.Near(std::max(a, b), 0.5, 1e-6, "upper oscillation point");
}

void AppendixA(Context& c) {
  const RunResult r = Execute(c.file);
  AddRunSummary(c, r);
  const Scenario& s = c.scenario;
  const Position outcome = WmWinner(s, r.dynamics.final_state).position;
  c.check.Same(StopReasonName(r.dynamics.stop_reason), "PNE", "stop reason");
  c.check.Equal(outcome, 5, "outcome");
  c.check.Equal(SocialCost(s, WmWinner(s, DeclaredState::Truthful(s)).position), 84,
                "truthful social cost");
  c.check.Equal(SocialCost(s, outcome), 86, "final social cost");
  const Scenario continuous(s.proxy_peaks(), s.followers(), Space::Continuous(), s.tie_break());
  const bool pne = IsPne(continuous, r.dynamics.final_state);
  const ProxyId winner = WmWinner(continuous, r.dynamics.final_state).id;
  const IntervalSet br = BetterResponseSet(continuous, r.dynamics.final_state, winner);
  c.q["continuous_final_is_pne"] = pne;
  c.q["continuous_winner_better_responses"] = br.ToString();
  c.check.That(!pne, "continuous variant of the final state is not a PNE");
  c.check.That(!br.empty(), "continuous winner has a better response", br.ToString());
}

void AppendixB(Context& c) {
  const RunResult r = Execute(c.file);
  AddRunSummary(c, r);
  const Scenario& s = c.scenario;
  const char* const stated[] = {"(-inf, 30)", "(-0.5, 30)", "(-0.5, 27)"};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string got = k < r.intervals.size() ? r.intervals[k].ToString() : "missing";
    c.q["interval_" + std::to_string(k)] = got;
    c.check.Same(got, stated[k], "I^" + std::to_string(k));
  }
  const Position outcome = WmWinner(s, r.dynamics.final_state).position;
  c.check.Near(outcome, 25, 1e-6, "limit outcome");
  c.check.Equal(SocialCost(s, WmWinner(s, DeclaredState::Truthful(s)).position), 210,
                "truthful social cost");
  c.check.Near(SocialCost(s, outcome), 235, 1e-6 * static_cast<double>(s.num_voters()),
               "final social cost");
  c.check.That(r.dynamics.converged, "converged");
}

void FootnoteScVsMedian(Context& c) {
  const Scenario& s = c.scenario;
  const double eps = 2 - s.peak(1);
  const double k = static_cast<double>(
      std::count(s.followers().begin(), s.followers().end(), 0.0));
  const Winner w = WmWinner(s, DeclaredState::Truthful(s));
  const double sc_winner = SocialCost(s, w.position);
  const double sc_other = SocialCost(s, s.peak(0));
  c.q["k"] = k;
  c.q["epsilon"] = eps;
  c.q["true_median"] = TrueMedian(s);
  c.q["winner"] = w.id;
  c.q["winner_position"] = w.position;
  c.q["sc_winner"] = sc_winner;
  c.q["sc_other"] = sc_other;
  c.check.Equal(TrueMedian(s), 1, "median");
  c.check.That(w.id == 1, "WM selects the proxy near 2 - eps");
  // k followers at distance 2 - eps, k + 2 at 1 - eps, proxy j at 2 - eps.
  c.check.Equal(sc_winner, (3 - 2 * eps) * k + 4 - 3 * eps, "SC(winner) = (3 - 2 eps) k + 4 - 3 eps");
  // k + 2 followers at distance 1, proxy j' at 2 - eps.
  c.check.Equal(sc_other, k + 4 - eps, "SC(other) = k + 4 - eps");
  c.check.That(sc_winner > sc_other, "the 0-proxy has lower social cost");
}

void Fig7Indistinguishable(Context& c) {
  const Scenario& top = c.scenario;
  if (!c.file.alternate_followers) {
    c.check.That(false, "fixture lists alternate followers");
    return;
  }
  const Scenario bottom(top.proxy_peaks(), *c.file.alternate_followers, top.space(),
                        top.tie_break());
  const DeclaredState t = DeclaredState::Truthful(top);
  const ObservedState a = Observe(top, t);
  const ObservedState b = Observe(bottom, t);
  const bool top_br = IsBetterResponse(top, t, 0, -5);
  const bool bottom_br = IsBetterResponse(bottom, t, 0, -5);
  c.q["winner"] = a.winner;
  c.q["winner_position"] = a.winner_position;
  c.q["median_top"] = TrueMedian(top);
  c.q["median_bottom"] = TrueMedian(bottom);
  c.q["proxy_0_to_minus_5_helps_top"] = top_br;
  c.q["proxy_0_to_minus_5_helps_bottom"] = bottom_br;
  c.check.That(a == b, "both profiles give the same observation");
  c.check.That(a.winner == 1 && a.winner_position == 10, "observed winner is proxy 1 at 10");
  c.check.That(TrueMedian(top) != TrueMedian(bottom), "the medians differ");
  c.check.That(!top_br && bottom_br, "moving proxy 0 to -5 helps only in the bottom profile");
}

const std::map<std::string, std::function<void(Context&)>>& Registry() {
  static const std::map<std::string, std::function<void(Context&)>> registry = {
      {"example1", Example1},
      {"example2", Example2},
      {"theorem2_fig2", Theorem2Fig2},
      {"fig3_one_side", Fig3OneSide},
      {"fig5_metamove", Fig5MetaMove},
      {"example3", Example3},
      {"appendix_a", AppendixA},
      {"appendix_b", AppendixB},
      {"footnote_sc_vs_median", FootnoteScVsMedian},
      {"fig7_indistinguishable", Fig7Indistinguishable},
  };
  return registry;
}

std::string Render(const Summary& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

bool Replication::ok() const {
  return expected_found && diffs.empty() &&
         std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.ok; });
}

const std::vector<std::string>& ReplicationNames() {
  static const std::vector<std::string> names = {
      "example1",      "example2",   "theorem2_fig2", "fig3_one_side",
      "fig5_metamove", "example3",   "appendix_a",    "appendix_b",
      "footnote_sc_vs_median",       "fig7_indistinguishable"};
  return names;
}

bool IsReplicationName(const std::string& name) { return Registry().contains(name); }

Replication Replicate(const std::string& name, const std::filesystem::path& fixture_root) {
  const auto it = Registry().find(name);
  if (it == Registry().end()) throw ConfigError("unknown replication \"" + name + "\"");
  ScenarioFile file = LoadScenarioFile(fixture_root / (name + ".json"));
  Replication rep;
  rep.name = name;
  rep.quantities["name"] = name;
  Context c{file, file.MakeScenario(), rep.quantities, Asserter(rep.assertions)};
  it->second(c);

  const std::filesystem::path expected_path = fixture_root / "expected" / (name + ".json");
  std::ifstream in(expected_path);
  if (in) {
    rep.expected_found = true;
    std::ostringstream text;
    text << in.rdbuf();
    Summary expected;
    try {
      expected = Summary::parse(text.str());
    } catch (const Summary::parse_error& e) {
      rep.diffs.push_back(expected_path.string() + ": " + e.what());
      return rep;
    }
    rep.diffs = DiffQuantities(expected, rep.quantities, kExpectedTolerance);
  }
  return rep;
}

std::vector<std::string> DiffQuantities(const Summary& expected, const Summary& actual,
                                        double tolerance) {
  std::vector<std::string> out;
  auto same = [tolerance](const Summary& a, const Summary& b) {
    if (a.is_number() && b.is_number()) {
      return std::abs(a.get<double>() - b.get<double>()) <= tolerance;
    }
    if (a.is_array() && b.is_array() && a.size() == b.size()) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        const bool numbers = a[i].is_number() && b[i].is_number();
        if (numbers ? std::abs(a[i].get<double>() - b[i].get<double>()) > tolerance
                    : a[i] != b[i]) {
          return false;
        }
      }
      return true;
    }
    return a == b;
  };
  for (auto& [key, value] : expected.items()) {
    if (!actual.contains(key)) {
      out.push_back(key + ": expected " + Render(value) + ", missing");
    } else if (!same(value, actual[key])) {
      out.push_back(key + ": expected " + Render(value) + ", got " + Render(actual[key]));
    }
  }
  for (auto& [key, value] : actual.items()) {
    if (!expected.contains(key)) out.push_back(key + ": not in the expected file");
  }
  return out;
}

}  // namespace proxyline::cli
