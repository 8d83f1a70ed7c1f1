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

#include "proxyline/cli/check.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <thread>

#include "proxyline/manipulation.h"
#include "proxyline/metrics.h"
#include "proxyline/oracle.h"
#include "proxyline/partial_info.h"
#include "proxyline/random_scenarios.h"

namespace proxyline::cli {
namespace {

enum Row {
  kLemma1,
  kFollowerScan,
  kManipulability,
  kBound,
  kDeltaLemmas,
  kDiscreteConvergence,
  kIntervalSoundness,
  kRowCount,
};

const char* const kRowNames[kRowCount] = {
    "nearest_proxy_equals_wm_winner", "follower_strategyproofness",
    "manipulability_vs_oracle",       "truth_oriented_bound",
    "delta_decrease_lemmas",          "discrete_convergence_to_median",
    "median_interval_soundness",
};

CheckReport EmptyReport() {
  CheckReport r;
  for (const char* name : kRowNames) r.rows.push_back(InvariantRow{name, 0, 0, 0, ""});
  return r;
}

bool OnGrid(const std::vector<Position>& xs, double step) {
  return std::all_of(xs.begin(), xs.end(),
                     [step](double x) { return std::nearbyint(x / step) * step == x; });
}

std::vector<Position> AllPositions(const Scenario& s) {
  std::vector<Position> out = s.proxy_peaks();
  out.insert(out.end(), s.followers().begin(), s.followers().end());
  return out;
}

std::string Describe(const Scenario& s) {
  std::string out = "peaks [";
  for (std::size_t j = 0; j < s.num_proxies(); ++j) {
    out += (j ? " " : "") + FormatNumber(s.peak(j));
  }
  out += "] followers [";
  for (std::size_t i = 0; i < s.followers().size(); ++i) {
    out += (i ? " " : "") + FormatNumber(s.followers()[i]);
  }
  return out + "]";
}

Scenario WithSpace(const Scenario& s, Space space) {
  return Scenario(s.proxy_peaks(), s.followers(), space, s.tie_break());
}

void CheckLemma1(const Scenario& s, InvariantRow& row) {
  std::vector<DeclaredState> states{DeclaredState::Truthful(s)};
  const Position med = TrueMedian(s);
  for (ProxyId j = 0; j < s.num_proxies(); ++j) states.push_back(states[0].With(j, med));
  for (const DeclaredState& state : states) {
    ++row.checked;
    const ProxyId nearest = NearestProxyToMedian(s, state);
    if (state[nearest] != WmWinner(s, state).position) row.Fail(Describe(s));
  }
}

void CheckFollowers(const Scenario& s, InvariantRow& row) {
  ++row.checked;
  if (auto m = FollowerManipulationScan(s, 0.1)) {
    row.Fail(Describe(s) + ": follower " + std::to_string(m->follower) + " reports " +
             FormatNumber(m->misreport));
  }
}

void CheckManipulability(const Scenario& s, InvariantRow& row) {
  const double step = 0.25;
  const std::vector<Position> all = AllPositions(s);
  if (!OnGrid(all, step)) {
    ++row.skipped;
    return;
  }
  ++row.checked;
  GridSpec grid = DefaultScanGrid(s, step);
  grid.lower = std::floor(grid.lower);
  grid.upper = std::ceil(grid.upper);
  const DeclaredState t = DeclaredState::Truthful(s);
  bool oracle = false;
  for (ProxyId j = 0; j < s.num_proxies() && !oracle; ++j) {
    oracle = OracleBestDeviation(s, t, j, grid).has_value();
  }
  const ManipulationVerdict v = CharacterizeTruthfulManipulability(s);
  if (v.manipulable != oracle) {
    row.Fail(Describe(s) + ": characterization " + (v.manipulable ? "yes" : "no") +
             ", oracle " + (oracle ? "yes" : "no"));
  } else if (v.manipulable && !IsBetterResponse(s, t, *v.witness_proxy, *v.witness_position)) {
    row.Fail(Describe(s) + ": witness is not a better response");
  }
}

RunOptions CheckRunOptions() {
  RunOptions run;
  run.max_steps = 400;
  return run;
}

void CheckBound(const Scenario& s, InvariantRow& row) {
  std::vector<PolicySpec> policies{PolicySpec::Monotone(0.5, true)};
  if (s.space().discrete()) policies.push_back(PolicySpec::BestResponse(true));
  for (const PolicySpec& policy : policies) {
    ++row.checked;
    DynamicsTrace trace = RunDynamics(s, Scheduler::RoundRobin(), {policy}, CheckRunOptions());
    if (!CheckBoundInvariant(trace)) row.Fail(Describe(s) + " under " + policy.Name());
  }
}

// Lattice data is exact; real-valued data gets 1e-12 slack near zero.
void CheckDeltaLemmas(const Scenario& s, InvariantRow& row) {
  const Scenario continuous = WithSpace(s, Space::Continuous());
  const double tolerance = OnGrid(AllPositions(s), 0.25) ? 0.0 : 1e-12;
  auto decreases = [tolerance](double entry, double exit) {
    return exit < entry || (tolerance > 0 && entry <= tolerance);
  };
  DynamicsTrace trace = RunDynamics(continuous, Scheduler::RoundRobin(),
                                    {PolicySpec::Monotone(0.5)}, CheckRunOptions());
  for (const MoveRecord& m : trace.moves) {
    if (m.mover == m.winner_before) continue;
    ++row.checked;
    if (!decreases(m.delta_before, m.delta_after)) {
      row.Fail(Describe(s) + ": non-winner move at step " + std::to_string(m.step));
    }
  }
  for (const MetaMoveSegment& seg : trace.segments) {
    ++row.checked;
    if (!decreases(seg.entry_delta, seg.exit_delta)) {
      row.Fail(Describe(s) + ": meta-move from record " + std::to_string(seg.start));
    }
  }
}

void CheckDiscreteConvergence(const Scenario& s, InvariantRow& row) {
  if (!OnGrid(AllPositions(s), 1.0) || !HasBothSidesNoPeakAtMedian(s)) {
    ++row.skipped;
    return;
  }
  const Scenario lattice = WithSpace(s, Space::Discrete(1.0));
  RunOptions run = CheckRunOptions();
  run.max_steps = 5000;
  ++row.checked;
  DynamicsTrace mono =
      RunDynamics(lattice, Scheduler::RoundRobin(), {PolicySpec::Monotone(0.5)}, run);
  if (mono.stop_reason != StopReason::kPne ||
      WmWinner(lattice, mono.final_state).position != TrueMedian(lattice)) {
    row.Fail(Describe(s) + ": monotone stop " + StopReasonName(mono.stop_reason));
  }
  ++row.checked;
  DynamicsTrace best =
      RunDynamics(lattice, Scheduler::RoundRobin(), {PolicySpec::BestResponse()}, run);
  if (best.stop_reason != StopReason::kPne) {
    row.Fail(Describe(s) + ": best response stop " + StopReasonName(best.stop_reason));
  }
}

// Integer data can put the median exactly on an open midpoint bound, so
// membership is tested on the closure.
void CheckIntervals(const Scenario& s, InvariantRow& row) {
  const Scenario continuous = WithSpace(s, Space::Continuous());
  RunOptions run = CheckRunOptions();
  run.max_steps = 60;
  PartialInfoTrace trace = RunPartialInfoDynamics(continuous, Scheduler::RoundRobin(),
                                                  {PolicySpec::MinimaxRegret()}, run);
  const Position med = TrueMedian(continuous);
  for (std::size_t k = 0; k < trace.intervals.size(); ++k) {
    ++row.checked;
    const MedianInterval& in = trace.intervals[k];
    if (med < in.lower.value - 1e-12 || med > in.upper.value + 1e-12) {
      row.Fail(Describe(s) + ": I^" + std::to_string(k) + " = " + in.ToString() +
               " misses med " + FormatNumber(med));
    }
  }
}

void Guarded(void (*check)(const Scenario&, InvariantRow&), const Scenario& s,
             InvariantRow& row) {
  try {
    check(s, row);
  } catch (const std::exception& e) {
    ++row.checked;
    row.Fail(Describe(s) + ": " + e.what());
  }
}

}  // namespace

void InvariantRow::Fail(const std::string& what) {
  if (failed++ == 0) first_failure = what;
}

bool CheckReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const InvariantRow& r) { return r.failed == 0; });
}

void CheckReport::Merge(const CheckReport& other) {
  for (const InvariantRow& theirs : other.rows) {
    auto mine = std::find_if(rows.begin(), rows.end(),
                             [&](const InvariantRow& r) { return r.name == theirs.name; });
    if (mine == rows.end()) {
      rows.push_back(theirs);
      continue;
    }
    mine->checked += theirs.checked;
    mine->skipped += theirs.skipped;
    if (mine->failed == 0) mine->first_failure = theirs.first_failure;
    mine->failed += theirs.failed;
  }
}

void CheckReport::Print(std::ostream& out) const {
  char line[256];
  std::snprintf(line, sizeof line, "%-36s %8s %8s %8s  %s\n", "invariant", "checked", "skipped",
                "failed", "result");
  out << line;
  for (const InvariantRow& r : rows) {
    std::snprintf(line, sizeof line, "%-36s %8zu %8zu %8zu  %s\n", r.name.c_str(), r.checked,
                  r.skipped, r.failed, r.failed == 0 ? "PASS" : "FAIL");
    out << line;
    if (r.failed > 0) out << "    first failure: " << r.first_failure << "\n";
  }
  out << (ok() ? "all invariants pass\n" : "invariant failures found\n");
}

CheckReport CheckScenario(const Scenario& s) {
  CheckReport report = EmptyReport();
  Guarded(CheckLemma1, s, report.rows[kLemma1]);
  Guarded(CheckFollowers, s, report.rows[kFollowerScan]);
  Guarded(CheckManipulability, s, report.rows[kManipulability]);
  Guarded(CheckBound, s, report.rows[kBound]);
  Guarded(CheckDeltaLemmas, s, report.rows[kDeltaLemmas]);
  Guarded(CheckDiscreteConvergence, s, report.rows[kDiscreteConvergence]);
  Guarded(CheckIntervals, s, report.rows[kIntervalSoundness]);
  return report;
}

CheckReport CheckFile(const ScenarioFile& file) {
  const Scenario s = file.MakeScenario();
  CheckReport report = CheckScenario(s);
  if (file.alternate_followers) {
    const Scenario other(s.proxy_peaks(), *file.alternate_followers, s.space(), s.tie_break());
    InvariantRow row{"alternate_profile_same_observation", 0, 0, 0, ""};
    ++row.checked;
    const DeclaredState t = DeclaredState::Truthful(s);
    const ObservedState a = Observe(s, t);
    const ObservedState b = Observe(other, t);
    if (!(a == b)) {
      row.Fail("winners " + std::to_string(a.winner) + " and " + std::to_string(b.winner));
    }
    report.rows.push_back(row);
  }
  return report;
}

CheckReport CheckRandom(std::size_t count, std::uint64_t seed, std::size_t jobs) {
  jobs = std::max<std::size_t>(1, std::min(jobs, std::max<std::size_t>(count, 1)));
  std::vector<CheckReport> per(count);
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < count; i += jobs) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      RandomScenarioOptions options;
      options.discrete_space = i % 2 == 1;
      options.real_positions = !options.discrete_space && i % 5 == 4;
      per[i] = CheckScenario(RandomScenario(rng, options));
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < jobs; ++t) threads.emplace_back(work, t);
  work(0);
  for (std::thread& t : threads) t.join();

  CheckReport report = EmptyReport();
  for (const CheckReport& r : per) report.Merge(r);
  return report;
}

}  // namespace proxyline::cli
