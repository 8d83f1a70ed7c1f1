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

// Acceptance checks 1-12. One line per criterion; exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "proxyline/core_model.h"
#include "proxyline/dynamics.h"
#include "proxyline/manipulation.h"
#include "proxyline/metrics.h"
#include "proxyline/oracle.h"
#include "proxyline/partial_info.h"
#include "proxyline/random_scenarios.h"
#include "support/scenarios.h"

namespace proxyline {
namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures as text.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ << (notes_.tellp() > 0 ? "; " : "") << what;
  }
  Result Done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    std::ostringstream out;
    out << failures_ << " failure(s): " << notes_.str();
    return {false, out.str()};
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
  std::ostringstream notes_;
};

std::string Num(double x) { return FormatNumber(x); }

Result Example1Winner() {
  Checker c;
  Scenario s = fixtures::Example1();
  Winner w = WmWinner(s, DeclaredState::Truthful(s));
  c.Expect(w.id == 0, "winner is not proxy 1");
  c.Expect(w.position == -1, "winner position " + Num(w.position));
  return c.Done("proxy 1 wins at -1");
}

Result Example2Manipulation() {
  Checker c;
  Scenario s = fixtures::Example1();
  DeclaredState t = DeclaredState::Truthful(s);
  const double before = std::abs(WmWinner(s, t).position - s.peak(1));
  for (double eps : {0.25, 0.5, 1.0}) {
    Winner w = WmWinner(s, t.With(1, 1 - eps));
    c.Expect(w.id == 1 && w.position == 1 - eps, "eps " + Num(eps) + ": report does not win");
    c.Expect(std::abs(w.position - s.peak(1)) < before, "eps " + Num(eps) + ": no improvement");
  }
  return c.Done("1-eps wins for eps in {0.25, 0.5, 1}");
}

Result FollowerStrategyproofness() {
  Checker c;
  std::mt19937_64 rng(301);
  RandomScenarioOptions options;
  options.real_positions = true;
  for (int trial = 0; trial < 200; ++trial) {
    Scenario s = RandomScenario(rng, options);
    if (auto m = FollowerManipulationScan(s, 0.1)) {
      c.Expect(false, "scenario " + std::to_string(trial) + ": follower " +
                          std::to_string(m->follower + 1) + " misreports " + Num(m->misreport));
    }
  }
  return c.Done("200 scenarios, 0 improving follower misreports");
}

Result ManipulabilityCharacterization() {
  Checker c;
  std::mt19937_64 rng(401);
  RandomScenarioOptions options;
  const GridSpec grid{-20, 20, 0.25};
  int manipulable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Scenario s = RandomScenario(rng, options);
    DeclaredState t = DeclaredState::Truthful(s);
    bool oracle = false;
    for (ProxyId j = 0; j < s.num_proxies() && !oracle; ++j) {
      oracle = OracleBestDeviation(s, t, j, grid).has_value();
    }
    ManipulationVerdict v = CharacterizeTruthfulManipulability(s);
    c.Expect(v.manipulable == oracle, "scenario " + std::to_string(trial) + " disagrees");
    if (v.manipulable) {
      ++manipulable;
      c.Expect(IsBetterResponse(s, t, *v.witness_proxy, *v.witness_position),
               "scenario " + std::to_string(trial) + ": witness is no better response");
    }
  }
  return c.Done("500 scenarios agree (" + std::to_string(manipulable) + " manipulable)");
}

PolicySpec RandomTruthOrientedPolicy(std::mt19937_64& rng, const Scenario& s) {
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_real_distribution<double> fraction(0.1, 0.9);
  std::uniform_int_distribution<int> lattice(-12, 12);
  PolicySpec policy;
  switch (pick(rng)) {
    case 0:
      policy = PolicySpec::Monotone(fraction(rng), true);
      break;
    case 1:
      if (s.space().discrete()) {
        policy = PolicySpec::BestResponse(true);
      } else {
        const double delta = Delta(s, DeclaredState::Truthful(s));
        policy = delta > 0 ? PolicySpec::Oscillating(delta / 4, 0.5)
                           : PolicySpec::Monotone(fraction(rng), true);
        policy.truth_oriented = true;
      }
      break;
    default: {
      std::vector<Position> script;
      for (int i = 0; i < 4; ++i) script.push_back(lattice(rng));
      policy = PolicySpec::Scripted(script, PolicySpec::Monotone(0.5, true));
      policy.truth_oriented = true;
    }
  }
  return policy;
}

Result TruthOrientedBound() {
  Checker c;
  std::mt19937_64 rng(501);
  std::size_t moves = 0;
  for (int trial = 0; trial < 500; ++trial) {
    RandomScenarioOptions options;
    options.discrete_space = trial % 2 == 1;
    options.real_positions = trial % 4 == 2;
    options.max_proxies = 5;
    Scenario s = RandomScenario(rng, options);
    std::vector<PolicySpec> policies;
    for (ProxyId j = 0; j < s.num_proxies(); ++j) {
      policies.push_back(RandomTruthOrientedPolicy(rng, s));
    }
    RunOptions run;
    run.max_steps = 300;
    DynamicsTrace trace = RunDynamics(s, Scheduler::RoundRobin(), policies, run);
    moves += trace.moves.size();
    c.Expect(CheckBoundInvariant(trace), "run " + std::to_string(trial) + " leaves the bound");
  }
  return c.Done("500 runs, " + std::to_string(moves) + " moves, 0 violations");
}

struct LemmaCounts {
  std::size_t nonwinner_moves = 0;
  std::size_t segments = 0;
  std::size_t violations = 0;
};

void CountLemmaViolations(const DynamicsTrace& trace, double tolerance, LemmaCounts& out) {
  auto decreases = [tolerance](double entry, double exit) {
    return exit < entry || (tolerance > 0 && entry <= tolerance);
  };
  for (const MoveRecord& r : trace.moves) {
    if (r.mover == r.winner_before) continue;
    ++out.nonwinner_moves;
    if (!decreases(r.delta_before, r.delta_after)) ++out.violations;
  }
  for (const MetaMoveSegment& seg : trace.segments) {
    ++out.segments;
    if (!decreases(seg.entry_delta, seg.exit_delta)) ++out.violations;
  }
}

Result DeltaLemmas() {
  Checker c;
  RunOptions run;
  run.max_steps = 400;
  LemmaCounts exact;
  LemmaCounts tolerant;
  for (double f : {0.25, 0.5, 0.75}) {
    for (const Scenario& s : {fixtures::Example1(), fixtures::Fig5(), fixtures::AppendixB(),
                              fixtures::AppendixA(Space::Continuous()), fixtures::Footnote(10, 1.75)}) {
      CountLemmaViolations(
          RunDynamics(s, Scheduler::RoundRobin(), {PolicySpec::Monotone(f)}, run), 0, exact);
    }
  }
  std::mt19937_64 rng(601);
  for (int trial = 0; trial < 300; ++trial) {
    RandomScenarioOptions options;
    options.max_proxies = 5;
    options.real_positions = trial % 2 == 1;
    Scenario s = RandomScenario(rng, options);
    std::uniform_real_distribution<double> fraction(0.1, 0.9);
    DynamicsTrace trace =
        RunDynamics(s, Scheduler::RoundRobin(), {PolicySpec::Monotone(fraction(rng))}, run);
    CountLemmaViolations(trace, options.real_positions ? 1e-12 : 0,
                         options.real_positions ? tolerant : exact);
  }
  c.Expect(exact.violations == 0, std::to_string(exact.violations) + " exact violations");
  c.Expect(tolerant.violations == 0, std::to_string(tolerant.violations) + " violations at 1e-12");

  // Lattice traces, reported only: a winner at the median may step to the
  // mirror of the nearest opposite proxy, which ties Delta.
  LemmaCounts lattice;
  for (int trial = 0; trial < 200; ++trial) {
    RandomScenarioOptions options;
    options.discrete_space = true;
    options.max_proxies = 5;
    Scenario s = RandomManipulableScenario(rng, options);
    CountLemmaViolations(RunDynamics(s, Scheduler::RoundRobin(), {PolicySpec::Monotone(0.5)}, run),
                         0, lattice);
  }
  std::ostringstream out;
  out << exact.nonwinner_moves + tolerant.nonwinner_moves << " non-winner moves and "
      << exact.segments + tolerant.segments
      << " meta-moves strictly decrease Delta (continuous); lattice traces: "
      << lattice.violations << " tie meta-moves of " << lattice.segments;
  return c.Done(out.str());
}

Result Example3Divergence() {
  Checker c;
  Scenario s = fixtures::Example1();
  const double delta1 = Delta(s, DeclaredState::Truthful(s));
  RunOptions run;
  run.max_steps = 200;
  DynamicsTrace trace = RunDynamics(s, Scheduler::RoundRobin(),
                                    {PolicySpec::Oscillating(delta1 / 4, 0.5)}, run);
  c.Expect(trace.stop_reason == StopReason::kOscillationDetected,
           "stop " + StopReasonName(trace.stop_reason));
  c.Expect(trace.turns <= 200, "more than 200 steps");
  c.Expect(trace.limit_delta && std::abs(*trace.limit_delta - delta1 / 2) <= 1e-6,
           "limit Delta off");
  if (trace.moves.size() >= 2) {
    double a = trace.moves[trace.moves.size() - 1].wm_after;
    double b = trace.moves[trace.moves.size() - 2].wm_after;
    c.Expect(std::abs(std::min(a, b) + 0.5) <= 1e-6 && std::abs(std::max(a, b) - 0.5) <= 1e-6,
             "oscillation points " + Num(a) + ", " + Num(b));
  } else {
    c.Expect(false, "no moves");
  }
  return c.Done("OscillationDetected after " + std::to_string(trace.turns) +
                " steps, limit Delta " + Num(trace.limit_delta.value_or(-1)));
}

Result DiscreteConvergence() {
  Checker c;
  std::mt19937_64 rng(801);
  RunOptions run;
  run.max_steps = 5000;
  std::size_t longest = 0;
  for (int trial = 0; trial < 200; ++trial) {
    RandomScenarioOptions options;
    options.discrete_space = true;
    options.max_proxies = 5;
    Scenario s = RandomManipulableScenario(rng, options);
    DynamicsTrace mono = RunDynamics(s, Scheduler::RoundRobin(), {PolicySpec::Monotone(0.5)}, run);
    c.Expect(mono.stop_reason == StopReason::kPne,
             "scenario " + std::to_string(trial) + ": monotone stop " + StopReasonName(mono.stop_reason));
    c.Expect(WmWinner(s, mono.final_state).position == TrueMedian(s),
             "scenario " + std::to_string(trial) + ": outcome off the median");
    DynamicsTrace best =
        RunDynamics(s, Scheduler::RoundRobin(), {PolicySpec::BestResponse()}, run);
    c.Expect(best.stop_reason == StopReason::kPne,
             "scenario " + std::to_string(trial) + ": best response stop " +
                 StopReasonName(best.stop_reason));
    longest = std::max({longest, mono.turns, best.turns});
  }
  return c.Done("200/200 PNE at med; best response terminates (longest run " +
                std::to_string(longest) + " steps)");
}

Result AppendixA() {
  Checker c;
  Scenario a = fixtures::AppendixA();
  RunOptions run;
  run.max_steps = 50;
  DynamicsTrace trace = RunDynamics(
      a, Scheduler::Scripted({4, 1, 2, 3, 0, 4}),
      {PolicySpec::Scripted({4}), PolicySpec::Scripted({9}), PolicySpec::Scripted({8}),
       PolicySpec::Scripted({7}), PolicySpec::Scripted({10, 5})},
      run);
  Position outcome = WmWinner(a, trace.final_state).position;
  c.Expect(trace.stop_reason == StopReason::kPne, "stop " + StopReasonName(trace.stop_reason));
  c.Expect(outcome == 5, "outcome " + Num(outcome));
  c.Expect(SocialCost(a, WmWinner(a, DeclaredState::Truthful(a)).position) == 84, "SC before");
  c.Expect(SocialCost(a, outcome) == 86, "SC after");
  Scenario continuous = fixtures::AppendixA(Space::Continuous());
  c.Expect(!IsPne(continuous, trace.final_state), "continuous final state is a PNE");
  ProxyId winner = WmWinner(continuous, trace.final_state).id;
  c.Expect(!BetterResponseSet(continuous, trace.final_state, winner).empty(),
           "continuous winner has no better response");
  return c.Done("PNE at 5, SC 84 -> 86; continuous variant not a PNE");
}

Result AppendixB() {
  Checker c;
  Scenario b = fixtures::AppendixB();
  RunOptions run;
  run.max_steps = 400;
  PartialInfoTrace trace = RunPartialInfoDynamics(
      b, Scheduler::Scripted({1, 0}),
      {PolicySpec::Scripted({25}, PolicySpec::Monotone(0.5)),
       PolicySpec::Scripted({29}, PolicySpec::Monotone(0.5))},
      run);
  const auto& in = trace.intervals;
  c.Expect(in.size() >= 3, "fewer than three intervals");
  if (in.size() >= 3) {
    c.Expect(in[0] == MedianInterval{Bound::NegInf(), Bound::Open(30)}, "I0 " + in[0].ToString());
    c.Expect(in[1] == MedianInterval{Bound::Open(-0.5), Bound::Open(30)}, "I1 " + in[1].ToString());
    c.Expect(in[2] == MedianInterval{Bound::Open(-0.5), Bound::Open(27)}, "I2 " + in[2].ToString());
  }
  Position outcome = WmWinner(b, trace.dynamics.final_state).position;
  c.Expect(std::abs(outcome - 25) <= 1e-6, "outcome " + Num(outcome));
  c.Expect(SocialCost(b, -30) == 210, "SC before");
  c.Expect(SocialCost(b, 25) == 235, "SC after");
  BeliefState s3 = BeliefState::Make(Observe(b, DeclaredState({25, 29})),
                                     {Bound::Open(-0.5), Bound::Open(27)});
  c.Expect(DominatingSet(s3, 0, b.peak(0)).empty(), "proxy 1 set not empty");
  c.Expect(DominatingSet(s3, 1, b.peak(1)) == IntervalSet{Interval::Open(25, 29)},
           "proxy 2 set " + DominatingSet(s3, 1, b.peak(1)).ToString());
  return c.Done("(-inf, 30) -> (-0.5, 30) -> (-0.5, 27); outcome " + Num(outcome) +
                "; SC 210 -> 235");
}

// A belief reached by minimax-regret dynamics on a random scenario.
struct SampledBelief {
  Scenario scenario;
  DeclaredState state;
  BeliefState belief;
};

SampledBelief DrawBelief(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10, 10);
  std::uniform_int_distribution<int> proxies(2, 4);
  std::uniform_int_distribution<int> followers(1, 6);
  std::vector<double> peaks(proxies(rng));
  std::vector<double> fs(followers(rng));
  for (double& x : peaks) x = u(rng);
  for (double& x : fs) x = u(rng);
  Scenario s(peaks, fs);
  RunOptions run;
  run.max_steps = 40;
  PartialInfoTrace trace =
      RunPartialInfoDynamics(s, Scheduler::RoundRobin(), {PolicySpec::MinimaxRegret()}, run);
  std::uniform_int_distribution<std::size_t> pick(0, trace.intervals.size() - 1);
  const std::size_t k = pick(rng);
  DeclaredState state = DeclaredState::Truthful(s);
  for (std::size_t i = 0; i < k; ++i) {
    state = state.With(trace.dynamics.moves[i].mover, trace.dynamics.moves[i].to);
  }
  return {s, state, BeliefState::Make(Observe(s, state), trace.intervals[k])};
}

Result MinimaxRegret() {
  Checker c;
  std::mt19937_64 rng(1101);
  int checked = 0;
  int in_set = 0;
  for (int trial = 0; trial < 200; ++trial) {
    SampledBelief sb = DrawBelief(rng);
    const BeliefState& b = sb.belief;
    const std::string tag = "belief " + std::to_string(trial);
    for (ProxyId j = 0; j < sb.scenario.num_proxies(); ++j) {
      const Position peak = sb.scenario.peak(j);
      const Position current = sb.state[j];
      MinimaxChoice choice = MinimaxRegretStrategy(b, j, peak);
      // (b) strong-monotone: no median in I separates old and new position.
      if (choice.chosen != current) {
        bool left = current <= b.ell() && choice.chosen <= b.ell();
        bool right = current >= b.r() && choice.chosen >= b.r();
        c.Expect(left || right, tag + ": proxy " + std::to_string(j + 1) + " crosses I");
      }
      if (j == b.observed.winner) continue;
      ++checked;
      // (a) grid minimisation of max_regret.
      const double step = 0.05;
      double lo = -kInfinity, hi = kInfinity;
      for (Position x : b.observed.declared.positions()) {
        lo = std::min(lo == -kInfinity ? x : lo, x);
        hi = std::max(hi == kInfinity ? x : hi, x);
      }
      lo -= 10;
      hi += 10;
      double grid_best = kInfinity;
      double grid_arg = lo;
      for (double x = lo; x <= hi; x += step) {
        double v = MaxRegret(b, j, peak, x);
        if (v < grid_best) {
          grid_best = v;
          grid_arg = x;
        }
      }
      const double chosen_regret = MaxRegret(b, j, peak, choice.chosen);
      if (std::isinf(grid_best)) {
        c.Expect(std::isinf(chosen_regret), tag + ": finite regret missed by the grid");
      } else {
        c.Expect(chosen_regret <= grid_best + 1e-9, tag + ": grid beats the choice");
        // Regret is 1-Lipschitz, so the grid optimum is within one step.
        c.Expect(grid_best <= chosen_regret + step + 1e-9, tag + ": grid optimum too far above");
        bool unique = choice.argmin.parts().size() == 1 &&
                      choice.argmin.parts()[0].lo.value == choice.argmin.parts()[0].hi.value;
        // The location is only resolvable when the valley is wider than the grid.
        if (unique && chosen_regret > 2 * step) {
          c.Expect(std::abs(grid_arg - choice.chosen) <= step + 1e-9,
                   tag + ": grid argmin " + Num(grid_arg) + " vs " + Num(choice.chosen));
        }
      }
      // (c) inside the dominating set when that set is nonempty.
      IntervalSet dominating = DominatingSet(b, j, peak);
      if (!dominating.empty()) {
        ++in_set;
        c.Expect(dominating.Contains(choice.chosen), tag + ": choice outside the dominating set");
      }
      // Regret at the relevant interval end.
      const bool left_peaked = peak <= b.wm();
      const double end = left_peaked ? b.ell() : b.r();
      if (std::isfinite(end) && end != b.wm()) {
        c.Expect(std::abs(MaxRegret(b, j, peak, end) - std::abs(end - b.wm())) <= 1e-9,
                 tag + ": max_regret at the interval end");
      }
    }
  }
  return c.Done(std::to_string(checked) + " non-winner choices, " + std::to_string(in_set) +
                " with a nonempty dominating set");
}

Result FootnoteSocialCost() {
  Checker c;
  const int k = 10;
  Scenario near = fixtures::Footnote(k, 1.75);
  Winner w = WmWinner(near, DeclaredState::Truthful(near));
  c.Expect(w.id == 1, "the proxy near 2 does not win");
  const double sc_winner = SocialCost(near, w.position);
  const double sc_other = SocialCost(near, 0);
  c.Expect(sc_winner > sc_other, "winner SC " + Num(sc_winner) + " <= " + Num(sc_other));

  Scenario reverse = fixtures::Footnote(k, 1 + 2.0 / k);
  const double med = TrueMedian(reverse);
  const double sc_zero = SocialCost(reverse, 0);
  const double sc_far = SocialCost(reverse, 1 + 2.0 / k);
  c.Expect(sc_zero < sc_far, "reverse: SC order");
  c.Expect(std::abs(0 - med) > std::abs(1 + 2.0 / k - med), "reverse: distances to med");
  return c.Done("k=10: SC(winner) " + Num(sc_winner) + " > SC(other) " + Num(sc_other) +
                "; reverse: SC " + Num(sc_zero) + " < " + Num(sc_far) +
                " with the lower-SC proxy farther from med");
}

}  // namespace
}  // namespace proxyline

int main() {
  using proxyline::Result;
  struct Criterion {
    int id;
    const char* name;
    std::function<Result()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {1, "Example 1 winner", proxyline::Example1Winner, 1},
      {2, "Example 2 manipulation", proxyline::Example2Manipulation, 1},
      {3, "follower strategyproofness", proxyline::FollowerStrategyproofness, 30},
      {4, "manipulability characterization vs oracle", proxyline::ManipulabilityCharacterization, 60},
      {5, "truth-oriented bound", proxyline::TruthOrientedBound, 60},
      {6, "non-winner and meta-move Delta decrease", proxyline::DeltaLemmas, 60},
      {7, "Example 3 divergence", proxyline::Example3Divergence, 10},
      {8, "discrete convergence and FBRP", proxyline::DiscreteConvergence, 60},
      {9, "Appendix A", proxyline::AppendixA, 10},
      {10, "Appendix B", proxyline::AppendixB, 10},
      {11, "minimax regret", proxyline::MinimaxRegret, 60},
      {12, "footnote social cost", proxyline::FootnoteSocialCost, 1},
  };
  int failed = 0;
  for (const Criterion& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criterion.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criterion.budget_seconds) {
      r.pass = false;
      r.detail += " (over the " + proxyline::FormatNumber(criterion.budget_seconds) + " s budget)";
    }
    if (!r.pass) ++failed;
    std::printf("criterion %2d: %s  %s: %s [%.2f s]\n", criterion.id, r.pass ? "PASS" : "FAIL",
                criterion.name, r.detail.c_str(), seconds);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
