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

#include "proxyline/partial_info.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "proxyline/manipulation.h"
#include "proxyline/metrics.h"

namespace proxyline {
namespace {

MedianInterval MidpointInterval(const BeliefState& around) {
  MedianInterval out;
  const double wm = around.wm();
  if (around.left_neighbor) out.lower = Bound::Open((*around.left_neighbor + wm) / 2);
  if (around.right_neighbor) out.upper = Bound::Open((*around.right_neighbor + wm) / 2);
  return out;
}

MedianInterval Intersect(const MedianInterval& a, const MedianInterval& b) {
  Interval i = a.AsInterval().Intersect(b.AsInterval());
  return {i.lo, i.hi};
}

MedianInterval Mirror(const MedianInterval& i) {
  return {{-i.upper.value, i.upper.closed}, {-i.lower.value, i.lower.closed}};
}

// Mirror image of a belief about x -> -x. Lets right-peaked cases reuse the
// left-peaked formulas.
BeliefState Mirror(const BeliefState& b) {
  std::vector<Position> flipped;
  for (Position x : b.observed.declared.positions()) flipped.push_back(-x);
  BeliefState out;
  out.observed = {DeclaredState(std::move(flipped)), b.observed.winner,
                  -b.observed.winner_position};
  out.interval = Mirror(b.interval);
  if (b.right_neighbor) out.left_neighbor = -*b.right_neighbor;
  if (b.left_neighbor) out.right_neighbor = -*b.left_neighbor;
  return out;
}

IntervalSet Mirror(const IntervalSet& set) {
  std::vector<Interval> parts;
  for (const Interval& i : set.parts()) {
    parts.push_back({{-i.hi.value, i.hi.closed}, {-i.lo.value, i.lo.closed}});
  }
  return IntervalSet(std::move(parts));
}

IntervalSet NonwinnerLeft(const BeliefState& b, Position peak) {
  const double wm = b.wm();
  const double ell = b.ell();
  if (!(ell < wm)) return {};
  double lo = wm - 2 * (wm - ell);
  if (b.left_neighbor) lo = std::max(lo, *b.left_neighbor);
  return IntervalSet{Interval::Open(lo, wm)}.Intersect(Interval::Open(2 * peak - wm, wm));
}

IntervalSet WinnerLeft(const BeliefState& b, Position peak) {
  const double wm = b.wm();
  const Bound& lower = b.interval.lower;
  const bool left_of_interval = wm < lower.value || (wm == lower.value && !lower.closed);
  if (!(peak < wm) || !left_of_interval) return {};
  Interval set = Interval::Open(2 * peak - wm, wm);
  if (b.left_neighbor) set = set.Intersect(Interval::Open(*b.left_neighbor, kInfinity));
  if (b.right_neighbor) {
    const Bound& upper = b.interval.upper;
    if (!upper.finite()) return {};
    const double r = upper.value;
    const double s_r = *b.right_neighbor;
    if (!(s_r - r > r - wm)) return {};
    // A median at r itself would tie x with s_r, so a closed r stays open.
    set = set.Intersect({{2 * r - s_r, !upper.closed}, Bound::PosInf()});
  }
  return IntervalSet{set};
}

double MaxRegretLeft(const BeliefState& b, Position x) {
  const double wm = b.wm();
  const double ell = b.ell();
  if (!std::isfinite(ell)) return kInfinity;
  const double d = wm - ell;
  if (d <= 0) return x < wm ? 0.0 : x - wm;
  if (x >= wm) return 2 * d;
  // Medians in (ell, min(r, wm)] give ex-post optima opt = 2 med - wm.
  const double opt_lo = 2 * ell - wm;
  const double opt_hi = 2 * std::min(b.r(), wm) - wm;
  if (x <= opt_lo) return 2 * d;
  double regret = x - opt_lo;
  if (x <= opt_hi) regret = std::max(regret, wm - x);
  return regret;
}

MinimaxChoice MinimaxLeft(const BeliefState& b, Position current) {
  const double wm = b.wm();
  const double ell = b.ell();
  if (!std::isfinite(ell)) return {IntervalSet::All(), current, kInfinity};
  const double d = wm - ell;
  if (d > 0) return {IntervalSet{Interval::Point(ell)}, ell, d};
  const double edge = std::min(ell, wm);
  IntervalSet argmin{Interval{Bound::NegInf(), Bound::Open(edge)}};
  return {argmin, argmin.Contains(current) ? current : edge, 0.0};
}

std::optional<Position> Nearest(const std::vector<Position>& xs, Position wm,
                                 bool left) {
  std::optional<Position> best;
  for (Position x : xs) {
    if (left ? x < wm : x > wm) {
      if (!best || (left ? x > *best : x < *best)) best = x;
    }
  }
  return best;
}

void ValidatePartialPolicy(const PolicySpec& policy) {
  switch (policy.kind) {
    case PolicySpec::Kind::kScripted:
      if (policy.after_script) ValidatePartialPolicy(*policy.after_script);
      return;
    case PolicySpec::Kind::kMonotoneBetterResponse:
    case PolicySpec::Kind::kMinimaxRegret:
      return;
    default:
      throw ConfigError(policy.Name() + " is not available in partial_info mode");
  }
}

std::optional<Position> MonotoneInside(const IntervalSet& set, Position peak,
                                       Position wm, double fraction,
                                       const Space& space) {
  if (!ContainsAdmissible(set, space)) return std::nullopt;
  const double lo = set.Infimum()->value;
  const double hi = set.Supremum()->value;
  const bool left = peak <= wm;
  const double anchor = left ? hi : lo;
  double target = std::clamp(peak, lo, hi);
  if (target == anchor) {
    double far = left ? lo : hi;
    target = std::isfinite(far) ? far : anchor + (left ? -1.0 : 1.0);
  }
  double f = fraction;
  for (int i = 0; i < 60; ++i, f /= 2.0) {
    double x = anchor + f * (target - anchor);
    if (space.discrete()) return set.NearestLatticePoint(x, space.step());
    if (set.Contains(x)) return x;
  }
  return std::nullopt;
}

}  // namespace

BeliefState BeliefState::Make(ObservedState observed, MedianInterval interval) {
  BeliefState b;
  b.left_neighbor =
      Nearest(observed.declared.positions(), observed.winner_position, true);
  b.right_neighbor =
      Nearest(observed.declared.positions(), observed.winner_position, false);
  b.observed = std::move(observed);
  b.interval = interval;
  return b;
}

ObservedState Observe(const Scenario& scenario, const DeclaredState& state) {
  Winner w = WmWinner(scenario, state);
  return {state, w.id, w.position};
}

MedianInterval InitMedianInterval(const ObservedState& observed) {
  return MidpointInterval(BeliefState::Make(observed, {}));
}

MedianInterval UpdateMedianInterval(const BeliefState& belief,
                                    const MoveRecord& move,
                                    const ObservedState& observed_after) {
  const MedianInterval& prior = belief.interval;
  MedianInterval next;
  const bool winner_stayed = move.winner_before == move.mover &&
                             observed_after.winner == move.mover &&
                             move.to != move.from;
  const bool moved_right = move.to > move.from;
  const bool away = moved_right ? move.from >= prior.upper.value
                                : move.from <= prior.lower.value;
  if (winner_stayed && !away) {
    MedianInterval half;
    if (moved_right) {
      half.lower = Bound::Closed(move.to);
    } else {
      half.upper = Bound::Closed(move.to);
    }
    next = Intersect(prior, half);
  } else {
    next = Intersect(prior, MidpointInterval(BeliefState::Make(observed_after, {})));
  }
  if (next.empty()) {
    throw InconsistentObservation("inconsistent observation: " + prior.ToString() +
                                  " leaves nothing after the move to " +
                                  FormatNumber(move.to));
  }
  return next;
}

IntervalSet DominatingSetNonwinner(const BeliefState& belief, ProxyId proxy,
                                   Position peak) {
  if (proxy == belief.observed.winner) {
    throw Error("dominating_set_nonwinner called for the winner");
  }
  if (peak <= belief.wm()) return NonwinnerLeft(belief, peak);
  return Mirror(NonwinnerLeft(Mirror(belief), -peak));
}

IntervalSet DominatingSetWinner(const BeliefState& belief, Position peak) {
  if (peak < belief.wm()) return WinnerLeft(belief, peak);
  if (peak > belief.wm()) return Mirror(WinnerLeft(Mirror(belief), -peak));
  return {};
}

IntervalSet DominatingSet(const BeliefState& belief, ProxyId proxy,
                          Position peak) {
  if (proxy == belief.observed.winner) return DominatingSetWinner(belief, peak);
  return DominatingSetNonwinner(belief, proxy, peak);
}

double MaxRegret(const BeliefState& belief, ProxyId proxy, Position peak,
                 Position candidate) {
  if (proxy == belief.observed.winner) {
    throw Error("max_regret is defined for non-winning proxies");
  }
  if (peak <= belief.wm()) return MaxRegretLeft(belief, candidate);
  return MaxRegretLeft(Mirror(belief), -candidate);
}

MinimaxChoice MinimaxRegretStrategy(const BeliefState& belief, ProxyId proxy,
                                    Position peak) {
  const Position current = belief.observed.declared[proxy];
  if (proxy == belief.observed.winner) {
    double regret = 0.0;
    if (peak != current) {
      regret = kInfinity;
      if (belief.left_neighbor) regret = std::min(regret, current - *belief.left_neighbor);
      if (belief.right_neighbor) regret = std::min(regret, *belief.right_neighbor - current);
    }
    return {IntervalSet{Interval::Point(current)}, current, regret};
  }
  // The outcome already sits at the peak: nothing to regret by staying.
  if (peak == belief.wm()) return {IntervalSet{Interval::Point(current)}, current, 0.0};
  if (peak <= belief.wm()) return MinimaxLeft(belief, current);
  MinimaxChoice m = MinimaxLeft(Mirror(belief), -current);
  return {Mirror(m.argmin), -m.chosen, m.regret};
}

std::vector<std::vector<Position>> SampleConsistentProfiles(
    const ObservedState& observed, std::size_t n, std::size_t count,
    const SamplingOptions& options) {
  const auto& s = observed.declared.positions();
  const auto [min_it, max_it] = std::minmax_element(s.begin(), s.end());
  double span = *max_it - *min_it;
  if (span == 0) span = 1;
  const double lo = options.box_lower.value_or(*min_it - span);
  const double hi = options.box_upper.value_or(*max_it + span);
  if (!(lo < hi)) throw ConfigError("sampling box is empty");

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> draw(lo, hi);
  std::vector<std::vector<Position>> out;
  std::vector<Position> profile(n);
  for (std::size_t k = 0; k < count; ++k) {
    bool found = false;
    for (std::size_t attempt = 0; attempt < options.budget && !found; ++attempt) {
      for (Position& x : profile) x = draw(rng);
      Scenario scenario(s, profile);
      if (WmWinner(scenario, observed.declared).id != observed.winner) continue;
      if (options.median_filter &&
          !options.median_filter->Contains(UnweightedMedian(scenario, observed.declared))) {
        continue;
      }
      found = true;
    }
    if (!found) throw BudgetExhausted();
    out.push_back(profile);
  }
  return out;
}

std::vector<Position> SampleConsistentProfile(const ObservedState& observed,
                                              std::size_t n,
                                              const SamplingOptions& options) {
  return SampleConsistentProfiles(observed, n, 1, options).front();
}

PartialInfoTrace RunPartialInfoDynamics(const Scenario& scenario,
                                        const Scheduler& scheduler,
                                        const std::vector<PolicySpec>& policies,
                                        const RunOptions& options) {
  const std::size_t m = scenario.num_proxies();
  if (policies.size() != 1 && policies.size() != m) {
    throw ConfigError("need one policy, or one per proxy");
  }
  if (options.max_steps < 1) throw ConfigError("max_steps must be at least 1");
  scheduler.Validate(m);
  for (const PolicySpec& policy : policies) {
    policy.Validate(scenario.space());
    ValidatePartialPolicy(policy);
  }

  DeclaredState state = DeclaredState::Truthful(scenario);
  ObservedState observed = Observe(scenario, state);
  BeliefState belief = BeliefState::Make(observed, InitMedianInterval(observed));
  PartialInfoTrace out{DynamicsTrace(scenario), {belief.interval}};
  DynamicsTrace& trace = out.dynamics;
  std::vector<std::size_t> cursors(m, 0);
  std::size_t passes = 0;
  bool stopped = false;

  for (std::size_t turn = 1; turn <= options.max_steps; ++turn) {
    trace.turns = turn;
    const ProxyId mover = scheduler.MoverAt(turn - 1, m);
    const PolicySpec& policy = policies.size() == 1 ? policies[0] : policies[mover];
    const Position peak = scenario.peak(mover);
    StepContext context{turn, trace.moves.size(), cursors[mover]};
    std::optional<Position> scripted;
    const PolicySpec* effective = ResolveScript(policy, context, &scripted);
    cursors[mover] = context.script_cursor;

    const IntervalSet dominating = DominatingSet(belief, mover, peak);
    std::optional<Position> proposal;
    bool minimax = false;
    if (effective) {
      switch (effective->kind) {
        case PolicySpec::Kind::kScripted:
          proposal = scripted;
          break;
        case PolicySpec::Kind::kMonotoneBetterResponse:
          proposal = MonotoneInside(dominating, peak, belief.wm(),
                                    effective->fraction, scenario.space());
          break;
        case PolicySpec::Kind::kMinimaxRegret:
          minimax = true;
          proposal = MinimaxRegretStrategy(belief, mover, peak).chosen;
          break;
        default:
          break;
      }
    }
    const bool accept = proposal && std::isfinite(*proposal) &&
                        !BelowResolution(state[mover], *proposal,
                                         options.partial_info_resolution) &&
                        scenario.space().Admits(*proposal) &&
                        (minimax || dominating.Contains(*proposal));
    if (!accept) {
      if (++passes >= m) {
        trace.stop_reason = IsPne(scenario, state) ? StopReason::kPne
                                                   : StopReason::kQuiescent;
        stopped = true;
        break;
      }
      continue;
    }
    passes = 0;
    DeclaredState next = state.With(mover, *proposal);
    Winner before = WmWinner(scenario, state);
    Winner after = WmWinner(scenario, next);
    MoveRecord record{turn,
                      mover,
                      state[mover],
                      *proposal,
                      before.id,
                      after.id,
                      before.position,
                      after.position,
                      UnweightedMedian(scenario, next),
                      Delta(scenario, state),
                      Delta(scenario, next)};
    ObservedState observed_after = Observe(scenario, next);
    MedianInterval interval = UpdateMedianInterval(belief, record, observed_after);
    belief = BeliefState::Make(observed_after, interval);
    out.intervals.push_back(interval);
    state = next;
    trace.moves.push_back(record);
    if (DetectOscillation(trace.moves, options.oscillation_window,
                          options.oscillation_tolerance)) {
      trace.stop_reason = StopReason::kOscillationDetected;
      trace.limit_delta = record.delta_after;
      stopped = true;
      break;
    }
  }
  if (!stopped) trace.stop_reason = StopReason::kMaxSteps;

  FinalizeTrace(trace, state, options);
  return out;
}

}  // namespace proxyline
