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

#include "proxyline/dynamics.h"

#include <algorithm>
#include <cmath>

#include "proxyline/interval_set.h"
#include "proxyline/manipulation.h"
#include "proxyline/metrics.h"

namespace proxyline {

const PolicySpec* ResolveScript(const PolicySpec& policy, StepContext& context,
                                std::optional<Position>* scripted) {
  const PolicySpec* current = &policy;
  std::size_t offset = context.script_cursor;
  while (current && current->kind == PolicySpec::Kind::kScripted) {
    if (offset < current->script.size()) {
      *scripted = current->script[offset];
      ++context.script_cursor;
      return current;
    }
    offset -= current->script.size();
    current = current->after_script.get();
  }
  return current;
}

namespace {

std::optional<Position> MonotoneProposal(const Scenario& scenario,
                                         const DeviationMap& map,
                                         const DeclaredState& state,
                                         double fraction) {
  const double med = TrueMedian(scenario);
  const double p = map.peak();
  const bool left = p <= med;
  Interval own = left ? Interval{Bound::NegInf(), Bound::Closed(med)}
                      : Interval{Bound::Closed(med), Bound::PosInf()};
  IntervalSet j_set = map.BetterResponses().Intersect(own);
  // Ties in distance to the median keep Delta from shrinking. A non-winner
  // avoids the reflection of the outcome; in continuous space the winner
  // avoids the reflection of every other proxy. On a lattice such a tie can
  // be the winner's only better response, and the last step to equilibrium.
  auto avoid = [&j_set](double mirror) {
    j_set = j_set.Intersect(IntervalSet{{Bound::NegInf(), Bound::Open(mirror)},
                                        {Bound::Open(mirror), Bound::PosInf()}});
  };
  const Winner current = WmWinner(scenario, state);
  if (current.id != map.proxy()) {
    if (current.position != med) avoid(2 * med - current.position);
  } else if (!scenario.space().discrete()) {
    for (ProxyId k = 0; k < state.size(); ++k) {
      if (k != map.proxy() && state[k] != med) avoid(2 * med - state[k]);
    }
  }
  if (!ContainsAdmissible(j_set, scenario.space())) return std::nullopt;

  const double lo = j_set.Infimum()->value;
  const double hi = j_set.Supremum()->value;
  const double anchor = left ? hi : lo;
  double target = std::clamp(p, lo, hi);
  if (target == anchor) {
    double far = left ? lo : hi;
    target = std::isfinite(far) ? far : anchor + (left ? -1.0 : 1.0);
  }
  double f = fraction;
  for (int i = 0; i < 60; ++i, f /= 2.0) {
    double x = anchor + f * (target - anchor);
    if (scenario.space().discrete()) {
      return j_set.NearestLatticePoint(x, scenario.space().step());
    }
    if (j_set.Contains(x)) return x;
  }
  return std::nullopt;
}

std::optional<Position> OscillatingProposal(const Scenario& scenario,
                                            const DeclaredState& state,
                                            ProxyId mover,
                                            const PolicySpec& policy,
                                            const StepContext& context) {
  const double med = TrueMedian(scenario);
  const double p = scenario.peak(mover);
  const double alpha =
      policy.alpha1 * std::pow(policy.decay, static_cast<double>(context.accepted_moves));
  const double sign = (med > p) - (med < p);
  return med - sign * (Delta(scenario, state) - alpha);
}

std::optional<Position> TruthfulProposal(const Scenario& scenario,
                                         const DeviationMap& map) {
  const double p = map.peak();
  if (!scenario.space().Admits(p)) return std::nullopt;
  if (!map.BetterResponses().Contains(p)) return std::nullopt;
  auto best = map.BestAchievableDistance(scenario.space());
  if (!best) return std::nullopt;
  if (std::abs(map.OutcomeAt(p) - p) <= *best) return p;
  return std::nullopt;
}

}  // namespace

PolicySpec PolicySpec::Monotone(double fraction, bool truth_oriented) {
  PolicySpec spec;
  spec.kind = Kind::kMonotoneBetterResponse;
  spec.fraction = fraction;
  spec.truth_oriented = truth_oriented;
  return spec;
}

PolicySpec PolicySpec::BestResponse(bool truth_oriented) {
  PolicySpec spec;
  spec.kind = Kind::kDiscreteBestResponse;
  spec.truth_oriented = truth_oriented;
  return spec;
}

PolicySpec PolicySpec::Oscillating(double alpha1, double decay) {
  PolicySpec spec;
  spec.kind = Kind::kOscillatingAlpha;
  spec.alpha1 = alpha1;
  spec.decay = decay;
  return spec;
}

PolicySpec PolicySpec::MinimaxRegret() {
  PolicySpec spec;
  spec.kind = Kind::kMinimaxRegret;
  return spec;
}

PolicySpec PolicySpec::Scripted(std::vector<Position> script,
                                std::optional<PolicySpec> after) {
  PolicySpec spec;
  spec.kind = Kind::kScripted;
  spec.script = std::move(script);
  if (after) spec.after_script = std::make_shared<const PolicySpec>(*after);
  return spec;
}

void PolicySpec::Validate(const Space& space) const {
  switch (kind) {
    case Kind::kMonotoneBetterResponse:
      if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw ConfigError("monotone fraction must lie in (0, 1]");
      }
      break;
    case Kind::kDiscreteBestResponse:
      if (!space.discrete()) {
        throw ConfigError("discrete_best_response needs a discrete space");
      }
      break;
    case Kind::kOscillatingAlpha:
      if (space.discrete()) {
        throw ConfigError("oscillating_alpha needs a continuous space");
      }
      if (!(alpha1 > 0.0) || !(decay > 0.0 && decay < 1.0)) {
        throw ConfigError("oscillating_alpha needs alpha1 > 0 and decay in (0, 1)");
      }
      break;
    case Kind::kMinimaxRegret:
      break;
    case Kind::kScripted:
      for (Position x : script) {
        if (!std::isfinite(x)) throw ConfigError("script entries must be finite");
      }
      if (after_script) after_script->Validate(space);
      break;
  }
}

std::string PolicySpec::Name() const {
  switch (kind) {
    case Kind::kMonotoneBetterResponse: return "monotone_better_response";
    case Kind::kDiscreteBestResponse: return "discrete_best_response";
    case Kind::kOscillatingAlpha: return "oscillating_alpha";
    case Kind::kMinimaxRegret: return "minimax_regret";
    case Kind::kScripted: return "scripted";
  }
  return "unknown";
}

void Scheduler::Validate(std::size_t num_proxies) const {
  for (ProxyId j : order) {
    if (j >= num_proxies) throw ConfigError("scheduler order names an unknown proxy");
  }
  if (kind == Kind::kRoundRobin && !order.empty()) {
    throw ConfigError("round_robin scheduler takes no order");
  }
}

ProxyId Scheduler::MoverAt(std::size_t turn, std::size_t num_proxies) const {
  if (turn < order.size()) return order[turn];
  return (turn - order.size()) % num_proxies;
}

std::string StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kPne: return "PNE";
    case StopReason::kMaxSteps: return "MaxSteps";
    case StopReason::kOscillationDetected: return "OscillationDetected";
    case StopReason::kQuiescent: return "Quiescent";
  }
  return "unknown";
}

std::optional<MoveRecord> Step(const Scenario& scenario,
                               const DeclaredState& state, ProxyId mover,
                               const PolicySpec& policy, StepContext& context) {
  policy.Validate(scenario.space());
  std::optional<Position> scripted;
  const PolicySpec* effective = ResolveScript(policy, context, &scripted);

  DeviationMap map(scenario, state, mover);
  std::optional<Position> proposal;
  if (policy.truth_oriented || (effective && effective->truth_oriented)) {
    proposal = TruthfulProposal(scenario, map);
  }
  if (!proposal && effective) {
    switch (effective->kind) {
      case PolicySpec::Kind::kScripted:
        proposal = scripted;
        break;
      case PolicySpec::Kind::kMonotoneBetterResponse:
        proposal = MonotoneProposal(scenario, map, state,
                                    effective->fraction);
        break;
      case PolicySpec::Kind::kDiscreteBestResponse:
        proposal = DiscreteBestResponse(scenario, state, mover);
        break;
      case PolicySpec::Kind::kOscillatingAlpha:
        proposal = OscillatingProposal(scenario, state, mover, *effective, context);
        break;
      case PolicySpec::Kind::kMinimaxRegret:
        throw ConfigError("minimax_regret runs in partial_info mode only");
    }
  }
  if (!proposal || *proposal == state[mover] ||
      !scenario.space().Admits(*proposal) ||
      !IsBetterResponse(scenario, state, mover, *proposal)) {
    return std::nullopt;
  }

  DeclaredState next = state.With(mover, *proposal);
  Winner before = WmWinner(scenario, state);
  Winner after = WmWinner(scenario, next);
  return MoveRecord{context.turn,
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
}

bool DetectOscillation(const std::vector<MoveRecord>& moves,
                       std::size_t window, double tolerance) {
  if (window < 3 || moves.size() < window) return false;
  const std::size_t n = moves.size();
  for (std::size_t i = n - window + 2; i < n; ++i) {
    const MoveRecord& a = moves[i];
    const MoveRecord& b = moves[i - 1];
    const MoveRecord& c = moves[i - 2];
    if (std::abs(a.wm_after - c.wm_after) > tolerance) return false;
    if (std::abs(a.delta_after - c.delta_after) > tolerance) return false;
    if (std::abs(a.wm_after - b.wm_after) <= tolerance) return false;
    if (a.delta_after <= tolerance) return false;
  }
  return true;
}

void FinalizeTrace(DynamicsTrace& trace, const DeclaredState& final_state,
                   const RunOptions& options) {
  trace.final_state = final_state;
  trace.segments = DetectMetaMoves(trace.moves);
  if (trace.stop_reason == StopReason::kPne) {
    trace.converged = true;
    return;
  }
  if (trace.stop_reason == StopReason::kOscillationDetected) {
    trace.converged = false;
    return;
  }
  const double final_wm = WmWinner(trace.scenario, final_state).position;
  const std::size_t n = trace.moves.size();
  const std::size_t k = std::min(n, options.oscillation_window);
  trace.converged = true;
  for (std::size_t i = n - k; i < n; ++i) {
    if (std::abs(trace.moves[i].wm_after - final_wm) > options.convergence_tolerance) {
      trace.converged = false;
    }
  }
}

bool BelowResolution(Position from, Position to, double resolution) {
  return std::abs(to - from) <= resolution * std::max(1.0, std::abs(from));
}

DynamicsTrace RunDynamics(const Scenario& scenario, const Scheduler& scheduler,
                          const std::vector<PolicySpec>& policies,
                          const RunOptions& options) {
  const std::size_t m = scenario.num_proxies();
  if (policies.size() != 1 && policies.size() != m) {
    throw ConfigError("need one policy, or one per proxy");
  }
  if (options.max_steps < 1) throw ConfigError("max_steps must be at least 1");
  scheduler.Validate(m);
  for (const PolicySpec& policy : policies) policy.Validate(scenario.space());

  DeclaredState state = DeclaredState::Truthful(scenario);
  DynamicsTrace trace(scenario);
  std::vector<std::size_t> cursors(m, 0);
  std::size_t passes = 0;
  bool stopped = false;

  for (std::size_t turn = 1; turn <= options.max_steps; ++turn) {
    trace.turns = turn;
    const ProxyId mover = scheduler.MoverAt(turn - 1, m);
    const PolicySpec& policy = policies.size() == 1 ? policies[0] : policies[mover];
    StepContext context{turn, trace.moves.size(), cursors[mover]};
    std::optional<MoveRecord> record = Step(scenario, state, mover, policy, context);
    cursors[mover] = context.script_cursor;

    if (!record || BelowResolution(record->from, record->to, options.resolution)) {
      if (++passes >= m) {
        trace.stop_reason = IsPne(scenario, state) ? StopReason::kPne
                                                   : StopReason::kQuiescent;
        stopped = true;
        break;
      }
      continue;
    }
    passes = 0;
    state = state.With(mover, record->to);
    trace.moves.push_back(*record);
    if (DetectOscillation(trace.moves, options.oscillation_window,
                          options.oscillation_tolerance)) {
      trace.stop_reason = StopReason::kOscillationDetected;
      trace.limit_delta = record->delta_after;
      stopped = true;
      break;
    }
  }
  if (!stopped) trace.stop_reason = StopReason::kMaxSteps;

  FinalizeTrace(trace, state, options);
  return trace;
}

namespace {

bool IsArrival(const MoveRecord& r) {
  return r.mover != r.winner_before && r.winner_after == r.mover;
}

// Index one past the continuation of the arrival at `i`.
std::size_t ContinuationEnd(const std::vector<MoveRecord>& moves, std::size_t i) {
  std::size_t j = i + 1;
  while (j < moves.size() && moves[j].mover == moves[i].mover &&
         moves[j].winner_before == moves[i].mover) {
    ++j;
  }
  return j;
}

}  // namespace

std::vector<MetaMoveSegment> DetectMetaMoves(const std::vector<MoveRecord>& moves) {
  std::vector<MetaMoveSegment> out;
  for (std::size_t i = 0; i < moves.size();) {
    if (!IsArrival(moves[i])) {
      ++i;
      continue;
    }
    std::size_t end = ContinuationEnd(moves, i);
    out.push_back({i, end - i - 1, moves[i].delta_before, moves[end - 1].delta_after});
    i = end;
  }
  return out;
}

std::vector<MetaStep> ClassifyMetaSteps(const std::vector<MoveRecord>& moves,
                                        double alpha) {
  std::vector<MetaStep> out;
  for (std::size_t i = 0; i < moves.size();) {
    MetaStep unit{};
    if (IsArrival(moves[i])) {
      std::size_t end = ContinuationEnd(moves, i);
      unit = {MetaStepKind::kSegment, i, end - i - 1, moves[i].delta_before,
              moves[end - 1].delta_after, MetaStepLabel::kSmall};
      i = end;
    } else {
      MetaStepKind kind = moves[i].mover == moves[i].winner_before
                              ? MetaStepKind::kWinnerMove
                              : MetaStepKind::kNonWinnerMove;
      unit = {kind, i, 0, moves[i].delta_before, moves[i].delta_after,
              MetaStepLabel::kSmall};
      ++i;
    }
    if (unit.exit_delta < alpha * unit.entry_delta) unit.label = MetaStepLabel::kBig;
    out.push_back(unit);
  }
  return out;
}

bool CheckBoundInvariant(const DynamicsTrace& trace) {
  const Scenario& scenario = trace.scenario;
  const double med = TrueMedian(scenario);
  const double delta = Delta(scenario, DeclaredState::Truthful(scenario));
  const double lo = med - delta;
  const double hi = med + delta;
  auto inside = [&](double x) { return lo <= x && x <= hi; };
  for (const MoveRecord& r : trace.moves) {
    if (!inside(r.median_after) || !inside(r.wm_after)) return false;
    const double p = scenario.peak(r.mover);
    if (p < med && r.to > hi) return false;
    if (p > med && r.to < lo) return false;
  }
  return true;
}

bool MonotoneMedianCheck(const DynamicsTrace& trace) {
  const double med = TrueMedian(trace.scenario);
  return std::all_of(trace.moves.begin(), trace.moves.end(),
                     [med](const MoveRecord& r) { return r.median_after == med; });
}

}  // namespace proxyline
