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

#ifndef PROXYLINE_DYNAMICS_H_
#define PROXYLINE_DYNAMICS_H_

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proxyline/core_model.h"

namespace proxyline {

// Declarative strategy rule for one proxy.
struct PolicySpec {
  enum class Kind {
    kMonotoneBetterResponse,
    kDiscreteBestResponse,
    kOscillatingAlpha,
    kMinimaxRegret,
    kScripted,
  };

  Kind kind = Kind::kMonotoneBetterResponse;
  double fraction = 0.5;  // monotone: share of the way from anchor to target
  double alpha1 = 0.25;   // oscillating: first decrement
  double decay = 0.5;     // oscillating: alpha_{k+1} = decay * alpha_k
  std::vector<Position> script;
  // Policy used once the script runs out; passing forever when null.
  std::shared_ptr<const PolicySpec> after_script;
  bool truth_oriented = false;

  static PolicySpec Monotone(double fraction, bool truth_oriented = false);
  static PolicySpec BestResponse(bool truth_oriented = false);
  static PolicySpec Oscillating(double alpha1, double decay);
  static PolicySpec MinimaxRegret();
  static PolicySpec Scripted(std::vector<Position> script,
                             std::optional<PolicySpec> after = std::nullopt);

  // Throws ConfigError on bad parameters or a policy/space mismatch.
  void Validate(const Space& space) const;

  std::string Name() const;
};

struct Scheduler {
  enum class Kind { kRoundRobin, kScripted };

  Kind kind = Kind::kRoundRobin;
  std::vector<ProxyId> order;  // scripted prefix; round robin afterwards

  static Scheduler RoundRobin() { return {}; }
  static Scheduler Scripted(std::vector<ProxyId> order) {
    return {Kind::kScripted, std::move(order)};
  }

  void Validate(std::size_t num_proxies) const;
  ProxyId MoverAt(std::size_t turn, std::size_t num_proxies) const;
};

struct MoveRecord {
  std::size_t step;  // 1-based turn index, passes included
  ProxyId mover;
  Position from;
  Position to;
  ProxyId winner_before;
  ProxyId winner_after;
  Position wm_before;
  Position wm_after;
  Position median_after;
  double delta_before;
  double delta_after;
};

enum class StopReason { kPne, kMaxSteps, kOscillationDetected, kQuiescent };

std::string StopReasonName(StopReason reason);

// A winning arrival at records[start] followed by `length` consecutive
// records in which the same proxy keeps moving while winning.
struct MetaMoveSegment {
  std::size_t start;
  std::size_t length;
  double entry_delta;
  double exit_delta;
};

struct DynamicsTrace {
  explicit DynamicsTrace(Scenario s)
      : scenario(std::move(s)),
        initial(DeclaredState::Truthful(scenario)),
        final_state(initial) {}

  Scenario scenario;
  DeclaredState initial{{}};
  DeclaredState final_state{{}};
  std::vector<MoveRecord> moves;
  std::size_t turns = 0;
  StopReason stop_reason = StopReason::kMaxSteps;
  std::optional<double> limit_delta;
  bool converged = false;
  std::vector<MetaMoveSegment> segments;
};

struct RunOptions {
  std::size_t max_steps = 1000;
  std::size_t oscillation_window = 16;
  double oscillation_tolerance = 1e-9;
  double convergence_tolerance = 1e-6;
  // Moves shorter than resolution * max(1, |from|) count as passes.
  double resolution = 4 * std::numeric_limits<double>::epsilon();
  // Same for partial information, where beliefs are built from midpoints and
  // delegation distances that round long before positions do.
  double partial_info_resolution = 1e-12;
};

bool BelowResolution(Position from, Position to, double resolution);

// Mutable bookkeeping the engine threads through Step.
struct StepContext {
  std::size_t turn = 1;
  std::size_t accepted_moves = 0;  // over all proxies, before this turn
  std::size_t script_cursor = 0;   // the mover's next script entry
};

// Walks a chain of scripts. The cursor counts entries consumed across the
// whole chain; once it runs past them the first non-scripted policy takes
// over, or nullptr (pass forever). Sets `scripted` when an entry was used.
const PolicySpec* ResolveScript(const PolicySpec& policy, StepContext& context,
                                std::optional<Position>* scripted);

// One turn for `mover`: returns the move if the policy's proposal is a
// strict improvement, nothing when the proxy passes.
std::optional<MoveRecord> Step(const Scenario& scenario,
                               const DeclaredState& state, ProxyId mover,
                               const PolicySpec& policy, StepContext& context);

// Runs from the truthful state. `policies` holds one entry per proxy, or a
// single entry shared by all.
DynamicsTrace RunDynamics(const Scenario& scenario, const Scheduler& scheduler,
                          const std::vector<PolicySpec>& policies,
                          const RunOptions& options);

// Sets the final state, meta-move segments and the converged flag: true at
// a PNE, false on oscillation, otherwise whether the outcome has held still
// (within convergence_tolerance) over the last oscillation_window moves.
void FinalizeTrace(DynamicsTrace& trace, const DeclaredState& final_state,
                   const RunOptions& options);

// 2-cycle test over the last `window` records: outcomes repeat with period
// two, Δ has stopped moving and the outcome still flips.
bool DetectOscillation(const std::vector<MoveRecord>& moves,
                       std::size_t window, double tolerance);

std::vector<MetaMoveSegment> DetectMetaMoves(const std::vector<MoveRecord>& moves);

enum class MetaStepKind { kSegment, kNonWinnerMove, kWinnerMove };
enum class MetaStepLabel { kBig, kSmall };

struct MetaStep {
  MetaStepKind kind;
  std::size_t start;
  std::size_t length;
  double entry_delta;
  double exit_delta;
  MetaStepLabel label;
};

// Splits the records into meta-steps (segments, lone non-winner moves and
// stray winner moves) and labels each Big iff exit Δ < alpha * entry Δ.
std::vector<MetaStep> ClassifyMetaSteps(const std::vector<MoveRecord>& moves,
                                        double alpha);

// Every median and outcome stays in [med - Δ, med + Δ] of the truthful
// state; left-peaked movers never declare above med + Δ, right-peaked never
// below med - Δ.
bool CheckBoundInvariant(const DynamicsTrace& trace);

// The unweighted median never leaves med(p).
bool MonotoneMedianCheck(const DynamicsTrace& trace);

}  // namespace proxyline

#endif  // PROXYLINE_DYNAMICS_H_
