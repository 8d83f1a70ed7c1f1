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

#ifndef PROXYLINE_PARTIAL_INFO_H_
#define PROXYLINE_PARTIAL_INFO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxyline/core_model.h"
#include "proxyline/dynamics.h"
#include "proxyline/interval_set.h"

// Proxies that see only declared positions and the winner. Everything
// here is a function of the observation history; the follower profile is
// consulted by Observe and by the samplers, never by the belief updates.

namespace proxyline {

class InconsistentObservation : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  BudgetExhausted() : Error("no consistent profile found in budget") {}
};

struct ObservedState {
  DeclaredState declared{{}};
  ProxyId winner = 0;
  Position winner_position = 0.0;

  bool operator==(const ObservedState&) const = default;
};

// I^t: where the median of all voters can still be.
struct MedianInterval {
  Bound lower = Bound::NegInf();
  Bound upper = Bound::PosInf();

  Interval AsInterval() const { return {lower, upper}; }
  bool Contains(double x) const { return AsInterval().Contains(x); }
  bool empty() const { return AsInterval().empty(); }
  std::string ToString() const { return AsInterval().ToString(); }

  bool operator==(const MedianInterval&) const = default;
};

struct BeliefState {
  ObservedState observed;
  MedianInterval interval;
  std::optional<Position> left_neighbor;   // s_l: nearest declared left of wm
  std::optional<Position> right_neighbor;  // s_r

  static BeliefState Make(ObservedState observed, MedianInterval interval);

  Position wm() const { return observed.winner_position; }
  double ell() const { return interval.lower.value; }
  double r() const { return interval.upper.value; }
};

ObservedState Observe(const Scenario& scenario, const DeclaredState& state);

// Open interval between the midpoints to the winner's nearest neighbours.
MedianInterval InitMedianInterval(const ObservedState& observed);

// Non-winner arrivals and winner changes intersect with the midpoint
// interval around the current winner. A winner that keeps winning after
// moving towards I contributes the half-line on its new side; moving away
// from I it only contributes the midpoint interval.
MedianInterval UpdateMedianInterval(const BeliefState& belief,
                                    const MoveRecord& move,
                                    const ObservedState& observed_after);

// Strong-monotone dominating manipulations of a proxy that is not the
// current winner, restricted to positions whose win would help it.
IntervalSet DominatingSetNonwinner(const BeliefState& belief, ProxyId proxy,
                                   Position peak);

// Same for the current winner: nonempty only when it sits strictly between
// its peak and I, with room before the far neighbour could take over.
IntervalSet DominatingSetWinner(const BeliefState& belief, Position peak);

// Dispatches on whether `proxy` is the observed winner.
IntervalSet DominatingSet(const BeliefState& belief, ProxyId proxy,
                          Position peak);

// Worst-case regret of declaring `candidate`, over medians in I, for a
// non-winner on the side of its peak.
double MaxRegret(const BeliefState& belief, ProxyId proxy, Position peak,
                 Position candidate);

struct MinimaxChoice {
  IntervalSet argmin;
  Position chosen;
  double regret;
};

MinimaxChoice MinimaxRegretStrategy(const BeliefState& belief, ProxyId proxy,
                                    Position peak);

struct SamplingOptions {
  std::uint64_t seed = 1;
  std::size_t budget = 100000;  // rejected draws allowed per profile
  // Sampling box; defaults to [min s - span, max s + span].
  std::optional<double> box_lower;
  std::optional<double> box_upper;
  // Also require the profile's median to fall in this interval.
  const MedianInterval* median_filter = nullptr;
};

// Uniform follower draws until the observed winner is reproduced.
std::vector<Position> SampleConsistentProfile(const ObservedState& observed,
                                              std::size_t n,
                                              const SamplingOptions& options);

// Draws `count` profiles from one generator stream.
std::vector<std::vector<Position>> SampleConsistentProfiles(
    const ObservedState& observed, std::size_t n, std::size_t count,
    const SamplingOptions& options);

struct PartialInfoTrace {
  DynamicsTrace dynamics;
  // intervals[0] = I^0, intervals[k] after moves[k-1].
  std::vector<MedianInterval> intervals;
};

// Dynamics in which each mover sees only its belief. Accepted moves are the
// minimax-regret choice, or any other proposal inside the mover's dominating
// set. Monotone policies choose inside the dominating set.
PartialInfoTrace RunPartialInfoDynamics(const Scenario& scenario,
                                        const Scheduler& scheduler,
                                        const std::vector<PolicySpec>& policies,
                                        const RunOptions& options);

}  // namespace proxyline

#endif  // PROXYLINE_PARTIAL_INFO_H_
