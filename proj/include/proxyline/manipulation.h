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

#ifndef PROXYLINE_MANIPULATION_H_
#define PROXYLINE_MANIPULATION_H_

#include <optional>
#include <vector>

#include "proxyline/core_model.h"
#include "proxyline/interval_set.h"

namespace proxyline {

// One piece of x -> wm(s_{-j}, x). On an identity piece the deviator wins
// at x itself; on a constant piece some other proxy wins at a fixed spot.
struct OutcomePiece {
  enum class Kind { kIdentity, kConstant };

  Interval domain;
  Kind kind;
  Position constant = 0.0;
  ProxyId constant_winner = 0;
};

// The outcome of every unilateral deviation of one proxy, derived from the
// nearest-to-median characterization of the winner. With the other voters
// sorted, the median after the deviation is clamp(x, a, b) for the two
// order statistics a <= b around the median rank, so x wins exactly when it
// is closer to that median than every other proxy (lower id on ties).
class DeviationMap {
 public:
  DeviationMap(const Scenario& scenario, const DeclaredState& state,
               ProxyId proxy);

  const std::vector<OutcomePiece>& pieces() const { return pieces_; }
  ProxyId proxy() const { return proxy_; }
  Position peak() const { return peak_; }
  Position declared() const { return declared_; }
  Position current_outcome() const { return current_outcome_; }

  // Median clamp bounds; infinite when the rank falls off either end.
  double median_low() const { return median_low_; }
  double median_high() const { return median_high_; }

  Position OutcomeAt(Position x) const;

  // {x : |outcome(x) - p_j| < |wm(s) - p_j|}, exact.
  IntervalSet BetterResponses() const;

  // inf over better responses of |outcome - p_j|; nullopt when there are
  // none. In discrete space only lattice points count.
  std::optional<double> BestAchievableDistance(const Space& space) const;

 private:
  // Outcomes strictly closer to the peak than the current one.
  Interval CloserWindow() const;

  std::vector<OutcomePiece> pieces_;
  ProxyId proxy_;
  Position peak_;
  Position declared_;
  Position current_outcome_;
  double median_low_;
  double median_high_;
};

// Direct route: recompute the weighted median with the deviation in place.
bool IsBetterResponse(const Scenario& scenario, const DeclaredState& state,
                      ProxyId proxy, Position candidate);

// Exact set of better responses (continuous reading; see
// ContainsAdmissible for the lattice restriction).
IntervalSet BetterResponseSet(const Scenario& scenario,
                              const DeclaredState& state, ProxyId proxy);

// True when the set holds a position the scenario's space admits.
bool ContainsAdmissible(const IntervalSet& set, const Space& space);

// Lattice best response: the admissible better response whose outcome is
// nearest the peak; ties prefer the smaller move, then the smaller position.
std::optional<Position> DiscreteBestResponse(const Scenario& scenario,
                                             const DeclaredState& state,
                                             ProxyId proxy);

struct ManipulationVerdict {
  bool manipulable = false;
  std::optional<ProxyId> witness_proxy;
  std::optional<Position> witness_position;
};

// A truthful profile is manipulable iff no peak sits at med(p) and peaks lie
// strictly on both sides of it. The witness is the lowest-id proxy across
// the median from the truthful winner, relocating to med(p).
ManipulationVerdict CharacterizeTruthfulManipulability(const Scenario& scenario);

// No proxy has an admissible better response.
bool IsPne(const Scenario& scenario, const DeclaredState& state);

struct FollowerManipulation {
  std::size_t follower;
  Position misreport;
  Position outcome_before;
  Position outcome_after;
};

// Every follower, every grid misreport over the default scan box, proxies
// truthful. Returns the first strict improvement in (follower, grid) order.
std::optional<FollowerManipulation> FollowerManipulationScan(
    const Scenario& scenario, double grid_step);

}  // namespace proxyline

#endif  // PROXYLINE_MANIPULATION_H_
