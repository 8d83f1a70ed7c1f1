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

#include "proxyline/manipulation.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "proxyline/oracle.h"

namespace proxyline {
namespace {

struct NearestOther {
  double distance = kInfinity;
  ProxyId id = 0;
  Position position = 0.0;
};

NearestOther FindNearestOther(const DeclaredState& state, ProxyId proxy,
                              double target) {
  NearestOther best;
  for (ProxyId k = 0; k < state.size(); ++k) {
    if (k == proxy) continue;
    double d = std::abs(state[k] - target);
    if (d < best.distance) best = {d, k, state[k]};
  }
  return best;
}

OutcomePiece Identity(Interval domain) {
  return {domain, OutcomePiece::Kind::kIdentity, 0.0, 0};
}

OutcomePiece Constant(Interval domain, const NearestOther& q) {
  return {domain, OutcomePiece::Kind::kConstant, q.position, q.id};
}

// Pieces for deviations that leave the median pinned at `anchor`, i.e.
// x strictly beyond it. `sign` is -1 for the left side, +1 for the right.
void AddOuterPieces(std::vector<OutcomePiece>& out, const DeclaredState& state,
                    ProxyId proxy, double anchor, int sign) {
  NearestOther q = FindNearestOther(state, proxy, anchor);
  auto side = [&](double near, bool near_closed) {
    // Interval from `near` outward to infinity.
    return sign < 0 ? Interval{Bound::NegInf(), {near, near_closed}}
                    : Interval{{near, near_closed}, Bound::PosInf()};
  };
  auto between = [&](double e) {
    return sign < 0 ? Interval::Open(e, anchor) : Interval::Open(anchor, e);
  };
  if (!std::isfinite(q.distance)) {
    out.push_back(Identity(side(anchor, false)));
    return;
  }
  if (q.distance == 0.0) {
    out.push_back(Constant(side(anchor, false), q));
    return;
  }
  // Exact when q lies on the outer side.
  double e = sign * (q.position - anchor) > 0 ? q.position
                                              : 2 * anchor - q.position;
  out.push_back(Constant(side(e, false), q));
  if (proxy < q.id) {
    out.push_back(Identity(Interval::Point(e)));
  } else {
    out.push_back(Constant(Interval::Point(e), q));
  }
  out.push_back(Identity(between(e)));
}

// Lattice points of `part` nearest `target` from below and from above.
std::vector<double> LatticeNeighbours(const Interval& part, double target,
                                      double step) {
  std::vector<double> out;
  Interval down = part.Intersect({Bound::NegInf(), Bound::Closed(target)});
  Interval up = part.Intersect({Bound::Closed(target), Bound::PosInf()});
  if (auto x = NearestLatticePointIn(down, target, step)) out.push_back(*x);
  if (auto x = NearestLatticePointIn(up, target, step)) out.push_back(*x);
  return out;
}

}  // namespace

DeviationMap::DeviationMap(const Scenario& scenario, const DeclaredState& state,
                           ProxyId proxy)
    : proxy_(proxy),
      peak_(scenario.peak(proxy)),
      declared_(state[proxy]),
      current_outcome_(WmWinner(scenario, state).position) {
  std::vector<double> others = scenario.followers();
  for (ProxyId k = 0; k < state.size(); ++k) {
    if (k != proxy) others.push_back(state[k]);
  }
  std::sort(others.begin(), others.end());
  const std::size_t rank = (scenario.num_voters() + 1) / 2;
  median_low_ = rank >= 2 ? others[rank - 2] : -kInfinity;
  median_high_ = rank - 1 < others.size() ? others[rank - 1] : kInfinity;

  if (std::isfinite(median_low_)) {
    AddOuterPieces(pieces_, state, proxy, median_low_, -1);
  }
  Interval middle{std::isfinite(median_low_) ? Bound::Closed(median_low_)
                                             : Bound::NegInf(),
                  std::isfinite(median_high_) ? Bound::Closed(median_high_)
                                              : Bound::PosInf()};
  pieces_.push_back(Identity(middle));
  if (std::isfinite(median_high_)) {
    AddOuterPieces(pieces_, state, proxy, median_high_, +1);
  }
  std::erase_if(pieces_, [](const OutcomePiece& p) { return p.domain.empty(); });
  std::sort(pieces_.begin(), pieces_.end(),
            [](const OutcomePiece& a, const OutcomePiece& b) {
              return a.domain.lo.value < b.domain.lo.value ||
                     (a.domain.lo.value == b.domain.lo.value &&
                      a.domain.lo.closed && !b.domain.lo.closed);
            });
}

Position DeviationMap::OutcomeAt(Position x) const {
  for (const OutcomePiece& piece : pieces_) {
    if (!piece.domain.Contains(x)) continue;
    return piece.kind == OutcomePiece::Kind::kIdentity ? x : piece.constant;
  }
  throw Error("deviation map does not cover the queried position");
}

Interval DeviationMap::CloserWindow() const {
  const double mirror = 2 * peak_ - current_outcome_;
  return Interval::Open(std::min(current_outcome_, mirror),
                        std::max(current_outcome_, mirror));
}

IntervalSet DeviationMap::BetterResponses() const {
  const double c = std::abs(current_outcome_ - peak_);
  std::vector<Interval> parts;
  for (const OutcomePiece& piece : pieces_) {
    if (piece.kind == OutcomePiece::Kind::kIdentity) {
      parts.push_back(piece.domain.Intersect(CloserWindow()));
    } else if (std::abs(piece.constant - peak_) < c) {
      parts.push_back(piece.domain);
    }
  }
  return IntervalSet(std::move(parts));
}

std::optional<double> DeviationMap::BestAchievableDistance(
    const Space& space) const {
  const double c = std::abs(current_outcome_ - peak_);
  std::optional<double> best;
  auto offer = [&best](double d) {
    if (!best || d < *best) best = d;
  };
  for (const OutcomePiece& piece : pieces_) {
    if (piece.kind == OutcomePiece::Kind::kIdentity) {
      Interval part = piece.domain.Intersect(CloserWindow());
      if (part.empty()) continue;
      if (space.discrete()) {
        if (auto x = NearestLatticePointIn(part, peak_, space.step())) {
          offer(std::abs(*x - peak_));
        }
      } else {
        offer(std::abs(std::clamp(peak_, part.lo.value, part.hi.value) - peak_));
      }
    } else if (std::abs(piece.constant - peak_) < c) {
      if (space.discrete() &&
          !IntervalSet{piece.domain}.ContainsLatticePoint(space.step())) {
        continue;
      }
      offer(std::abs(piece.constant - peak_));
    }
  }
  return best;
}

bool IsBetterResponse(const Scenario& scenario, const DeclaredState& state,
                      ProxyId proxy, Position candidate) {
  if (!std::isfinite(candidate)) return false;
  const Position p = scenario.peak(proxy);
  Position before = WmWinner(scenario, state).position;
  Position after = WmWinner(scenario, state.With(proxy, candidate)).position;
  return std::abs(after - p) < std::abs(before - p);
}

IntervalSet BetterResponseSet(const Scenario& scenario,
                              const DeclaredState& state, ProxyId proxy) {
  return DeviationMap(scenario, state, proxy).BetterResponses();
}

bool ContainsAdmissible(const IntervalSet& set, const Space& space) {
  if (set.empty()) return false;
  return !space.discrete() || set.ContainsLatticePoint(space.step());
}

std::optional<Position> DiscreteBestResponse(const Scenario& scenario,
                                             const DeclaredState& state,
                                             ProxyId proxy) {
  const Space& space = scenario.space();
  if (!space.discrete()) {
    throw ConfigError("discrete best response needs a discrete space");
  }
  DeviationMap map(scenario, state, proxy);
  const double p = map.peak();
  const double s = map.declared();
  const double c = std::abs(map.current_outcome() - p);

  std::optional<std::tuple<double, double, double>> best;
  auto offer = [&](double x, double outcome) {
    std::tuple<double, double, double> key{std::abs(outcome - p),
                                           std::abs(x - s), x};
    if (!best || key < *best) best = key;
  };
  for (const OutcomePiece& piece : map.pieces()) {
    if (piece.kind == OutcomePiece::Kind::kIdentity) {
      Interval part = piece.domain.Intersect(Interval::Open(p - c, p + c));
      if (part.empty()) continue;
      for (double x : LatticeNeighbours(part, p, space.step())) offer(x, x);
    } else if (std::abs(piece.constant - p) < c) {
      for (double x : LatticeNeighbours(piece.domain, s, space.step())) {
        offer(x, piece.constant);
      }
    }
  }
  if (!best) return std::nullopt;
  return std::get<2>(*best);
}

ManipulationVerdict CharacterizeTruthfulManipulability(const Scenario& scenario) {
  const Position med = TrueMedian(scenario);
  bool left = false;
  bool right = false;
  for (Position p : scenario.proxy_peaks()) {
    if (p == med) return {};
    (p < med ? left : right) = true;
  }
  if (!left || !right) return {};

  Winner winner = WmWinner(scenario, DeclaredState::Truthful(scenario));
  const bool winner_left = winner.position < med;
  for (ProxyId j = 0; j < scenario.num_proxies(); ++j) {
    if ((scenario.peak(j) > med) == winner_left) {
      return {true, j, med};
    }
  }
  return {};  // unreachable: both sides are populated
}

bool IsPne(const Scenario& scenario, const DeclaredState& state) {
  for (ProxyId j = 0; j < state.size(); ++j) {
    if (ContainsAdmissible(BetterResponseSet(scenario, state, j),
                           scenario.space())) {
      return false;
    }
  }
  return true;
}

std::optional<FollowerManipulation> FollowerManipulationScan(
    const Scenario& scenario, double grid_step) {
  if (!(grid_step > 0.0)) throw ConfigError("grid_step must be positive");
  const GridSpec grid = DefaultScanGrid(scenario, grid_step);
  grid.Validate();
  const DeclaredState truthful = DeclaredState::Truthful(scenario);
  const Scenario base(scenario.proxy_peaks(), scenario.followers(),
                      Space::Continuous(), scenario.tie_break());
  const Position before = WmWinner(base, truthful).position;

  std::vector<Position> followers = scenario.followers();
  for (std::size_t i = 0; i < followers.size(); ++i) {
    const Position own = scenario.followers()[i];
    for (std::size_t g = 0; g < grid.size(); ++g) {
      followers[i] = grid.at(g);
      Position after = WmWinner(base.WithFollowers(followers), truthful).position;
      if (std::abs(after - own) < std::abs(before - own)) {
        return FollowerManipulation{i, grid.at(g), before, after};
      }
    }
    followers[i] = own;
  }
  return std::nullopt;
}

}  // namespace proxyline
