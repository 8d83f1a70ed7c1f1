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

#ifndef PROXYLINE_CORE_MODEL_H_
#define PROXYLINE_CORE_MODEL_H_

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Ground-truth model of a proxy game on the real line: proxies declare
// positions, followers delegate to the nearest declared proxy, and the
// weighted median of declared positions (weight = delegations + 1) wins.
//
// Proxy ids are 0-based indices inside the library. Reports and files use
// 1-based ids; the conversion happens at the I/O boundary only.

namespace proxyline {

using Position = double;
using ProxyId = std::size_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid scenario, policy or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class DelegationTie { kLowerProxyIndex };
enum class WeightedMedianTie { kPositionThenIndex };

struct TieBreakRule {
  DelegationTie delegation = DelegationTie::kLowerProxyIndex;
  WeightedMedianTie weighted_median = WeightedMedianTie::kPositionThenIndex;

  bool operator==(const TieBreakRule&) const = default;
};

// The set of admissible declarations: the whole line or a lattice step*Z.
class Space {
 public:
  enum class Kind { kContinuous, kDiscrete };

  static Space Continuous() { return Space(Kind::kContinuous, 1.0); }
  static Space Discrete(double step = 1.0);

  Kind kind() const { return kind_; }
  bool discrete() const { return kind_ == Kind::kDiscrete; }
  double step() const { return step_; }

  // True for every real in continuous space; lattice membership otherwise.
  bool Admits(Position x) const;

  bool operator==(const Space&) const = default;

 private:
  Space(Kind kind, double step) : kind_(kind), step_(step) {}

  Kind kind_;
  double step_;
};

// Immutable ground truth. Follower list may be empty; proxy list may not.
class Scenario {
 public:
  Scenario(std::vector<Position> proxy_peaks, std::vector<Position> followers,
           Space space = Space::Continuous(), TieBreakRule tie_break = {});

  const std::vector<Position>& proxy_peaks() const { return proxy_peaks_; }
  const std::vector<Position>& followers() const { return followers_; }
  const Space& space() const { return space_; }
  const TieBreakRule& tie_break() const { return tie_break_; }

  std::size_t num_proxies() const { return proxy_peaks_.size(); }
  std::size_t num_followers() const { return followers_.size(); }
  std::size_t num_voters() const { return num_proxies() + num_followers(); }

  Position peak(ProxyId j) const { return proxy_peaks_.at(j); }

  // Same proxies, different follower profile.
  Scenario WithFollowers(std::vector<Position> followers) const;

 private:
  std::vector<Position> proxy_peaks_;
  std::vector<Position> followers_;
  Space space_;
  TieBreakRule tie_break_;
};

// The vector s of declared proxy positions. Derived quantities (delegation,
// weights, winner) are computed on demand by the free functions below.
class DeclaredState {
 public:
  explicit DeclaredState(std::vector<Position> declared)
      : declared_(std::move(declared)) {}

  static DeclaredState Truthful(const Scenario& scenario) {
    return DeclaredState(scenario.proxy_peaks());
  }

  const std::vector<Position>& positions() const { return declared_; }
  Position operator[](ProxyId j) const { return declared_[j]; }
  std::size_t size() const { return declared_.size(); }

  // (s_{-j}, x)
  DeclaredState With(ProxyId j, Position x) const;

  bool operator==(const DeclaredState&) const = default;

 private:
  std::vector<Position> declared_;
};

struct Winner {
  ProxyId id;
  Position position;

  bool operator==(const Winner&) const = default;
};

struct WeightedMedianResult {
  std::size_t index;
  double value;
};

// Follower i -> proxy nearest to p_i; exact-midpoint ties go to the lower id.
std::vector<ProxyId> Delegate(const Scenario& scenario,
                              const DeclaredState& state);

// w_j = #followers delegating to j, plus one for the proxy itself.
std::vector<double> DelegationWeights(const Scenario& scenario,
                                      const DeclaredState& state);

// Weighted median with grouped equal values: the qualifying value has at
// most W/2 weight strictly below and at most W/2 strictly above. Among
// qualifying values the lowest one wins, then the lowest index holding it.
// Throws Error("empty electorate") on empty input.
WeightedMedianResult WeightedMedian(std::span<const double> values,
                                    std::span<const double> weights,
                                    const TieBreakRule& tie_break = {});

// Lower median of the multiset (declared positions, follower positions).
Position UnweightedMedian(const Scenario& scenario, const DeclaredState& state);

// Median of all true positions, med(p).
Position TrueMedian(const Scenario& scenario);

// Lower median of an arbitrary multiset; throws on empty input.
double LowerMedian(std::vector<double> values);

Winner WmWinner(const Scenario& scenario, const DeclaredState& state);

// argmin_j |s_j - med(s, p_N)|; ties go to the proxy the median voter would
// delegate to, i.e. the lower id. Always agrees with WmWinner.
ProxyId NearestProxyToMedian(const Scenario& scenario,
                             const DeclaredState& state);

}  // namespace proxyline

#endif  // PROXYLINE_CORE_MODEL_H_
