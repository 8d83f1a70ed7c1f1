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

#include <cmath>
#include <random>

#include "doctest.h"
#include "proxyline/manipulation.h"
#include "proxyline/random_scenarios.h"
#include "support/brute_force.h"
#include "support/scenarios.h"

namespace proxyline {
namespace {

// Outcome of proxy j declaring x, straight from the definition.
double BruteOutcome(const Scenario& s, const DeclaredState& state, ProxyId j, double x) {
  std::vector<double> declared = state.positions();
  declared[j] = x;
  return brute::Winner(declared, s.followers()).second;
}

TEST_CASE("better response checks from the worked examples") {
  Scenario s = fixtures::Example1();
  DeclaredState t = DeclaredState::Truthful(s);
  for (double eps : {0.25, 0.5, 1.0}) CHECK(IsBetterResponse(s, t, 1, 1 - eps));
  CHECK_FALSE(IsBetterResponse(s, t, 1, 1.5));
  CHECK(IsBetterResponse(s, t, 1, TrueMedian(s)));
  CHECK_FALSE(IsBetterResponse(s, t, 1, 1.0));  // tie at the midpoint goes to proxy 1
}

TEST_CASE("better response set of Example 2 agrees with a grid scan") {
  Scenario s = fixtures::Example1();
  DeclaredState t = DeclaredState::Truthful(s);
  IntervalSet br = BetterResponseSet(s, t, 1);
  CHECK(br.Contains(0.5));
  CHECK(br.ToString() == "(-1, 1)");
  for (int i = -500; i <= 500; ++i) {
    double x = i * 0.01;
    REQUIRE(br.Contains(x) == IsBetterResponse(s, t, 1, x));
  }
}

TEST_CASE("the appendix final state is a lattice equilibrium only") {
  DeclaredState final_state({4, 9, 8, 7, 5});
  CHECK(IsPne(fixtures::AppendixA(), final_state));
  Scenario continuous = fixtures::AppendixA(Space::Continuous());
  CHECK_FALSE(IsPne(continuous, final_state));
  // Proxy 5 can sit within 1 of the median 5 on its own side, e.g. 5.5.
  DeclaredState s5({4, 9, 8, 7, 10});
  IntervalSet br = BetterResponseSet(continuous, s5, 4);
  CHECK_FALSE(br.empty());
  CHECK(br.Contains(5.5));
  CHECK(IsBetterResponse(continuous, s5, 4, 5.5));
  // At the final state the winner 5 can move half a unit towards 12.
  CHECK(BetterResponseSet(continuous, final_state, 4).Contains(5.5));
}

TEST_CASE("deviation map matches the definition everywhere on a fine grid") {
  std::mt19937_64 rng(3);
  RandomScenarioOptions options;
  options.max_proxies = 5;
  options.max_followers = 6;
  options.lower = -8;
  options.upper = 8;
  options.step = 0.5;
  std::uniform_int_distribution<int> shift(-16, 16);
  for (int trial = 0; trial < 300; ++trial) {
    Scenario s = RandomScenario(rng, options);
    std::vector<double> declared = s.proxy_peaks();
    if (trial % 2) {
      for (double& x : declared) x = shift(rng) * 0.5;
    }
    DeclaredState state(declared);
    for (ProxyId j = 0; j < s.num_proxies(); ++j) {
      DeviationMap map(s, state, j);
      IntervalSet br = map.BetterResponses();
      for (int i = -48; i <= 48; ++i) {
        double x = i * 0.25;
        REQUIRE(map.OutcomeAt(x) == BruteOutcome(s, state, j, x));
        REQUIRE(br.Contains(x) == IsBetterResponse(s, state, j, x));
      }
    }
  }
}

std::vector<Interval> Points(const std::vector<double>& xs) {
  std::vector<Interval> out;
  for (double x : xs) out.push_back(Interval::Point(x));
  return out;
}

TEST_CASE("sampled members of the better response set are better responses") {
  std::mt19937_64 rng(4);
  RandomScenarioOptions options;
  options.real_positions = true;
  for (int trial = 0; trial < 300; ++trial) {
    Scenario s = RandomScenario(rng, options);
    DeclaredState t = DeclaredState::Truthful(s);
    for (ProxyId j = 0; j < s.num_proxies(); ++j) {
      IntervalSet br = BetterResponseSet(s, t, j);
      for (const Interval& part : br.parts()) {
        double lo = std::max(part.lo.value, -1e3);
        double hi = std::min(part.hi.value, 1e3);
        for (double u : {0.01, 0.3, 0.5, 0.77, 0.99}) {
          double x = lo + u * (hi - lo);
          if (!part.Contains(x)) continue;
          INFO("x=", x, " br=", br.ToString(), " j=", j, " peaks=",
               IntervalSet(Points(s.proxy_peaks())).ToString(), " followers=",
               IntervalSet(Points(s.followers())).ToString());
          REQUIRE(IsBetterResponse(s, t, j, x));
        }
        if (part.lo.closed) REQUIRE(IsBetterResponse(s, t, j, part.lo.value));
        if (part.hi.closed) REQUIRE(IsBetterResponse(s, t, j, part.hi.value));
      }
    }
  }
}

TEST_CASE("truthful manipulability") {
  ManipulationVerdict v = CharacterizeTruthfulManipulability(fixtures::Example1());
  CHECK(v.manipulable);
  CHECK(*v.witness_proxy == 1);
  CHECK(*v.witness_position == 0);

  CHECK_FALSE(CharacterizeTruthfulManipulability(fixtures::Fig3()).manipulable);
  ManipulationVerdict at_median =
      CharacterizeTruthfulManipulability(Scenario({-3, 0, 4}, {-1, 2}));
  CHECK_FALSE(at_median.manipulable);
  CHECK_FALSE(at_median.witness_proxy.has_value());
}

TEST_CASE("witnesses are better responses") {
  std::mt19937_64 rng(8);
  RandomScenarioOptions options;
  int manipulable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Scenario s = RandomScenario(rng, options);
    ManipulationVerdict v = CharacterizeTruthfulManipulability(s);
    REQUIRE(v.manipulable == v.witness_proxy.has_value());
    if (!v.manipulable) continue;
    ++manipulable;
    REQUIRE(IsBetterResponse(s, DeclaredState::Truthful(s), *v.witness_proxy,
                             *v.witness_position));
  }
  CHECK(manipulable > 50);
}

TEST_CASE("equilibrium predicate") {
  CHECK(IsPne(Scenario({3}, {0, 9}), DeclaredState({3})));
  CHECK_FALSE(IsPne(fixtures::Example1(), DeclaredState::Truthful(fixtures::Example1())));
  CHECK(IsPne(fixtures::Fig3(), DeclaredState::Truthful(fixtures::Fig3())));
}

TEST_CASE("lattice best response") {
  Scenario a = fixtures::AppendixA();
  CHECK(*DiscreteBestResponse(a, DeclaredState::Truthful(a), 4) == 10);
  for (ProxyId j = 0; j < 4; ++j) {
    CHECK_FALSE(DiscreteBestResponse(a, DeclaredState::Truthful(a), j).has_value());
  }
  CHECK_THROWS_AS(DiscreteBestResponse(fixtures::Example1(),
                                       DeclaredState::Truthful(fixtures::Example1()), 1),
                  ConfigError);
}

TEST_CASE("lattice best response is optimal among lattice better responses") {
  std::mt19937_64 rng(9);
  RandomScenarioOptions options;
  options.discrete_space = true;
  for (int trial = 0; trial < 300; ++trial) {
    Scenario s = RandomScenario(rng, options);
    DeclaredState t = DeclaredState::Truthful(s);
    for (ProxyId j = 0; j < s.num_proxies(); ++j) {
      auto best = DiscreteBestResponse(s, t, j);
      double best_grid = INFINITY;
      for (int x = -40; x <= 40; ++x) {
        if (IsBetterResponse(s, t, j, x)) {
          best_grid = std::min(best_grid, std::abs(BruteOutcome(s, t, j, x) - s.peak(j)));
        }
      }
      REQUIRE(best.has_value() == std::isfinite(best_grid));
      if (best) {
        REQUIRE(IsBetterResponse(s, t, j, *best));
        REQUIRE(std::abs(BruteOutcome(s, t, j, *best) - s.peak(j)) == best_grid);
      }
    }
  }
}

TEST_CASE("follower scans find nothing") {
  CHECK_FALSE(FollowerManipulationScan(fixtures::Example1(), 0.1).has_value());
  CHECK_FALSE(FollowerManipulationScan(fixtures::AppendixB(), 1).has_value());
  CHECK_FALSE(FollowerManipulationScan(Scenario({1, 2}, {}), 0.1).has_value());
}

}  // namespace
}  // namespace proxyline
