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

#ifndef PROXYLINE_INTERVAL_SET_H_
#define PROXYLINE_INTERVAL_SET_H_

#include <optional>
#include <string>
#include <vector>

namespace proxyline {

// One end of an interval. Infinite ends are always open.
struct Bound {
  double value;
  bool closed;

  static Bound Open(double v) { return {v, false}; }
  static Bound Closed(double v) { return {v, true}; }
  static Bound NegInf();
  static Bound PosInf();

  bool finite() const;
  bool operator==(const Bound&) const = default;
};

struct Interval {
  Bound lo;
  Bound hi;

  static Interval Open(double a, double b) { return {Bound::Open(a), Bound::Open(b)}; }
  static Interval Closed(double a, double b) { return {Bound::Closed(a), Bound::Closed(b)}; }
  static Interval LeftOpen(double a, double b) { return {Bound::Open(a), Bound::Closed(b)}; }
  static Interval RightOpen(double a, double b) { return {Bound::Closed(a), Bound::Open(b)}; }
  static Interval Point(double a) { return Closed(a, a); }
  static Interval All();

  bool empty() const;
  bool Contains(double x) const;
  // Both sets empty, or same ends and flags.
  bool operator==(const Interval&) const;

  Interval Intersect(const Interval& other) const;
  // lo/hi may be infinite; flags reported as "(" "[" etc.
  std::string ToString() const;
};

// Finite union of disjoint intervals, kept sorted and normalized: empty
// pieces dropped, overlapping or touching pieces (shared closed end) merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> parts);
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet Empty() { return IntervalSet(); }
  static IntervalSet All() { return IntervalSet{Interval::All()}; }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool Contains(double x) const;

  IntervalSet Union(const IntervalSet& other) const;
  IntervalSet Intersect(const Interval& other) const;
  IntervalSet Intersect(const IntervalSet& other) const;

  // inf / sup of the set; nullopt when empty.
  std::optional<Bound> Infimum() const;
  std::optional<Bound> Supremum() const;

  // Point of the closure nearest to x (x itself when inside).
  std::optional<double> ClosestPointOfClosure(double x) const;

  // Lattice points k*step inside the set.
  bool ContainsLatticePoint(double step) const;
  std::optional<double> NearestLatticePoint(double target, double step) const;

  bool operator==(const IntervalSet& other) const { return parts_ == other.parts_; }

  std::string ToString() const;

 private:
  void Normalize();

  std::vector<Interval> parts_;
};

// Nearest lattice point k*step within one interval; ties go down.
std::optional<double> NearestLatticePointIn(const Interval& interval,
                                            double target, double step);

std::string FormatNumber(double x);

}  // namespace proxyline

#endif  // PROXYLINE_INTERVAL_SET_H_
