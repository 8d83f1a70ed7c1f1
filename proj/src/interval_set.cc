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

#include "proxyline/interval_set.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace proxyline {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower end a is at least as tight as b.
bool TighterLow(const Bound& a, const Bound& b) {
  if (a.value != b.value) return a.value > b.value;
  return !a.closed || b.closed;
}

bool TighterHigh(const Bound& a, const Bound& b) {
  if (a.value != b.value) return a.value < b.value;
  return !a.closed || b.closed;
}

double FirstLatticeIndex(const Bound& lo, double step) {
  if (!lo.finite()) return -kInf;
  double k = std::ceil(lo.value / step);
  if (k * step < lo.value) k += 1;
  if (k * step == lo.value && !lo.closed) k += 1;
  return k;
}

double LastLatticeIndex(const Bound& hi, double step) {
  if (!hi.finite()) return kInf;
  double k = std::floor(hi.value / step);
  if (k * step > hi.value) k -= 1;
  if (k * step == hi.value && !hi.closed) k -= 1;
  return k;
}

}  // namespace

Bound Bound::NegInf() { return {-kInf, false}; }
Bound Bound::PosInf() { return {kInf, false}; }
bool Bound::finite() const { return std::isfinite(value); }

Interval Interval::All() { return {Bound::NegInf(), Bound::PosInf()}; }

bool Interval::empty() const {
  if (lo.value > hi.value) return true;
  if (lo.value == hi.value) return !(lo.closed && hi.closed) || !lo.finite();
  return false;
}

bool Interval::Contains(double x) const {
  if (std::isnan(x)) return false;
  bool above = x > lo.value || (x == lo.value && lo.closed);
  bool below = x < hi.value || (x == hi.value && hi.closed);
  return above && below;
}

bool Interval::operator==(const Interval& other) const {
  if (empty() || other.empty()) return empty() && other.empty();
  return lo == other.lo && hi == other.hi;
}

Interval Interval::Intersect(const Interval& other) const {
  return {TighterLow(lo, other.lo) ? lo : other.lo,
          TighterHigh(hi, other.hi) ? hi : other.hi};
}

std::string Interval::ToString() const {
  if (empty()) return "{}";
  std::string out = lo.closed ? "[" : "(";
  out += FormatNumber(lo.value);
  out += ", ";
  out += FormatNumber(hi.value);
  out += hi.closed ? "]" : ")";
  return out;
}

IntervalSet::IntervalSet(std::initializer_list<Interval> parts)
    : parts_(parts) {
  Normalize();
}

IntervalSet::IntervalSet(std::vector<Interval> parts)
    : parts_(std::move(parts)) {
  Normalize();
}

void IntervalSet::Normalize() {
  std::erase_if(parts_, [](const Interval& i) { return i.empty(); });
  std::sort(parts_.begin(), parts_.end(),
            [](const Interval& a, const Interval& b) {
              if (a.lo.value != b.lo.value) return a.lo.value < b.lo.value;
              return a.lo.closed && !b.lo.closed;
            });
  std::vector<Interval> merged;
  for (const Interval& part : parts_) {
    if (!merged.empty()) {
      Interval& last = merged.back();
      bool overlaps =
          part.lo.value < last.hi.value ||
          (part.lo.value == last.hi.value && (part.lo.closed || last.hi.closed));
      if (overlaps) {
        if (part.hi.value > last.hi.value) {
          last.hi = part.hi;
        } else if (part.hi.value == last.hi.value) {
          last.hi.closed = last.hi.closed || part.hi.closed;
        }
        continue;
      }
    }
    merged.push_back(part);
  }
  parts_ = std::move(merged);
}

bool IntervalSet::Contains(double x) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [x](const Interval& i) { return i.Contains(x); });
}

IntervalSet IntervalSet::Union(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::Intersect(const Interval& other) const {
  std::vector<Interval> out;
  for (const Interval& part : parts_) out.push_back(part.Intersect(other));
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::Intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  for (const Interval& a : parts_) {
    for (const Interval& b : other.parts_) out.push_back(a.Intersect(b));
  }
  return IntervalSet(std::move(out));
}

std::optional<Bound> IntervalSet::Infimum() const {
  if (parts_.empty()) return std::nullopt;
  return parts_.front().lo;
}

std::optional<Bound> IntervalSet::Supremum() const {
  if (parts_.empty()) return std::nullopt;
  return parts_.back().hi;
}

std::optional<double> IntervalSet::ClosestPointOfClosure(double x) const {
  std::optional<double> best;
  double best_distance = kInf;
  for (const Interval& part : parts_) {
    double c = std::clamp(x, part.lo.value, part.hi.value);
    double d = std::abs(c - x);
    if (d < best_distance) {
      best = c;
      best_distance = d;
    }
  }
  return best;
}

bool IntervalSet::ContainsLatticePoint(double step) const {
  for (const Interval& part : parts_) {
    if (FirstLatticeIndex(part.lo, step) <= LastLatticeIndex(part.hi, step)) {
      return true;
    }
  }
  return false;
}

std::optional<double> NearestLatticePointIn(const Interval& interval,
                                            double target, double step) {
  double first = FirstLatticeIndex(interval.lo, step);
  double last = LastLatticeIndex(interval.hi, step);
  if (first > last) return std::nullopt;
  double down = std::clamp(std::floor(target / step), first, last);
  double up = std::clamp(std::ceil(target / step), first, last);
  double a = down * step;
  double b = up * step;
  return std::abs(b - target) < std::abs(a - target) ? b : a;
}

std::optional<double> IntervalSet::NearestLatticePoint(double target,
                                                       double step) const {
  std::optional<double> best;
  for (const Interval& part : parts_) {
    auto candidate = NearestLatticePointIn(part, target, step);
    if (!candidate) continue;
    if (!best || std::abs(*candidate - target) < std::abs(*best - target)) {
      best = candidate;
    }
  }
  return best;
}

std::string IntervalSet::ToString() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += " U ";
    out += parts_[i].ToString();
  }
  return out;
}

std::string FormatNumber(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  if (x == std::floor(x) && std::abs(x) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%.0f", x == 0 ? 0.0 : x);
    return buf;
  }
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

}  // namespace proxyline
