#pragma once

#include <optional>
#include <string>
#include <vector>

#include "probinfo/rational.hpp"

namespace probinfo {

/// Interval with rational or infinite endpoints; nullopt means infinite.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval open(const Rational& a, const Rational& b) { return {a, b, false, false}; }
  static Interval closed(const Rational& a, const Rational& b) { return {a, b, true, true}; }
  static Interval line() { return {std::nullopt, std::nullopt, false, false}; }

  bool empty() const;
  bool contains(const Rational& x) const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint intervals, kept sorted and merged.
class RegionSet {
 public:
  RegionSet() = default;
  explicit RegionSet(std::vector<Interval> parts);
  explicit RegionSet(Interval i) : RegionSet(std::vector<Interval>{std::move(i)}) {}

  static RegionSet line() { return RegionSet(Interval::line()); }

  const std::vector<Interval>& intervals() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  bool contains(const Rational& x) const;

  RegionSet complement() const;
  RegionSet intersect(const RegionSet& other) const;
  RegionSet unite(const RegionSet& other) const;
  RegionSet minus(const RegionSet& other) const { return intersect(other.complement()); }
  bool disjoint(const RegionSet& other) const { return intersect(other).empty(); }
  bool subset_of(const RegionSet& other) const { return minus(other).empty(); }

  /// Same region under t -> a + s t (s > 0).
  RegionSet affine(const Rational& a, const Rational& s) const;

  /// e.g. "(-inf, 0] U [1, inf)" or "{}"
  std::string str() const;

  friend bool operator==(const RegionSet&, const RegionSet&) = default;

 private:
  std::vector<Interval> parts_;
};

}  // namespace probinfo
