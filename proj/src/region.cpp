#include "probinfo/region.hpp"

#include <algorithm>

namespace probinfo {

bool Interval::empty() const {
  if (!lo || !hi) return false;
  if (*lo < *hi) return false;
  return !(*lo == *hi && lo_closed && hi_closed);
}

bool Interval::contains(const Rational& x) const {
  if (lo && (x < *lo || (x == *lo && !lo_closed))) return false;
  if (hi && (x > *hi || (x == *hi && !hi_closed))) return false;
  return true;
}

namespace {

// Lower endpoints: -inf first, then by value with closed before open.
bool lo_before(const Interval& a, const Interval& b) {
  if (!a.lo) return b.lo.has_value();
  if (!b.lo) return false;
  if (*a.lo != *b.lo) return *a.lo < *b.lo;
  return a.lo_closed && !b.lo_closed;
}

// True when a's upper end reaches b's lower end with no gap.
bool touches(const Interval& a, const Interval& b) {
  if (!a.hi || !b.lo) return true;
  if (*a.hi != *b.lo) return *a.hi > *b.lo;
  return a.hi_closed || b.lo_closed;
}

// Take the larger upper endpoint.
void extend_hi(Interval& a, const Interval& b) {
  if (!a.hi) return;
  if (!b.hi) {
    a.hi.reset();
    a.hi_closed = false;
    return;
  }
  if (*b.hi > *a.hi) {
    a.hi = b.hi;
    a.hi_closed = b.hi_closed;
  } else if (*b.hi == *a.hi) {
    a.hi_closed = a.hi_closed || b.hi_closed;
  }
}

}  // namespace

RegionSet::RegionSet(std::vector<Interval> parts) {
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const Interval& i) { return i.empty(); }),
              parts.end());
  for (auto& i : parts) {
    if (!i.lo) i.lo_closed = false;
    if (!i.hi) i.hi_closed = false;
  }
  std::sort(parts.begin(), parts.end(), lo_before);
  for (auto& i : parts) {
    if (!parts_.empty() && touches(parts_.back(), i)) {
      extend_hi(parts_.back(), i);
    } else {
      parts_.push_back(std::move(i));
    }
  }
}

bool RegionSet::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& i) { return i.contains(x); });
}

RegionSet RegionSet::complement() const {
  std::vector<Interval> out;
  Interval gap = Interval::line();
  for (const auto& i : parts_) {
    if (i.lo) {
      gap.hi = i.lo;
      gap.hi_closed = !i.lo_closed;
      out.push_back(gap);
    }
    if (!i.hi) return RegionSet(std::move(out));
    gap = Interval{i.hi, std::nullopt, !i.hi_closed, false};
  }
  out.push_back(gap);
  return RegionSet(std::move(out));
}

RegionSet RegionSet::intersect(const RegionSet& other) const {
  std::vector<Interval> out;
  for (const auto& a : parts_) {
    for (const auto& b : other.parts_) {
      Interval c;
      if (!a.lo || (b.lo && (*b.lo > *a.lo || (*b.lo == *a.lo && !b.lo_closed)))) {
        c.lo = b.lo;
        c.lo_closed = b.lo_closed;
      } else {
        c.lo = a.lo;
        c.lo_closed = a.lo_closed;
      }
      if (!a.hi || (b.hi && (*b.hi < *a.hi || (*b.hi == *a.hi && !b.hi_closed)))) {
        c.hi = b.hi;
        c.hi_closed = b.hi_closed;
      } else {
        c.hi = a.hi;
        c.hi_closed = a.hi_closed;
      }
      out.push_back(std::move(c));
    }
  }
  return RegionSet(std::move(out));
}

RegionSet RegionSet::unite(const RegionSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return RegionSet(std::move(all));
}

RegionSet RegionSet::affine(const Rational& a, const Rational& s) const {
  std::vector<Interval> out;
  for (auto i : parts_) {
    if (i.lo) i.lo = Rational(a + s * *i.lo);
    if (i.hi) i.hi = Rational(a + s * *i.hi);
    out.push_back(std::move(i));
  }
  return RegionSet(std::move(out));
}

std::string RegionSet::str() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (const auto& i : parts_) {
    if (!s.empty()) s += " U ";
    if (i.lo && i.hi && *i.lo == *i.hi) {
      s += "{" + to_string(*i.lo) + "}";
      continue;
    }
    s += i.lo_closed ? "[" : "(";
    s += i.lo ? to_string(*i.lo) : "-inf";
    s += ", ";
    s += i.hi ? to_string(*i.hi) : "inf";
    s += i.hi_closed ? "]" : ")";
  }
  return s;
}

}  // namespace probinfo
