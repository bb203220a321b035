#include "vmeas/interval_union.hpp"

#include <algorithm>
#include <stdexcept>

namespace vmeas {

bool Interval::contains(const Rational& x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

namespace {

Interval meet(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

// Lower endpoints ordered left to right, closed before open at a tie.
bool starts_before(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

}  // namespace

IntervalUnion::IntervalUnion() : ambient_(Interval::closed(0, 1)) {}

IntervalUnion::IntervalUnion(Interval ambient, std::vector<Interval> pieces) : ambient_(std::move(ambient)) {
  if (ambient_.lo >= ambient_.hi || !ambient_.lo_closed || !ambient_.hi_closed)
    throw std::invalid_argument("ambient must be a closed interval of positive length");
  for (const auto& p : pieces) {
    if (p.empty()) continue;
    if (p.lo < ambient_.lo || p.hi > ambient_.hi)
      throw std::domain_error("interval [" + to_string(p.lo) + "," + to_string(p.hi) + "] leaves the ambient");
  }
  pieces_ = normalize(ambient_, std::move(pieces));
}

std::vector<Interval> IntervalUnion::normalize(const Interval&, std::vector<Interval> pieces) {
  std::erase_if(pieces, [](const Interval& p) { return p.empty(); });
  std::sort(pieces.begin(), pieces.end(), starts_before);
  std::vector<Interval> out;
  for (auto& p : pieces) {
    if (!out.empty()) {
      Interval& cur = out.back();
      bool connected = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
      if (connected) {
        if (p.hi > cur.hi) {
          cur.hi = p.hi;
          cur.hi_closed = p.hi_closed;
        } else if (p.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

void IntervalUnion::check_same_ambient(const IntervalUnion& other) const {
  if (!(ambient_ == other.ambient_)) throw std::domain_error("interval unions live in different ambients");
}

bool IntervalUnion::contains(const Rational& x) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& p) { return p.contains(x); });
}

Rational IntervalUnion::length() const {
  Rational s = 0;
  for (const auto& p : pieces_) s += p.length();
  return s;
}

IntervalUnion IntervalUnion::complement() const {
  std::vector<Interval> gaps;
  Rational cursor = ambient_.lo;
  bool cursor_closed = true;
  for (const auto& p : pieces_) {
    gaps.push_back(Interval{cursor, p.lo, cursor_closed, !p.lo_closed});
    cursor = p.hi;
    cursor_closed = !p.hi_closed;
  }
  gaps.push_back(Interval{cursor, ambient_.hi, cursor_closed, true});
  return IntervalUnion(ambient_, std::move(gaps));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  check_same_ambient(other);
  std::vector<Interval> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return IntervalUnion(ambient_, std::move(all));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  check_same_ambient(other);
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    Interval m = meet(pieces_[i], other.pieces_[j]);
    if (!m.empty()) out.push_back(m);
    const Interval& a = pieces_[i];
    const Interval& b = other.pieces_[j];
    // Advance whichever piece ends first; at a tie the open end goes first.
    if (a.hi < b.hi || (a.hi == b.hi && !a.hi_closed))
      ++i;
    else
      ++j;
  }
  return IntervalUnion(ambient_, std::move(out));
}

IntervalUnion IntervalUnion::minus(const IntervalUnion& other) const { return intersect(other.complement()); }

IntervalUnion IntervalUnion::symmetric_difference(const IntervalUnion& other) const {
  return minus(other).unite(other.minus(*this));
}

bool IntervalUnion::subset_of(const IntervalUnion& other) const { return minus(other).empty(); }

}  // namespace vmeas
