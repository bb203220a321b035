#pragma once

#include <vector>

#include "vmeas/rational.hpp"

namespace vmeas {

struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = false;

  static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b), true, true}; }
  static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }
  static Interval half_open(Rational a, Rational b) { return {std::move(a), std::move(b), true, false}; }
  static Interval point(const Rational& a) { return {a, a, true, true}; }

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Rational& x) const;
  Rational length() const { return empty() ? Rational(0) : Rational(hi - lo); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of rational intervals inside a closed ambient interval,
/// kept sorted, disjoint, and merged wherever the union is connected.
class IntervalUnion {
 public:
  /// Empty set in the ambient [0,1].
  IntervalUnion();
  IntervalUnion(Interval ambient, std::vector<Interval> pieces);

  static IntervalUnion empty_in(const Interval& ambient) { return IntervalUnion(ambient, {}); }
  static IntervalUnion full(const Interval& ambient) { return IntervalUnion(ambient, {ambient}); }

  const Interval& ambient() const { return ambient_; }
  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  bool contains(const Rational& x) const;
  /// Lebesgue measure.
  Rational length() const;

  IntervalUnion complement() const;
  IntervalUnion unite(const IntervalUnion& other) const;
  IntervalUnion intersect(const IntervalUnion& other) const;
  IntervalUnion minus(const IntervalUnion& other) const;
  IntervalUnion symmetric_difference(const IntervalUnion& other) const;
  bool subset_of(const IntervalUnion& other) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  void check_same_ambient(const IntervalUnion& other) const;
  static std::vector<Interval> normalize(const Interval& ambient, std::vector<Interval> pieces);

  Interval ambient_;
  std::vector<Interval> pieces_;
};

}  // namespace vmeas
