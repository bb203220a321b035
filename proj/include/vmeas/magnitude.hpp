#pragma once

#include <string>

#include "vmeas/rational.hpp"

namespace vmeas {

enum class Norm { L1, L2 };

Norm parse_norm(std::string_view name);
std::string_view norm_name(Norm norm);

/// A nonnegative real kept exact whenever it has the form sqrt(s), s rational.
///
/// Rationals are the special case s = q^2. Sums of two square roots stay exact
/// when the radicands differ by a rational square factor; any other sum falls
/// back to a 100-digit `Real`.
class Magnitude {
 public:
  Magnitude() : exact_(true), squared_(0), approx_(0) {}

  static Magnitude from_rational(const Rational& q);
  static Magnitude sqrt_of(const Rational& squared);
  static Magnitude approximate(const Real& value);

  bool is_exact() const { return exact_; }
  /// Radicand s of the exact form sqrt(s); only meaningful when exact.
  const Rational& squared() const { return squared_; }
  /// The value as a rational when it is one.
  std::optional<Rational> rational() const;
  const Real& value() const { return approx_; }
  double to_double() const { return approx_.convert_to<double>(); }
  bool is_zero() const;

  Magnitude operator+(const Magnitude& other) const;
  Magnitude& operator+=(const Magnitude& other) { return *this = *this + other; }
  /// Scaling by |c|.
  Magnitude operator*(const Rational& c) const;
  Magnitude operator*(const Magnitude& other) const;
  Magnitude operator/(const Magnitude& other) const;

  /// "p/q" when rational, "sqrt(p/q)" when a single exact root, else 40 digits.
  std::string to_string() const;

 private:
  bool exact_;
  Rational squared_;
  Real approx_;
};

/// Three-way comparison; exact when both operands are exact, otherwise
/// values closer than `high_precision_tolerance()` compare equal.
int compare(const Magnitude& a, const Magnitude& b);
inline bool mag_equal(const Magnitude& a, const Magnitude& b) { return compare(a, b) == 0; }
inline bool mag_less_equal(const Magnitude& a, const Magnitude& b) { return compare(a, b) <= 0; }
inline bool mag_less(const Magnitude& a, const Magnitude& b) { return compare(a, b) < 0; }

Magnitude norm_of(const QVec& v, Norm norm);

}  // namespace vmeas
