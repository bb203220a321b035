#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace vmeas {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// 100 significant decimal digits; used only where a value is provably irrational.
using Real = boost::multiprecision::mpfr_float_100;

/// Tolerance for comparisons that must fall back to `Real`.
inline Real high_precision_tolerance() { return Real("1e-30"); }

/// Canonical "p/q" form (always with a denominator, "0/1" for zero).
std::string to_string(const Rational& q);

/// Accepts "p", "p/q", and finite decimals such as "-0.125" or "3e-2"; exact.
Rational parse_rational(std::string_view text);

/// Exact rational value of a double (every finite double is dyadic).
Rational from_double(double x);

Real to_real(const Rational& q);

/// The rational square root of `q` when it exists.
std::optional<Rational> exact_sqrt(const Rational& q);

/// 2^k for any integer k.
Rational pow2(int k);

Rational abs(const Rational& q);

/// Dense vector in Q^m.
class QVec {
 public:
  QVec() = default;
  explicit QVec(std::size_t dim) : coords_(dim) {}
  QVec(std::initializer_list<Rational> coords) : coords_(coords) {}
  explicit QVec(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  static QVec zeros(std::size_t dim) { return QVec(dim); }

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  Rational squared_norm() const;
  Rational l1_norm() const;
  Rational max_norm() const;

  QVec& operator+=(const QVec& other);
  QVec& operator-=(const QVec& other);
  QVec& operator*=(const Rational& c);
  QVec& operator/=(const Rational& c);

  friend QVec operator+(QVec a, const QVec& b) { return a += b; }
  friend QVec operator-(QVec a, const QVec& b) { return a -= b; }
  friend QVec operator*(QVec a, const Rational& c) { return a *= c; }
  friend QVec operator*(const Rational& c, QVec a) { return a *= c; }
  friend QVec operator/(QVec a, const Rational& c) { return a /= c; }
  friend QVec operator-(QVec a) { return a *= Rational(-1); }
  friend bool operator==(const QVec& a, const QVec& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const QVec& a, const QVec& b) { return a.coords_ < b.coords_; }

 private:
  std::vector<Rational> coords_;
};

Rational dot(const QVec& a, const QVec& b);

std::ostream& operator<<(std::ostream& os, const QVec& v);

}  // namespace vmeas
