#include "vmeas/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vmeas {

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
  if (start == digits.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t i = start; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '9')
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  // Leading zeros would make the GMP parser read octal.
  const std::size_t first = std::min(digits.find_first_not_of('0', start), digits.size() - 1);
  return Integer((digits[0] == '-' ? "-" : "") + std::string(digits.substr(first)));
}

Rational pow10(long e) {
  Integer p = 1;
  for (long i = 0; i < std::labs(e); ++i) p *= 10;
  return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

Rational parse_decimal(std::string_view text) {
  std::string_view mant = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    exponent = std::stol(std::string(parse_integer(text.substr(e + 1), text).str()));
  }
  bool negative = !mant.empty() && mant[0] == '-';
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant.remove_prefix(1);
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (char c : mant) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
  // A leading zero would make the integer parser read octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Rational value = Rational(Integer(digits)) * pow10(exponent - frac_digits);
  return negative ? -value : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return Rational(parse_integer(text, text));
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite value has no rational form");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 mantissa bits make the scaled mantissa an exact integer.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  return Rational(scaled) * pow2(exp - 53);
}

Real to_real(const Rational& q) { return Real(q); }

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer n = numerator(q);
  Integer d = denominator(q);
  Integer rn = sqrt(n);
  Integer rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

Rational pow2(int k) {
  Integer p = 1;
  p <<= static_cast<unsigned>(k >= 0 ? k : -k);
  return k >= 0 ? Rational(p) : Rational(Integer(1), p);
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

bool QVec::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

Rational QVec::squared_norm() const {
  Rational s = 0;
  for (const auto& c : coords_) s += c * c;
  return s;
}

Rational QVec::l1_norm() const {
  Rational s = 0;
  for (const auto& c : coords_) s += abs(c);
  return s;
}

Rational QVec::max_norm() const {
  Rational s = 0;
  for (const auto& c : coords_) s = std::max(s, abs(c));
  return s;
}

QVec& QVec::operator+=(const QVec& other) {
  if (other.dim() != dim()) throw std::invalid_argument("vector dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

QVec& QVec::operator-=(const QVec& other) {
  if (other.dim() != dim()) throw std::invalid_argument("vector dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

QVec& QVec::operator*=(const Rational& c) {
  for (auto& x : coords_) x *= c;
  return *this;
}

QVec& QVec::operator/=(const Rational& c) {
  if (c == 0) throw std::domain_error("division of a vector by zero");
  for (auto& x : coords_) x /= c;
  return *this;
}

Rational dot(const QVec& a, const QVec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

std::ostream& operator<<(std::ostream& os, const QVec& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << to_string(v[i]);
  return os << ')';
}

}  // namespace vmeas
