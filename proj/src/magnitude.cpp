#include "vmeas/magnitude.hpp"

#include <sstream>
#include <stdexcept>

namespace vmeas {

Norm parse_norm(std::string_view name) {
  if (name == "l1") return Norm::L1;
  if (name == "l2") return Norm::L2;
  throw std::invalid_argument("unknown norm '" + std::string(name) + "' (expected l1 or l2)");
}

std::string_view norm_name(Norm norm) { return norm == Norm::L1 ? "l1" : "l2"; }

Magnitude Magnitude::from_rational(const Rational& q) {
  if (q < 0) throw std::domain_error("magnitude must be nonnegative");
  Magnitude m;
  m.squared_ = q * q;
  m.approx_ = to_real(q);
  return m;
}

Magnitude Magnitude::sqrt_of(const Rational& squared) {
  if (squared < 0) throw std::domain_error("magnitude radicand must be nonnegative");
  Magnitude m;
  m.exact_ = true;
  m.squared_ = squared;
  m.approx_ = sqrt(to_real(squared));
  return m;
}

Magnitude Magnitude::approximate(const Real& value) {
  if (value < 0) throw std::domain_error("magnitude must be nonnegative");
  Magnitude m;
  m.exact_ = false;
  m.squared_ = 0;
  m.approx_ = value;
  return m;
}

std::optional<Rational> Magnitude::rational() const {
  if (!exact_) return std::nullopt;
  return exact_sqrt(squared_);
}

bool Magnitude::is_zero() const { return exact_ ? squared_ == 0 : approx_ == 0; }

Magnitude Magnitude::operator+(const Magnitude& other) const {
  if (exact_ && other.exact_) {
    if (squared_ == 0) return other;
    if (other.squared_ == 0) return *this;
    // sqrt(a) + sqrt(b) = sqrt(b) (1 + t) whenever a / b = t^2.
    if (auto t = exact_sqrt(squared_ / other.squared_)) {
      Rational f = 1 + *t;
      Magnitude m;
      m.squared_ = other.squared_ * f * f;
      m.approx_ = approx_ + other.approx_;
      return m;
    }
  }
  return approximate(approx_ + other.approx_);
}

Magnitude Magnitude::operator*(const Rational& c) const {
  if (exact_) return sqrt_of(squared_ * c * c);
  return approximate(approx_ * to_real(abs(c)));
}

Magnitude Magnitude::operator*(const Magnitude& other) const {
  if (exact_ && other.exact_) return sqrt_of(squared_ * other.squared_);
  return approximate(approx_ * other.approx_);
}

Magnitude Magnitude::operator/(const Magnitude& other) const {
  if (other.is_zero()) throw std::domain_error("division by a zero magnitude");
  if (exact_ && other.exact_) return sqrt_of(squared_ / other.squared_);
  return approximate(approx_ / other.approx_);
}

std::string Magnitude::to_string() const {
  if (auto q = rational()) return vmeas::to_string(*q);
  if (exact_) return "sqrt(" + vmeas::to_string(squared_) + ")";
  std::ostringstream os;
  os.precision(40);
  os << approx_;
  return os.str();
}

int compare(const Magnitude& a, const Magnitude& b) {
  if (a.is_exact() && b.is_exact()) {
    if (a.squared() < b.squared()) return -1;
    return a.squared() > b.squared() ? 1 : 0;
  }
  Real diff = a.value() - b.value();
  if (abs(diff) <= high_precision_tolerance()) return 0;
  return diff < 0 ? -1 : 1;
}

Magnitude norm_of(const QVec& v, Norm norm) {
  if (norm == Norm::L1) return Magnitude::from_rational(v.l1_norm());
  return Magnitude::sqrt_of(v.squared_norm());
}

}  // namespace vmeas
