#pragma once

#include <cstdint>
#include <random>

#include "vmeas/rational.hpp"

namespace vmeas {

/// Seeded generator with portable derived draws (the std distributions are
/// implementation-defined, mt19937_64 itself is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t v;
    do v = engine_(); while (v > limit);
    return v % n;
  }
  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  bool coin() { return engine_() >> 63; }
  /// Uniform on the grid {j / 2^depth : 0 <= j < 2^depth}.
  Rational dyadic(int depth) { return Rational(Integer(below(std::uint64_t{1} << depth)), Integer(1) << depth); }
  /// Small signed rational p/q with |p| <= num, 1 <= q <= den.
  Rational small_rational(int num, int den) { return Rational(range(-num, num), range(1, den)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vmeas
