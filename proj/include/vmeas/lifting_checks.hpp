#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vmeas/base_measure.hpp"
#include "vmeas/lifting.hpp"

namespace vmeas {

/// Finite union of open boxes in [0,1)^d with pairwise disjoint closures
/// (open intervals when d = 1), or the whole space.
struct OpenSet {
  std::vector<Box> boxes;
  bool whole = false;

  bool contains(const DyadicPoint& x) const;
  /// Squared distance from x (inside U) to the complement of U; unused when whole.
  Rational squared_boundary_distance(const DyadicPoint& x) const;
  std::string describe() const;
};

Rational measure_in(const BaseMeasure& mu, const OpenSet& u, const Cell& cell);

struct StrongLiftingRow {
  std::string open_set;
  DyadicPoint x;
  /// Least k such that every chain ratio from k up to the cap equals 1.
  int kbar = -1;
  /// ceil(log2(sqrt(d) / dist(x, boundary of U))) + 1; 0 for the whole space.
  int bound = 0;
  bool member = false;
  bool within_bound() const { return member && kbar <= bound; }
};

struct StrongLiftingReport {
  std::vector<StrongLiftingRow> rows;
  bool all_members() const;
  bool all_within_bound() const;
};

/// x must lie in a positive-mass cell of mu (its regular set); points
/// outside the support raise std::domain_error.
StrongLiftingRow strong_lifting_point(const BaseMeasure& mu, const OpenSet& u, const DyadicPoint& x, int depth_cap);

/// Samples `samples` (U, x) pairs with x in U ∩ spt(mu).
StrongLiftingReport strong_lifting_check(const BaseMeasure& mu, int depth_cap, std::size_t samples = 64,
                                         std::uint64_t seed = 0);

/// Squared distance between the images of two points.
using SquaredDistance = std::function<Rational(std::size_t, std::size_t)>;

struct ApproxContinuity {
  bool via_basis = false;        // (i) the lifting basis at x
  bool via_lifted_balls = false; // (ii) x in ell(phi^-1(ball))
  bool via_topology = false;     // (iii) continuity for the density topology
  bool agree() const { return via_basis == via_lifted_balls && via_lifted_balls == via_topology; }
};

/// Radii range over the attained distances from phi(x) and a quarter of the
/// least positive one; that covers every distinct ball.
ApproxContinuity approximate_continuity(const LiftingOperator& ell, const SquaredDistance& d2, std::size_t x);
ApproxContinuity approximate_continuity(const LiftingOperator& ell, const std::vector<QVec>& phi, std::size_t x);

}  // namespace vmeas
