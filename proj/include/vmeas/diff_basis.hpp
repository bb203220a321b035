#pragma once

#include <functional>
#include <string>
#include <variant>

#include "vmeas/base_measure.hpp"
#include "vmeas/lifting.hpp"

namespace vmeas {

/// Dyadic partitions of a step-density model; I_x is the chain of
/// positive-mass cells containing x.
struct PartitionBasis {
  BaseMeasure mu;
};

/// Bounded nondegenerate intervals inside the ambient interval, Lebesgue measure.
struct IntervalBasis {
  Interval ambient;
};

/// I_x = atom unions containing atom(x); atom(x) is its least element.
struct LiftingBasis {
  LiftingOperator ell;
};

using DifferentiationBasis = std::variant<PartitionBasis, IntervalBasis, LiftingBasis>;

std::vector<Cell> members_at(const PartitionBasis& basis, const DyadicPoint& x);
/// Throws std::length_error beyond 12 atoms (2^11 members per point).
std::vector<PointSet> members_at(const LiftingBasis& basis, std::size_t point);

struct BasisCheck {
  bool positive = true;
  bool directed = true;
  bool regular_full = true;
  std::string witness;
  bool ok() const { return positive && directed && regular_full; }
};

/// Partition bases are checked on every leaf chain, lifting bases on every
/// pair of members at every point, interval bases analytically.
BasisCheck check_basis(const DifferentiationBasis& basis);

using CellFunctional = std::function<QVec(const Cell&)>;

struct ILimitResult {
  enum class Status { Converged, Inconclusive };
  Status status = Status::Inconclusive;
  /// Value at the deepest probed cell.
  QVec value;
  /// max-norm distance between the last two chain values.
  Rational residual;
  /// Converged: first depth from which every chain value is within tol of
  /// `value`. Inconclusive: the probed depth k_max.
  int depth = 0;
  std::vector<QVec> chain;

  bool converged() const { return status == Status::Converged; }
};

/// Chain limit of phi along P_0^x ⊃ ... ⊃ P_{k_max}^x. Converged when the
/// last ceil(k_max/4) values all lie within tol (max norm) of the final one.
ILimitResult ilimit_partition(const DyadicHierarchy& h, const CellFunctional& phi, const DyadicPoint& x,
                              const Rational& tol, int k_max);

/// Tail test shared with the scans: Converged iff the ceil(k_max/4) entries
/// before the final one in `distances_to_final` are <= tol.
bool cauchy_tail_converged(const std::vector<Rational>& distances_to_final, const Rational& tol, int k_max,
                           int* stable_from = nullptr);

/// On an atomic space the filter limit is the value at the least member.
QVec ilimit_lifting(const LiftingOperator& ell, const std::function<QVec(const PointSet&)>& phi, std::size_t point);

/// x is a density point iff E contains (x-d, x+d) ∩ ambient up to a null set
/// for some d > 0.
bool density_point_interval(const IntervalUnion& e, const Rational& x);
/// Interior of the essential representative of E, keeping ends that lie on
/// the ambient boundary.
IntervalUnion density_points_interval(const IntervalUnion& e);

/// For each cell at `depth` >= the density depth, its deepest ancestor of
/// positive mass (the cell itself unless it is null). Null cells are not
/// basis members, so the chain at a point of a null cell ends there.
std::vector<Cell> chain_floor(const BaseMeasure& mu, int depth);
/// Cells c at depth max(E.depth, density depth) whose floor F has
/// mu(F \ E) = 0; for positive cells this is c ⊂ E.
CellSet density_points_partition(const CellSet& e, const BaseMeasure& mu);
/// On an atomic space the chain is constant at the atom, so D = lifting.
PointSet density_points_partition(const PointSet& e, const AtomicSpace& space);

}  // namespace vmeas
