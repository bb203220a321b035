#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "vmeas/atomic_space.hpp"
#include "vmeas/cell_set.hpp"
#include "vmeas/interval_union.hpp"

namespace vmeas {

/// Nonnegative finite measure on one of the desk-scale models: Lebesgue or a
/// cell-wise constant density on a dyadic hierarchy, or point weights on an
/// atomic space.
class BaseMeasure {
 public:
  enum class Kind { Lebesgue, StepDensity, AtomicWeights };

  static BaseMeasure lebesgue(const DyadicHierarchy& h);
  /// `densities[i]` is the density on depth-`depth` cell i.
  static BaseMeasure step_density(const DyadicHierarchy& h, int depth, std::vector<Rational> densities);
  static BaseMeasure atomic(AtomicSpace space);

  Kind kind() const { return kind_; }
  bool on_hierarchy() const { return kind_ != Kind::AtomicWeights; }
  const DyadicHierarchy& hierarchy() const;
  const AtomicSpace& space() const;
  /// Depth at which the density is constant on cells (0 for Lebesgue).
  int density_depth() const { return density_depth_; }
  const std::vector<Rational>& densities() const { return densities_; }
  /// Density on the cell containing `cell` at the density depth; requires
  /// cell.depth >= density_depth().
  const Rational& density_on(const Cell& cell) const;
  Rational density_at(const DyadicPoint& x) const;

  Rational mass(const Cell& cell) const;
  Rational measure_of(const CellSet& e) const;
  Rational measure_of(const PointSet& e) const;
  /// One-dimensional hierarchy models only; the union must sit inside [0,1].
  Rational measure_of(const IntervalUnion& e) const;
  Rational total_mass() const;

  /// Per-cell masses at `depth`.
  std::vector<Rational> cell_masses(int depth) const;
  /// Cells of positive mass at `depth` (or points of positive weight).
  CellSet positive_cells(int depth) const;

  friend bool operator==(const BaseMeasure& a, const BaseMeasure& b);

 private:
  BaseMeasure() = default;
  void require_hierarchy(const char* what) const;

  Kind kind_ = Kind::Lebesgue;
  std::optional<DyadicHierarchy> hierarchy_;
  std::shared_ptr<const AtomicSpace> space_;
  int density_depth_ = 0;
  std::vector<Rational> densities_;
};

using MeasurableSet = std::variant<CellSet, PointSet>;

/// Maximal-atom partition: the declared atoms of an atomic space, or the
/// positive-mass leaf cells (at the hierarchy's max depth) of a step model.
std::vector<MeasurableSet> atoms_of(const BaseMeasure& mu);

}  // namespace vmeas
