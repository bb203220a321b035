#pragma once

#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "vmeas/rational.hpp"

namespace vmeas {

using PointSet = boost::dynamic_bitset<>;

/// Finite ground set with nonnegative point weights, partitioned into atoms
/// of positive mass. Zero-weight points belong to some atom like any other.
///
/// The measurable sets are those meeting each atom in a null or a conull
/// subset; on this algebra every declared atom is an atom of the measure.
class AtomicSpace {
 public:
  AtomicSpace(std::vector<Rational> weights, std::vector<std::vector<std::size_t>> atoms);

  /// Each positive-weight point is its own atom; null points join the
  /// preceding positive point (or the first one when none precedes).
  static AtomicSpace from_weights(std::vector<Rational> weights);

  std::size_t size() const { return weights_.size(); }
  std::size_t atom_count() const { return atoms_.size(); }
  const Rational& weight(std::size_t p) const { return weights_.at(p); }
  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t atom_of(std::size_t p) const { return atom_of_.at(p); }
  const std::vector<std::size_t>& atom_points(std::size_t j) const { return atoms_.at(j); }
  const PointSet& atom(std::size_t j) const { return atom_sets_.at(j); }
  const Rational& atom_mass(std::size_t j) const { return atom_masses_.at(j); }
  const Rational& total_mass() const { return total_mass_; }
  /// Points of positive weight.
  const PointSet& support() const { return support_; }

  PointSet empty_set() const { return PointSet(size()); }
  PointSet full_set() const { return ~empty_set(); }
  PointSet make_set(std::initializer_list<std::size_t> points) const;

  Rational measure(const PointSet& e) const;
  bool is_null(const PointSet& e) const { return !e.intersects(support_); }
  bool is_measurable(const PointSet& e) const;
  /// Every measurable set; throws when there would be more than `limit`.
  std::vector<PointSet> measurable_sets(std::size_t limit = std::size_t{1} << 16) const;
  /// Union of the atoms flagged in `atom_mask`.
  PointSet union_of_atoms(const boost::dynamic_bitset<>& atom_mask) const;

  void check_set(const PointSet& e) const;

 private:
  std::vector<Rational> weights_;
  std::vector<std::vector<std::size_t>> atoms_;
  std::vector<std::size_t> atom_of_;
  std::vector<PointSet> atom_sets_;
  std::vector<Rational> atom_masses_;
  Rational total_mass_;
  PointSet support_;
};

}  // namespace vmeas
