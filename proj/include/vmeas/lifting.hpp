#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "vmeas/atomic_space.hpp"
#include "vmeas/bundle.hpp"
#include "vmeas/magnitude.hpp"

namespace vmeas {

/// Raised when point values do not describe an a.e.-class on the atoms
/// (two values of positive mass inside one atom).
class InvalidClassError : public std::domain_error {
 public:
  InvalidClassError(std::size_t atom, const std::string& what) : std::domain_error(what), atom_(atom) {}
  std::size_t atom() const { return atom_; }

 private:
  std::size_t atom_;
};

/// von Neumann lifting of a purely atomic space: E is sent to the union of
/// the atoms on which E has full relative mass.
class LiftingOperator {
 public:
  explicit LiftingOperator(AtomicSpace space);

  const AtomicSpace& space() const { return space_; }
  PointSet lift(const PointSet& e) const;
  /// Least member of the lifting basis at point p: its atom.
  const PointSet& least_member(std::size_t p) const { return space_.atom(space_.atom_of(p)); }

 private:
  AtomicSpace space_;
  // Positive-weight points of each atom.
  std::vector<PointSet> cores_;
};

PointSet lift_set(const LiftingOperator& ell, const PointSet& e);

/// The unique value carried by positive-weight points of atom j; throws
/// InvalidClassError when the atom carries two of them.
template <class T, class Eq = std::equal_to<T>>
const T& essential_value(const AtomicSpace& space, std::span<const T> values, std::size_t atom, Eq eq = {}) {
  const T* found = nullptr;
  for (std::size_t p : space.atom_points(atom)) {
    if (space.weight(p) == 0) continue;
    if (!found) {
      found = &values[p];
    } else if (!eq(*found, values[p])) {
      throw InvalidClassError(atom, "values are not a.e. constant on atom " + std::to_string(atom));
    }
  }
  return *found;
}

/// Everywhere-defined representative constant on atoms.
template <class T, class Eq = std::equal_to<T>>
std::vector<T> lift_values(const LiftingOperator& ell, std::span<const T> values, Eq eq = {}) {
  const auto& space = ell.space();
  if (values.size() != space.size()) throw std::domain_error("point values do not match the atomic space");
  std::vector<T> out(values.begin(), values.end());
  for (std::size_t j = 0; j < space.atom_count(); ++j) {
    const T& v = essential_value(space, values, j, eq);
    for (std::size_t p : space.atom_points(j)) out[p] = v;
  }
  return out;
}

std::vector<Rational> lift_function(const LiftingOperator& ell, std::span<const Rational> f);

/// Mean of f over atom j with respect to the point weights.
Rational atom_average(const AtomicSpace& space, std::span<const Rational> f, std::size_t atom);
/// max |f| over positive-weight points.
Rational essential_sup(const AtomicSpace& space, std::span<const Rational> f);

/// Lifting of R^m-valued step sections over an atomic space.
class SectionLifting {
 public:
  SectionLifting(LiftingOperator ell, std::size_t dim) : ell_(std::move(ell)), dim_(dim) {}

  const LiftingOperator& base() const { return ell_; }
  std::size_t dim() const { return dim_; }
  std::vector<QVec> lift(std::span<const QVec> v) const;

 private:
  LiftingOperator ell_;
  std::size_t dim_;
};

/// With a bundle (one fiber per atom), positive-weight values must lie in
/// their fiber; violations raise std::domain_error.
std::vector<QVec> lift_section(const SectionLifting& sl, std::span<const QVec> v, const BanachBundle* bundle = nullptr);

std::vector<Magnitude> pointwise_norm(std::span<const QVec> v, Norm norm);
std::vector<Magnitude> lift_magnitudes(const LiftingOperator& ell, std::span<const Magnitude> values);

/// E belongs to the density topology of phi when E is contained in phi(E).
template <class Phi>
bool density_topology_membership(Phi&& phi, const PointSet& e) {
  return e.is_subset_of(phi(e));
}

}  // namespace vmeas
