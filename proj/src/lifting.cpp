#include "vmeas/lifting.hpp"

#include <algorithm>

namespace vmeas {

LiftingOperator::LiftingOperator(AtomicSpace space) : space_(std::move(space)) {
  cores_.reserve(space_.atom_count());
  for (std::size_t j = 0; j < space_.atom_count(); ++j) cores_.push_back(space_.atom(j) & space_.support());
}

PointSet LiftingOperator::lift(const PointSet& e) const {
  space_.check_set(e);
  PointSet out = space_.empty_set();
  // Full relative mass on an atom: every positive point of it lies in E.
  for (std::size_t j = 0; j < cores_.size(); ++j)
    if (cores_[j].is_subset_of(e)) out |= space_.atom(j);
  return out;
}

PointSet lift_set(const LiftingOperator& ell, const PointSet& e) { return ell.lift(e); }

std::vector<Rational> lift_function(const LiftingOperator& ell, std::span<const Rational> f) {
  return lift_values(ell, f);
}

Rational atom_average(const AtomicSpace& space, std::span<const Rational> f, std::size_t atom) {
  Rational total = 0;
  for (std::size_t p : space.atom_points(atom)) total += space.weight(p) * f[p];
  return total / space.atom_mass(atom);
}

Rational essential_sup(const AtomicSpace& space, std::span<const Rational> f) {
  if (f.size() != space.size()) throw std::domain_error("point values do not match the atomic space");
  Rational best = 0;
  for (std::size_t p = 0; p < f.size(); ++p)
    if (space.weight(p) > 0) best = std::max(best, abs(f[p]));
  return best;
}

std::vector<QVec> SectionLifting::lift(std::span<const QVec> v) const {
  for (const auto& x : v)
    if (x.dim() != dim_) throw std::domain_error("section value has the wrong dimension");
  return lift_values(ell_, v);
}

std::vector<QVec> lift_section(const SectionLifting& sl, std::span<const QVec> v, const BanachBundle* bundle) {
  const AtomicSpace& space = sl.base().space();
  if (bundle) {
    if (bundle->fiber_count() != space.atom_count() || bundle->ambient_dim() != sl.dim())
      throw std::domain_error("bundle does not match the section lifting");
    for (std::size_t p = 0; p < v.size() && p < space.size(); ++p) {
      if (space.weight(p) == 0) continue;
      if (!bundle->fiber(space.atom_of(p)).contains(v[p]))
        throw std::domain_error("section value at point " + std::to_string(p) + " leaves its fiber");
    }
  }
  return sl.lift(v);
}

std::vector<Magnitude> pointwise_norm(std::span<const QVec> v, Norm norm) {
  std::vector<Magnitude> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(norm_of(x, norm));
  return out;
}

std::vector<Magnitude> lift_magnitudes(const LiftingOperator& ell, std::span<const Magnitude> values) {
  return lift_values(ell, values, [](const Magnitude& a, const Magnitude& b) { return mag_equal(a, b); });
}

}  // namespace vmeas
