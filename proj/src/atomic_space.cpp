#include "vmeas/atomic_space.hpp"

#include <stdexcept>

namespace vmeas {

AtomicSpace::AtomicSpace(std::vector<Rational> weights, std::vector<std::vector<std::size_t>> atoms)
    : weights_(std::move(weights)), atoms_(std::move(atoms)), atom_of_(weights_.size(), SIZE_MAX),
      total_mass_(0), support_(weights_.size()) {
  if (weights_.empty()) throw std::invalid_argument("atomic space needs at least one point");
  for (std::size_t p = 0; p < weights_.size(); ++p) {
    if (weights_[p] < 0) throw std::invalid_argument("point weights must be nonnegative");
    if (weights_[p] > 0) support_.set(p);
  }
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    PointSet s(size());
    Rational mass = 0;
    if (atoms_[j].empty()) throw std::invalid_argument("atom " + std::to_string(j) + " is empty");
    for (std::size_t p : atoms_[j]) {
      if (p >= size()) throw std::out_of_range("atom refers to point " + std::to_string(p) + " outside the space");
      if (atom_of_[p] != SIZE_MAX) throw std::invalid_argument("point " + std::to_string(p) + " lies in two atoms");
      atom_of_[p] = j;
      s.set(p);
      mass += weights_[p];
    }
    if (mass <= 0) throw std::invalid_argument("atom " + std::to_string(j) + " has zero mass");
    atom_sets_.push_back(std::move(s));
    atom_masses_.push_back(mass);
    total_mass_ += mass;
  }
  for (std::size_t p = 0; p < size(); ++p) {
    if (atom_of_[p] == SIZE_MAX) throw std::invalid_argument("point " + std::to_string(p) + " lies in no atom");
  }
}

AtomicSpace AtomicSpace::from_weights(std::vector<Rational> weights) {
  std::vector<std::vector<std::size_t>> atoms;
  std::vector<std::size_t> leading_nulls;
  for (std::size_t p = 0; p < weights.size(); ++p) {
    if (weights[p] > 0) {
      atoms.push_back({p});
      if (atoms.size() == 1) {
        atoms.back().insert(atoms.back().end(), leading_nulls.begin(), leading_nulls.end());
        leading_nulls.clear();
      }
    } else if (atoms.empty()) {
      leading_nulls.push_back(p);
    } else {
      atoms.back().push_back(p);
    }
  }
  if (atoms.empty()) throw std::invalid_argument("atomic space needs a point of positive weight");
  return AtomicSpace(std::move(weights), std::move(atoms));
}

PointSet AtomicSpace::make_set(std::initializer_list<std::size_t> points) const {
  PointSet s(size());
  for (auto p : points) s.set(p);
  return s;
}

void AtomicSpace::check_set(const PointSet& e) const {
  if (e.size() != size()) throw std::domain_error("point set does not belong to this atomic space");
}

Rational AtomicSpace::measure(const PointSet& e) const {
  check_set(e);
  Rational s = 0;
  for (auto p = e.find_first(); p != PointSet::npos; p = e.find_next(p)) s += weights_[p];
  return s;
}

bool AtomicSpace::is_measurable(const PointSet& e) const {
  check_set(e);
  for (std::size_t j = 0; j < atom_count(); ++j) {
    PointSet inside = e & atom_sets_[j] & support_;
    if (inside.none()) continue;
    if (inside != (atom_sets_[j] & support_)) return false;
  }
  return true;
}

std::vector<PointSet> AtomicSpace::measurable_sets(std::size_t limit) const {
  // Within each atom: a subset of its null points, or the atom minus such a subset.
  std::vector<std::vector<PointSet>> per_atom(atom_count());
  std::size_t total = 1;
  for (std::size_t j = 0; j < atom_count(); ++j) {
    std::vector<std::size_t> nulls;
    for (std::size_t p : atoms_[j])
      if (weights_[p] == 0) nulls.push_back(p);
    if (nulls.size() > 16) throw std::length_error("too many null points to enumerate");
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << nulls.size()); ++m) {
      PointSet part(size());
      for (std::size_t b = 0; b < nulls.size(); ++b)
        if (m >> b & 1) part.set(nulls[b]);
      per_atom[j].push_back(part);
      per_atom[j].push_back(atom_sets_[j] - part);
    }
    if (total > limit / per_atom[j].size()) throw std::length_error("measurable algebra too large to enumerate");
    total *= per_atom[j].size();
  }
  std::vector<PointSet> out;
  out.reserve(total);
  std::vector<std::size_t> choice(atom_count(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    PointSet s(size());
    for (std::size_t j = 0; j < atom_count(); ++j) s |= per_atom[j][choice[j]];
    out.push_back(std::move(s));
    for (std::size_t j = 0; j < atom_count(); ++j) {
      if (++choice[j] < per_atom[j].size()) break;
      choice[j] = 0;
    }
  }
  return out;
}

PointSet AtomicSpace::union_of_atoms(const boost::dynamic_bitset<>& atom_mask) const {
  PointSet s(size());
  for (auto j = atom_mask.find_first(); j != boost::dynamic_bitset<>::npos; j = atom_mask.find_next(j))
    s |= atom_sets_.at(j);
  return s;
}

}  // namespace vmeas
