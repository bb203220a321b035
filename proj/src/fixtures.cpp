#include "vmeas/fixtures.hpp"

#include <algorithm>

namespace vmeas::fixtures {

namespace {

Rational positive_weight(Rng& rng) { return Rational(rng.range(1, 9), rng.range(1, 8)); }

}  // namespace

AtomicSpace random_atomic_space(Rng& rng, std::size_t atoms, std::size_t max_null) {
  std::vector<std::vector<std::size_t>> groups(atoms);
  std::vector<bool> positive;
  for (std::size_t j = 0; j < atoms; ++j) {
    const std::size_t pos = 1 + rng.below(2);
    const std::size_t nulls = max_null ? rng.below(max_null + 1) : 0;
    for (std::size_t k = 0; k < pos + nulls; ++k) {
      groups[j].push_back(positive.size());
      positive.push_back(k < pos);
    }
  }
  std::vector<std::size_t> perm(positive.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<Rational> weights(positive.size());
  for (std::size_t i = 0; i < positive.size(); ++i) weights[perm[i]] = positive[i] ? positive_weight(rng) : Rational(0);
  for (auto& g : groups) {
    for (auto& p : g) p = perm[p];
    std::sort(g.begin(), g.end());
  }
  return AtomicSpace(std::move(weights), std::move(groups));
}

PointSet random_measurable(const AtomicSpace& space, Rng& rng) {
  PointSet e = space.empty_set();
  for (std::size_t j = 0; j < space.atom_count(); ++j) {
    const bool in = rng.coin();
    for (std::size_t p : space.atom_points(j)) e[p] = space.weight(p) != 0 ? in : rng.coin();
  }
  return e;
}

PointSet null_perturbation(const AtomicSpace& space, const PointSet& e, Rng& rng) {
  PointSet f = e;
  for (std::size_t p = 0; p < space.size(); ++p)
    if (space.weight(p) == 0 && rng.coin()) f.flip(p);
  return f;
}

std::vector<Rational> random_class(const AtomicSpace& space, Rng& rng) {
  std::vector<Rational> f(space.size());
  for (std::size_t j = 0; j < space.atom_count(); ++j) {
    const Rational v = rng.small_rational(6, 4);
    for (std::size_t p : space.atom_points(j)) f[p] = space.weight(p) != 0 ? v : rng.small_rational(50, 3);
  }
  return f;
}

std::vector<QVec> random_section(const AtomicSpace& space, std::size_t dim, Rng& rng) {
  std::vector<QVec> v(space.size(), QVec(dim));
  for (std::size_t j = 0; j < space.atom_count(); ++j) {
    QVec value(dim);
    for (std::size_t i = 0; i < dim; ++i) value[i] = rng.small_rational(6, 4);
    for (std::size_t p : space.atom_points(j)) {
      if (space.weight(p) != 0) {
        v[p] = value;
      } else {
        for (std::size_t i = 0; i < dim; ++i) v[p][i] = rng.small_rational(50, 3);
      }
    }
  }
  return v;
}

IntervalUnion random_interval_union(Rng& rng, const Interval& ambient, int grid_depth, int max_pieces) {
  const Rational step = (ambient.hi - ambient.lo) * pow2(-grid_depth);
  const std::int64_t n = std::int64_t{1} << grid_depth;
  std::vector<Interval> pieces;
  const int count = static_cast<int>(rng.range(0, max_pieces));
  for (int i = 0; i < count; ++i) {
    std::int64_t a = rng.range(0, n), b = rng.range(0, n);
    if (a > b) std::swap(a, b);
    // Occasionally a single point, to exercise null pieces.
    if (rng.below(6) == 0) b = a;
    Interval iv{ambient.lo + step * a, ambient.lo + step * b, rng.coin(), rng.coin()};
    if (a == b) iv.lo_closed = iv.hi_closed = true;
    pieces.push_back(iv);
  }
  return IntervalUnion(ambient, std::move(pieces));
}

BaseMeasure random_step_measure(Rng& rng, const DyadicHierarchy& h, int depth, bool allow_null) {
  const std::uint64_t n = h.cell_count(depth);
  std::vector<Rational> rho(n);
  bool any = false;
  for (auto& r : rho) {
    r = allow_null && rng.below(4) == 0 ? Rational(0) : positive_weight(rng);
    any = any || r != 0;
  }
  if (!any) rho[rng.below(n)] = 1;
  return BaseMeasure::step_density(h, depth, std::move(rho));
}

std::vector<QVec> random_vectors(Rng& rng, std::size_t count, std::size_t dim, double zero_probability) {
  std::vector<QVec> out(count, QVec(dim));
  const std::uint64_t zero_cut = static_cast<std::uint64_t>(zero_probability * 1024);
  for (auto& v : out) {
    if (rng.below(1024) < zero_cut) continue;
    for (std::size_t i = 0; i < dim; ++i) v[i] = rng.small_rational(5, 3);
  }
  return out;
}

SimpleMap random_cell_map(Rng& rng, const DyadicHierarchy& h, int depth, std::size_t codim) {
  std::vector<QVec> values = random_vectors(rng, h.cell_count(depth), codim, 0.2);
  // Repeat values sometimes so that pieces span several cells.
  for (std::size_t i = 1; i < values.size(); ++i)
    if (rng.below(3) == 0) values[i] = values[i - 1];
  return SimpleMap::from_cells(h, depth, values);
}

VectorMeasure random_atom_list(Rng& rng, std::size_t ground, std::size_t codim, Norm norm) {
  return VectorMeasure::from_point_values(random_vectors(rng, ground, codim, 0.15), norm);
}

VectorMeasure three_atom_measure(Norm norm) {
  return VectorMeasure::from_point_values({QVec{3, 0}, QVec{0, 4}, QVec{1, 0}}, norm);
}

std::vector<std::size_t> three_atom_map() { return {0, 0, 1}; }

}  // namespace vmeas::fixtures
