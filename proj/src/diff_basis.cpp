#include "vmeas/diff_basis.hpp"

#include <map>
#include <stdexcept>

namespace vmeas {

namespace {

Rational max_distance(const QVec& a, const QVec& b) {
  if (a.dim() != b.dim()) throw std::domain_error("functional values change dimension along the chain");
  return (a - b).max_norm();
}

BasisCheck check_partition(const PartitionBasis& basis) {
  BasisCheck out;
  const BaseMeasure& mu = basis.mu;
  if (!mu.on_hierarchy()) throw std::invalid_argument("partition basis needs a hierarchy model");
  const int depth = mu.density_depth();
  if (mu.hierarchy().cell_count(depth) > (std::uint64_t{1} << 20))
    throw std::length_error("density depth too fine to check every chain");
  // Positivity is decided at the density depth; deeper cells inherit it.
  CellSet regular = mu.positive_cells(depth);
  for (const Cell& c : regular.cells()) {
    const DyadicHierarchy& h = mu.hierarchy();
    Cell prev = h.root();
    for (int k = 0; k <= depth; ++k) {
      Cell cur = h.ancestor(c, k);
      if (mu.mass(cur) <= 0) {
        out.positive = false;
        out.witness = "chain cell of nonpositive mass at depth " + std::to_string(k);
        return out;
      }
      if (!h.contains(prev, cur)) {
        out.directed = false;
        out.witness = "chain not nested at depth " + std::to_string(k);
        return out;
      }
      prev = cur;
    }
  }
  if (mu.measure_of(regular) != mu.total_mass()) {
    out.regular_full = false;
    out.witness = "regular set misses mass";
  }
  return out;
}

BasisCheck check_lifting(const LiftingBasis& basis) {
  BasisCheck out;
  const AtomicSpace& space = basis.ell.space();
  const std::size_t atoms = space.atom_count();
  if (atoms > 12) throw std::length_error("lifting basis check limited to 12 atoms");
  const std::uint32_t all = (std::uint32_t{1} << atoms) - 1;
  for (std::size_t j = 0; j < atoms; ++j) {
    const std::uint32_t bit = std::uint32_t{1} << j;
    if (space.atom_mass(j) <= 0) {
      out.positive = false;
      out.witness = "atom " + std::to_string(j) + " has no mass";
      return out;
    }
    for (std::uint32_t a = 0; a <= all; ++a) {
      if (!(a & bit)) continue;
      for (std::uint32_t b = a; b <= all; ++b) {
        if (!(b & bit)) continue;
        // a ∩ b is itself a member, and the least one below both.
        if (!((a & b) & bit)) {
          out.directed = false;
          out.witness = "atom " + std::to_string(j);
          return out;
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Cell> members_at(const PartitionBasis& basis, const DyadicPoint& x) {
  const BaseMeasure& mu = basis.mu;
  std::vector<Cell> out;
  for (const Cell& c : mu.hierarchy().chain(x, mu.hierarchy().max_depth())) {
    if (mu.mass(c) <= 0) break;
    out.push_back(c);
  }
  return out;
}

std::vector<PointSet> members_at(const LiftingBasis& basis, std::size_t point) {
  const AtomicSpace& space = basis.ell.space();
  const std::size_t atoms = space.atom_count();
  if (atoms > 12) throw std::length_error("member enumeration limited to 12 atoms");
  const std::size_t own = space.atom_of(point);
  std::vector<PointSet> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << atoms); ++mask) {
    if (!(mask >> own & 1)) continue;
    boost::dynamic_bitset<> m(atoms, mask);
    out.push_back(space.union_of_atoms(m));
  }
  return out;
}

BasisCheck check_basis(const DifferentiationBasis& basis) {
  if (auto* p = std::get_if<PartitionBasis>(&basis)) return check_partition(*p);
  if (auto* l = std::get_if<LiftingBasis>(&basis)) return check_lifting(*l);
  BasisCheck out;
  const Interval& a = std::get<IntervalBasis>(basis).ambient;
  if (!(a.lo < a.hi)) {
    out.positive = false;
    out.witness = "degenerate ambient interval";
  }
  return out;
}

bool cauchy_tail_converged(const std::vector<Rational>& distances_to_final, const Rational& tol, int k_max,
                           int* stable_from) {
  const int tail = (k_max + 3) / 4;
  int first = k_max;
  while (first > 0 && distances_to_final[first - 1] <= tol) --first;
  if (stable_from) *stable_from = first;
  // The final depth is trivially within tol of itself; the window counts the
  // `tail` depths before it.
  return first <= k_max - tail;
}

ILimitResult ilimit_partition(const DyadicHierarchy& h, const CellFunctional& phi, const DyadicPoint& x,
                              const Rational& tol, int k_max) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (k_max < 4) throw std::invalid_argument("k_max must be at least 4");
  h.check_depth(k_max);
  ILimitResult out;
  for (const Cell& c : h.chain(x, k_max)) out.chain.push_back(phi(c));
  out.value = out.chain.back();
  std::vector<Rational> dist;
  dist.reserve(out.chain.size());
  for (const QVec& v : out.chain) dist.push_back(max_distance(v, out.value));
  out.residual = dist[k_max - 1];
  int stable = k_max;
  if (cauchy_tail_converged(dist, tol, k_max, &stable)) {
    out.status = ILimitResult::Status::Converged;
    out.depth = stable;
  } else {
    out.depth = k_max;
  }
  return out;
}

QVec ilimit_lifting(const LiftingOperator& ell, const std::function<QVec(const PointSet&)>& phi, std::size_t point) {
  return phi(ell.least_member(point));
}

IntervalUnion density_points_interval(const IntervalUnion& e) {
  const Interval& amb = e.ambient();
  std::vector<Interval> merged;
  for (const Interval& p : e.pieces()) {
    if (p.length() == 0) continue;
    if (!merged.empty() && merged.back().hi == p.lo) {
      merged.back().hi = p.hi;
    } else {
      merged.push_back(p);
    }
  }
  for (Interval& p : merged) {
    p.lo_closed = p.lo == amb.lo && amb.lo_closed;
    p.hi_closed = p.hi == amb.hi && amb.hi_closed;
  }
  return IntervalUnion(amb, std::move(merged));
}

bool density_point_interval(const IntervalUnion& e, const Rational& x) {
  if (!e.ambient().contains(x)) throw std::invalid_argument("point outside the ambient interval");
  return density_points_interval(e).contains(x);
}

std::vector<Cell> chain_floor(const BaseMeasure& mu, int depth) {
  if (!mu.on_hierarchy()) throw std::invalid_argument("chain floors need a hierarchy");
  if (depth < mu.density_depth()) throw std::invalid_argument("depth above the density depth");
  const DyadicHierarchy& h = mu.hierarchy();
  const std::vector<Rational> masses = mu.cell_masses(depth);
  std::vector<Cell> floor(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    Cell c{depth, i};
    if (masses[i] == 0)
      while (c.depth > 0 && mu.mass(c) == 0) c = h.parent(c);
    floor[i] = c;
  }
  return floor;
}

CellSet density_points_partition(const CellSet& e, const BaseMeasure& mu) {
  if (!mu.on_hierarchy() || !(mu.hierarchy() == e.hierarchy()))
    throw std::invalid_argument("set and measure live on different models");
  const DyadicHierarchy& h = e.hierarchy();
  const int depth = std::max(e.depth(), mu.density_depth());
  CellSet fine = e.refine(depth);
  const std::vector<Rational> masses = mu.cell_masses(depth);
  const std::vector<Cell> floor = chain_floor(mu, depth);
  boost::dynamic_bitset<> bits(fine.size());
  std::map<Cell, bool> full;  // floor -> mu(F \ E) == 0
  for (std::size_t i = 0; i < fine.size(); ++i) {
    if (masses[i] > 0) {
      bits[i] = fine.test(i);
      continue;
    }
    auto [it, fresh] = full.try_emplace(floor[i], true);
    if (fresh)
      for (std::size_t j = 0; j < fine.size() && it->second; ++j)
        if (masses[j] > 0 && !fine.test(j) && h.ancestor(Cell{depth, j}, floor[i].depth) == floor[i])
          it->second = false;
    bits[i] = it->second;
  }
  return CellSet(h, depth, std::move(bits));
}

PointSet density_points_partition(const PointSet& e, const AtomicSpace& space) {
  return LiftingOperator(space).lift(e);
}

}  // namespace vmeas
