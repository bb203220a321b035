#include "vmeas/lower_density.hpp"

#include <algorithm>
#include <sstream>

#include "vmeas/diff_basis.hpp"

namespace vmeas {

std::string describe(const PointSet& e) {
  std::string s = "{";
  for (auto p = e.find_first(); p != PointSet::npos; p = e.find_next(p)) {
    if (s.size() > 1) s += ",";
    s += std::to_string(p);
  }
  return s + "}";
}

std::string describe(const IntervalUnion& e) {
  std::ostringstream os;
  if (e.empty()) return "{}";
  bool first = true;
  for (const Interval& p : e.pieces()) {
    if (!first) os << " u ";
    first = false;
    os << (p.lo_closed ? "[" : "(") << to_string(p.lo) << "," << to_string(p.hi) << (p.hi_closed ? "]" : ")");
  }
  return os.str();
}

SetAlgebra<PointSet> atomic_algebra(const AtomicSpace& space) {
  SetAlgebra<PointSet> alg(space.empty_set(), space.full_set());
  alg.sets = space.measurable_sets();
  alg.measure = [space](const PointSet& e) { return space.measure(e); };
  alg.meet = [](const PointSet& a, const PointSet& b) { return a & b; };
  alg.join = [](const PointSet& a, const PointSet& b) { return a | b; };
  alg.symmetric_difference = [](const PointSet& a, const PointSet& b) { return a ^ b; };
  alg.complement = [](const PointSet& a) { return ~a; };
  alg.equal = [](const PointSet& a, const PointSet& b) { return a == b; };
  alg.subset = [](const PointSet& a, const PointSet& b) { return a.is_subset_of(b); };
  alg.describe = [](const PointSet& a) { return describe(a); };
  return alg;
}

SetAlgebra<CellSet> leaf_algebra(const BaseMeasure& mu, int depth) {
  const DyadicHierarchy& h = mu.hierarchy();
  const std::uint64_t n = h.cell_count(depth);
  if (n > 20) throw std::length_error("leaf algebra limited to 20 cells");
  SetAlgebra<CellSet> alg(CellSet::empty(h, depth), CellSet::full(h, depth));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
    alg.sets.emplace_back(h, depth, boost::dynamic_bitset<>(n, mask));
  alg.measure = [mu](const CellSet& e) { return mu.measure_of(e); };
  alg.meet = [](const CellSet& a, const CellSet& b) { return a.intersect(b); };
  alg.join = [](const CellSet& a, const CellSet& b) { return a.unite(b); };
  alg.symmetric_difference = [](const CellSet& a, const CellSet& b) { return a.symmetric_difference(b); };
  alg.complement = [](const CellSet& a) { return a.complement(); };
  alg.equal = [](const CellSet& a, const CellSet& b) { return a.same_set(b); };
  alg.subset = [](const CellSet& a, const CellSet& b) { return a.subset_of(b); };
  alg.describe = [](const CellSet& a) { return a.to_string(); };
  return alg;
}

SetAlgebra<IntervalUnion> interval_algebra(const Interval& ambient, std::vector<IntervalUnion> sets) {
  SetAlgebra<IntervalUnion> alg(IntervalUnion::empty_in(ambient), IntervalUnion::full(ambient));
  alg.sets = std::move(sets);
  alg.measure = [](const IntervalUnion& e) { return e.length(); };
  alg.meet = [](const IntervalUnion& a, const IntervalUnion& b) { return a.intersect(b); };
  alg.join = [](const IntervalUnion& a, const IntervalUnion& b) { return a.unite(b); };
  alg.symmetric_difference = [](const IntervalUnion& a, const IntervalUnion& b) { return a.symmetric_difference(b); };
  alg.complement = [](const IntervalUnion& a) { return a.complement(); };
  alg.equal = [](const IntervalUnion& a, const IntervalUnion& b) { return a == b; };
  alg.subset = [](const IntervalUnion& a, const IntervalUnion& b) { return a.subset_of(b); };
  alg.describe = [](const IntervalUnion& a) { return describe(a); };
  return alg;
}

namespace {

constexpr std::uint64_t kNoWitness = ~std::uint64_t{0};

// One row of unordered pairs (e, f) with f >= e.
void mask_row(const std::vector<std::uint16_t>& phi, std::uint32_t e, std::uint32_t size, std::uint16_t positive,
              MaskLawCounts& c) {
  const std::uint16_t pe = phi[e];
  for (std::uint32_t f = e; f < size; ++f) {
    const std::uint16_t pf = phi[f];
    const std::uint64_t packed = std::uint64_t{e} << 16 | f;
    if (phi[e & f] != (pe & pf)) {
      ++c.intersection;
      c.first_intersection = std::min(c.first_intersection, packed);
    }
    if (phi[e | f] != (pe | pf)) {
      ++c.unions;
      c.first_union = std::min(c.first_union, packed);
    }
    if (((e ^ f) & positive) == 0 && pe != pf) {
      ++c.null_invariance;
      c.first_null = std::min(c.first_null, packed);
    }
  }
  c.pairs += size - e;
}

MaskLawCounts fresh_counts() {
  MaskLawCounts c;
  c.first_intersection = c.first_union = c.first_null = kNoWitness;
  return c;
}

}  // namespace

MaskLawCounts check_lower_density_masks(const std::vector<std::uint16_t>& phi, int cells, std::uint16_t positive,
                                        Execution execution) {
  if (cells < 1 || cells > 16) throw std::invalid_argument("mask kernel handles 1 to 16 cells");
  const std::uint32_t size = std::uint32_t{1} << cells;
  if (phi.size() != size) throw std::invalid_argument("phi table has the wrong size");
  const std::uint16_t all = static_cast<std::uint16_t>(size - 1);
  MaskLawCounts total = fresh_counts();
  total.sets = size;
  if (phi[0] != 0) ++total.empty;
  if (phi[all] != all) ++total.full;
  for (std::uint32_t e = 0; e < size; ++e)
    if (((e ^ phi[e]) & positive) != 0) ++total.ae;

  if (execution == Execution::Serial) {
    for (std::uint32_t e = 0; e < size; ++e) mask_row(phi, e, size, positive, total);
    return total;
  }
#pragma omp parallel
  {
    MaskLawCounts local = fresh_counts();
#pragma omp for schedule(dynamic, 64) nowait
    for (long long e = 0; e < static_cast<long long>(size); ++e)
      mask_row(phi, static_cast<std::uint32_t>(e), size, positive, local);
#pragma omp critical(vmeas_mask_reduce)
    {
      total.pairs += local.pairs;
      total.intersection += local.intersection;
      total.unions += local.unions;
      total.null_invariance += local.null_invariance;
      total.first_intersection = std::min(total.first_intersection, local.first_intersection);
      total.first_union = std::min(total.first_union, local.first_union);
      total.first_null = std::min(total.first_null, local.first_null);
    }
  }
  return total;
}

namespace {

// Positive cells of each cell's chain floor, as masks over the depth-`depth` cells.
std::vector<boost::dynamic_bitset<>> floor_masks(const BaseMeasure& mu, int depth) {
  const DyadicHierarchy& h = mu.hierarchy();
  const std::vector<Rational> masses = mu.cell_masses(depth);
  const std::vector<Cell> floor = chain_floor(mu, depth);
  std::vector<boost::dynamic_bitset<>> out(masses.size(), boost::dynamic_bitset<>(masses.size()));
  for (std::size_t i = 0; i < masses.size(); ++i)
    for (std::size_t j = 0; j < masses.size(); ++j)
      out[i][j] = masses[j] > 0 && h.ancestor(Cell{depth, j}, floor[i].depth) == floor[i];
  return out;
}

}  // namespace

std::vector<std::uint16_t> density_point_table(const BaseMeasure& mu, int depth) {
  const DyadicHierarchy& h = mu.hierarchy();
  const std::uint64_t n = h.cell_count(depth);
  if (n > 16 || depth < mu.density_depth()) throw std::invalid_argument("table needs <= 16 cells at or below the density depth");
  const auto floors = floor_masks(mu, depth);
  std::vector<std::uint32_t> need(n);
  for (std::uint64_t i = 0; i < n; ++i) need[i] = static_cast<std::uint32_t>(floors[i].to_ulong());
  std::vector<std::uint16_t> table(std::size_t{1} << n);
  for (std::uint32_t e = 0; e < table.size(); ++e) {
    std::uint32_t d = 0;
    for (std::uint64_t i = 0; i < n; ++i)
      if ((e & need[i]) == need[i]) d |= std::uint32_t{1} << i;
    table[e] = static_cast<std::uint16_t>(d);
  }
  return table;
}

bool leaf_density_preserves_unions(const BaseMeasure& mu, int depth) {
  for (const auto& m : floor_masks(mu, depth))
    if (m.count() != 1) return false;
  return true;
}

LawReport mask_counts_report(const MaskLawCounts& c, bool union_expected) {
  LawReport r{"lower-density-masks", {}};
  auto put = [&](const std::string& name, std::uint64_t violations, std::uint64_t checked, std::uint64_t first,
                 bool expected) {
    LawResult& law = r.add(name, expected);
    law.checked = checked;
    law.holds = violations == 0;
    if (!law.holds && first != kNoWitness)
      law.witness = "E=" + std::to_string(first >> 16) + " F=" + std::to_string(first & 0xffff);
    else if (!law.holds)
      law.witness = std::to_string(violations) + " violations";
  };
  put("empty", c.empty, 1, kNoWitness, true);
  put("full", c.full, 1, kNoWitness, true);
  put("a.e.-representative", c.ae, c.sets, kNoWitness, true);
  put("intersection", c.intersection, c.pairs, c.first_intersection, true);
  put("null-invariance", c.null_invariance, c.pairs, c.first_null, true);
  put("union", c.unions, c.pairs, c.first_union, union_expected);
  return r;
}

LiftingOperator leaf_lifting(const BaseMeasure& mu, int depth) {
  const auto floors = floor_masks(mu, depth);
  std::vector<std::vector<std::size_t>> atoms(floors.size());
  for (std::size_t i = 0; i < floors.size(); ++i) atoms[floors[i].find_first()].push_back(i);
  std::erase_if(atoms, [](const auto& a) { return a.empty(); });
  return LiftingOperator(AtomicSpace(mu.cell_masses(depth), std::move(atoms)));
}

LawResult check_sandwich(const std::function<PointSet(const PointSet&)>& phi, const LiftingOperator& ell) {
  LawResult law{"sandwich", true, 0, {}, true};
  LawTally tally(law);
  for (const PointSet& e : ell.space().measurable_sets()) {
    const PointSet le = ell.lift(e);
    const PointSet upper = ~phi(~e);
    tally.check_lazy(phi(e).is_subset_of(le) && le.is_subset_of(upper), [&] { return "E=" + describe(e); });
  }
  return law;
}

}  // namespace vmeas
