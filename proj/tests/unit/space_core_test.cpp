#include <set>

#include "doctest.h"
#include "vmeas/atomic_space.hpp"
#include "vmeas/base_measure.hpp"
#include "vmeas/cell_set.hpp"
#include "vmeas/fixtures.hpp"
#include "vmeas/interval_union.hpp"
#include "vmeas/magnitude.hpp"
#include "vmeas/random.hpp"

using namespace vmeas;

namespace {

Rational q(long p, long r = 1) { return Rational(p, r); }

IntervalUnion unit(std::vector<Interval> pieces) { return IntervalUnion(Interval::closed(0, 1), std::move(pieces)); }

// Probe points for sets whose endpoints sit on the 2^-grid grid: every grid
// point and every midpoint between neighbours.
std::vector<Rational> probes(const Interval& amb, int grid) {
  std::vector<Rational> out;
  const Rational step = (amb.hi - amb.lo) * pow2(-(grid + 1));
  for (Rational x = amb.lo; x <= amb.hi; x += step) out.push_back(x);
  return out;
}

// Lebesgue measure by counting fine cells whose midpoint lies in E; exact for
// grid-aligned unions.
Rational counted_length(const IntervalUnion& e, int grid) {
  const Interval& amb = e.ambient();
  const Rational width = (amb.hi - amb.lo) * pow2(-grid);
  Rational total = 0;
  for (Rational lo = amb.lo; lo < amb.hi; lo += width)
    if (e.contains(lo + width / 2)) total += width;
  return total;
}

}  // namespace

TEST_SUITE("space-core") {

TEST_CASE("rational strings round-trip") {
  CHECK(to_string(q(3, 6)) == "1/2");
  CHECK(to_string(q(0)) == "0/1");
  CHECK(to_string(q(-4)) == "-4/1");
  CHECK(parse_rational("-0.125") == q(-1, 8));
  CHECK(parse_rational("3e-2") == q(3, 100));
  CHECK(parse_rational("7/21") == q(1, 3));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Rational x = rng.small_rational(1000, 997);
    CHECK(parse_rational(to_string(x)) == x);
  }
  CHECK(from_double(0.375) == q(3, 8));
  CHECK(exact_sqrt(q(9, 4)) == q(3, 2));
  CHECK_FALSE(exact_sqrt(q(2)).has_value());
  CHECK(pow2(-3) == q(1, 8));
}

TEST_CASE("magnitudes stay exact on like radicands") {
  const Magnitude r2 = Magnitude::sqrt_of(2);
  const Magnitude sum = r2 + Magnitude::sqrt_of(8);  // sqrt 2 + 2 sqrt 2
  CHECK(sum.is_exact());
  CHECK(mag_equal(sum, Magnitude::sqrt_of(18)));
  const Magnitude mixed = r2 + Magnitude::sqrt_of(3);
  CHECK_FALSE(mixed.is_exact());
  CHECK(std::abs(mixed.to_double() - (std::sqrt(2.0) + std::sqrt(3.0))) < 1e-12);
  CHECK(mag_less(Magnitude::sqrt_of(q(1, 2)), Magnitude::from_rational(1)));
  CHECK(norm_of(QVec{3, -4}, Norm::L2).rational() == q(5));
  CHECK(norm_of(QVec{3, -4}, Norm::L1).rational() == q(7));
  CHECK(parse_norm("l1") == Norm::L1);
  CHECK_THROWS(parse_norm("sup"));
}

TEST_CASE("measure_of examples") {
  const DyadicHierarchy h(1, 4);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  CHECK(leb.measure_of(unit({Interval::half_open(0, q(1, 2))})) == q(1, 2));
  CHECK(leb.measure_of(IntervalUnion::empty_in(Interval::closed(0, 1))) == 0);
  const BaseMeasure step = BaseMeasure::step_density(h, 1, {q(2), q(0)});
  const IntervalUnion e = unit({Interval::half_open(0, q(1, 4)), Interval::half_open(q(1, 2), q(3, 4))});
  CHECK(step.measure_of(e) == q(1, 2));
  CHECK(step.measure_of(CellSet::from_string(h, 2, "1010")) == q(1, 2));
  CHECK(step.measure_of(CellSet::empty(h, 3)) == 0);
}

TEST_CASE("boolean operation examples") {
  const IntervalUnion a = unit({Interval::half_open(0, q(1, 2))});
  const IntervalUnion b = unit({Interval::half_open(q(1, 4), q(3, 4))});
  CHECK(a.symmetric_difference(b) ==
        unit({Interval::half_open(0, q(1, 4)), Interval::half_open(q(1, 2), q(3, 4))}));
  CHECK(a.intersect(a.complement()).empty());
  const DyadicHierarchy h(1, 3);
  CHECK(CellSet::from_string(h, 2, "1010").unite(CellSet::from_string(h, 2, "0110")).to_string() == "1110");
  CHECK_THROWS(a.unite(IntervalUnion::full(Interval::closed(-1, 1))));
  CHECK_THROWS(CellSet::full(h, 1).unite(CellSet::full(DyadicHierarchy(2, 3), 1)));
}

TEST_CASE("cell sets of different depths align before combining") {
  const DyadicHierarchy h(1, 4);
  const CellSet left = CellSet::from_string(h, 1, "10");
  const CellSet quarter = CellSet::from_string(h, 2, "0100");
  CHECK(left.unite(quarter).same_set(left));
  CHECK(left.intersect(quarter).same_set(quarter));
  CHECK(left.refine(3).to_string() == "11110000");
  CHECK(left.refine(3).minimal_depth() == 1);
  CHECK(left.complement().to_string() == "01");
}

TEST_CASE("atoms_of examples") {
  const AtomicSpace s({q(1), q(1), q(2)}, {{0, 1}, {2}});
  const auto atoms = atoms_of(BaseMeasure::atomic(s));
  REQUIRE(atoms.size() == 2);
  CHECK(std::get<PointSet>(atoms[0]) == s.make_set({0, 1}));
  CHECK(std::get<PointSet>(atoms[1]) == s.make_set({2}));

  const DyadicHierarchy h2(1, 2);
  CHECK(atoms_of(BaseMeasure::lebesgue(h2)).size() == 4);

  const BaseMeasure step = BaseMeasure::step_density(h2, 2, {q(0), q(1), q(0), q(3)});
  const auto leaves = atoms_of(step);
  REQUIRE(leaves.size() == 2);
  CHECK(std::get<CellSet>(leaves[0]).to_string() == "0100");
  CHECK(std::get<CellSet>(leaves[1]).to_string() == "0001");
  // Atom property on the 16-set leaf algebra: every subset B has mu(B) = 0
  // or mu(A \ B) = 0.
  for (const auto& a : leaves) {
    const CellSet& atom = std::get<CellSet>(a);
    for (unsigned m = 0; m < 16; ++m) {
      std::string bits;
      for (int i = 0; i < 4; ++i) bits += (m >> i) & 1 ? '1' : '0';
      const CellSet b = CellSet::from_string(h2, 2, bits).intersect(atom);
      CHECK((step.measure_of(b) == 0 || step.measure_of(atom.minus(b)) == 0));
    }
  }
}

TEST_CASE("atomic spaces reject bad partitions") {
  CHECK_THROWS(AtomicSpace({q(1), q(1)}, {{0}}));            // point 1 uncovered
  CHECK_THROWS(AtomicSpace({q(1), q(1)}, {{0, 1}, {1}}));    // overlap
  CHECK_THROWS(AtomicSpace({q(1), q(0)}, {{0}, {1}}));       // null atom
  CHECK_THROWS(AtomicSpace({q(1), q(-1)}, {{0, 1}}));        // negative weight
  const AtomicSpace s = AtomicSpace::from_weights({q(0), q(2), q(0), q(1)});
  CHECK(s.atom_count() == 2);
  CHECK(s.atom_of(0) == s.atom_of(1));
  CHECK(s.atom_of(2) == s.atom_of(1));
  CHECK(s.total_mass() == q(3));
  CHECK(s.is_measurable(s.make_set({0, 1, 2})));
  CHECK(s.is_measurable(s.make_set({0, 2})));  // null, hence measurable
  const AtomicSpace two({q(1), q(1)}, {{0, 1}});
  CHECK_FALSE(two.is_measurable(two.make_set({0})));
}

TEST_CASE("measurable sets of an atomic space are exactly the atom-wise null or conull ones") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const AtomicSpace s = fixtures::random_atomic_space(rng, 1 + rng.below(3), 2);
    REQUIRE(s.size() <= 12);
    std::set<std::string> listed;
    for (const PointSet& e : s.measurable_sets()) {
      std::string str;
      boost::to_string(e, str);
      listed.insert(str);
    }
    std::size_t count = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.size()); ++m) {
      PointSet e(s.size(), m);
      bool ok = true;
      for (std::size_t j = 0; j < s.atom_count(); ++j) {
        const Rational inside = s.measure(e & s.atom(j));
        ok = ok && (inside == 0 || inside == s.atom_mass(j));
      }
      CHECK(s.is_measurable(e) == ok);
      if (!ok) continue;
      ++count;
      std::string str;
      boost::to_string(e, str);
      CHECK(listed.count(str) == 1);
    }
    CHECK(count == listed.size());
  }
}

TEST_CASE("interval unions: normalization, membership and measure") {
  CHECK(unit({Interval::closed(0, q(1, 4)), Interval::closed(q(1, 4), q(1, 2))}) ==
        unit({Interval::closed(0, q(1, 2))}));
  // Open touching pieces leave the shared endpoint out.
  const IntervalUnion gap = unit({Interval::open(0, q(1, 2)), Interval::open(q(1, 2), 1)});
  CHECK(gap.pieces().size() == 2);
  CHECK_FALSE(gap.contains(q(1, 2)));
  CHECK(gap.length() == 1);
  CHECK_THROWS(unit({Interval::closed(q(1, 2), 2)}));

  Rng rng(5);
  const Interval amb = Interval::closed(-1, 1);
  for (int t = 0; t < 300; ++t) {
    const IntervalUnion e = fixtures::random_interval_union(rng, amb, 4, 4);
    const IntervalUnion f = fixtures::random_interval_union(rng, amb, 4, 4);
    // Normalizing twice changes nothing.
    CHECK(IntervalUnion(amb, e.pieces()) == e);
    CHECK(e.length() == counted_length(e, 6));
    for (const Rational& x : probes(amb, 5)) {
      CHECK(e.unite(f).contains(x) == (e.contains(x) || f.contains(x)));
      CHECK(e.intersect(f).contains(x) == (e.contains(x) && f.contains(x)));
      CHECK(e.complement().contains(x) == !e.contains(x));
      CHECK(e.symmetric_difference(f).contains(x) == (e.contains(x) != f.contains(x)));
    }
    // Additivity on the disjoint pair (E \ F, F).
    const IntervalUnion g = e.minus(f);
    CHECK(g.unite(f).length() == g.length() + f.length());
    CHECK(e.unite(f).length() + e.intersect(f).length() == e.length() + f.length());
    CHECK(e.intersect(f).subset_of(e));
  }
}

TEST_CASE("hierarchy cells: partition, nesting, diameters") {
  for (int d = 1; d <= 2; ++d) {
    const DyadicHierarchy h(d, 4);
    for (int k = 0; k <= 4; ++k) {
      CHECK(h.squared_diameter(k) == Rational(d) * pow2(-2 * k));
      Rational volume = 0;
      for (std::uint64_t i = 0; i < h.cell_count(k); ++i) volume += h.cell_volume(k);
      CHECK(volume == 1);
    }
    Rng rng(d);
    for (int t = 0; t < 100; ++t) {
      std::vector<Rational> c;
      for (int a = 0; a < d; ++a) c.push_back(rng.dyadic(6));
      const DyadicPoint x(c);
      const auto chain = h.chain(x, 4);
      for (int k = 0; k <= 4; ++k) {
        CHECK(h.contains(chain[k], x));
        std::size_t holders = 0;
        for (std::uint64_t i = 0; i < h.cell_count(k); ++i)
          if (h.contains(Cell{k, i}, x)) ++holders;
        CHECK(holders == 1);
        if (k > 0) CHECK(h.parent(chain[k]) == chain[k - 1]);
      }
    }
  }
  const DyadicHierarchy h(1, 3);
  CHECK_THROWS(h.check_point(DyadicPoint{1}));
  CHECK(h.cell_containing(DyadicPoint{q(1, 2)}, 1).index == 1);  // half-open cells
}

TEST_CASE("child-sum and refinement laws") {
  Rng rng(17);
  for (int d = 1; d <= 2; ++d) {
    const DyadicHierarchy h(d, 5);
    for (int t = 0; t < 30; ++t) {
      const int depth = static_cast<int>(rng.below(d == 1 ? 4 : 3));
      const BaseMeasure mu = fixtures::random_step_measure(rng, h, depth, true);
      for (int k = 0; k < 4; ++k)
        for (std::uint64_t i = 0; i < h.cell_count(k); ++i) {
          Rational sum = 0;
          for (const Cell& c : h.children(Cell{k, i})) sum += mu.mass(c);
          CHECK(sum == mu.mass(Cell{k, i}));
        }
      boost::dynamic_bitset<> bits(h.cell_count(2));
      for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = rng.coin();
      const CellSet e(h, 2, bits);
      for (int k = 2; k <= 5; ++k) CHECK(mu.measure_of(e.refine(k)) == mu.measure_of(e));
      CHECK(mu.measure_of(e) + mu.measure_of(e.complement()) == mu.total_mass());
    }
  }
}

}  // TEST_SUITE
