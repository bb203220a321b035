#include <bit>

#include "doctest.h"
#include "vmeas/diff_basis.hpp"
#include "vmeas/fixtures.hpp"
#include "vmeas/lower_density.hpp"

using namespace vmeas;

namespace {

Rational q(long p, long r = 1) { return Rational(p, r); }

IntervalUnion on(const Interval& amb, std::vector<Interval> pieces) { return IntervalUnion(amb, std::move(pieces)); }

// x is a density point of a grid-aligned union when a window of radius
// below the grid spacing, clipped to the ambient, is covered up to measure 0.
bool window_oracle(const IntervalUnion& e, const Rational& x, const Rational& radius) {
  const Interval& amb = e.ambient();
  const Interval window = Interval::open(std::max(amb.lo, Rational(x - radius)), std::min(amb.hi, Rational(x + radius)));
  const IntervalUnion w(amb, {window});
  return e.intersect(w).length() == w.length();
}

}  // namespace

TEST_SUITE("diff-basis") {

TEST_CASE("ilimit_partition examples") {
  const DyadicHierarchy h(1, 24);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  const CellFunctional ratio = [&](const Cell& c) { return QVec{leb.mass(c) / leb.mass(c)}; };
  const ILimitResult one = ilimit_partition(h, ratio, DyadicPoint{q(5, 16)}, q(1, 100000), 20);
  CHECK(one.converged());
  CHECK(one.value == QVec{1});

  // Cell average of g(t) = t is the midpoint.
  const CellFunctional mid = [&](const Cell& c) {
    const Box b = h.bounds(c);
    return QVec{(b.lo[0] + b.hi[0]) / 2};
  };
  const ILimitResult third = ilimit_partition(h, mid, DyadicPoint{q(1, 3)}, q(1, 100000), 20);
  CHECK(third.converged());
  CHECK(abs(third.value[0] - q(1, 3)) <= pow2(-20));
  CHECK(third.residual <= pow2(-20));

  const CellFunctional flip = [](const Cell& c) { return QVec{c.depth % 2 ? Rational(1) : Rational(-1)}; };
  for (int k : {4, 9, 20}) CHECK_FALSE(ilimit_partition(h, flip, DyadicPoint{q(1, 3)}, q(1, 100000), k).converged());

  CHECK_THROWS(ilimit_partition(h, ratio, DyadicPoint{q(1, 2)}, q(0), 20));
  CHECK_THROWS(ilimit_partition(h, ratio, DyadicPoint{q(1, 2)}, q(1, 10), 3));
}

TEST_CASE("chain limit agrees with a scan of every subcell") {
  Rng rng(23);
  for (int d = 1; d <= 2; ++d) {
    const DyadicHierarchy h(d, 6);
    for (int t = 0; t < 10; ++t) {
      const BaseMeasure mu = fixtures::random_step_measure(rng, h, 2, false);
      const CellSet e(h, 3, boost::dynamic_bitset<>(h.cell_count(3), rng.next()));
      const CellFunctional phi = [&](const Cell& c) { return QVec{measure_within(mu, e, c) / mu.mass(c)}; };
      std::vector<Rational> coords;
      for (int a = 0; a < d; ++a) coords.push_back(rng.dyadic(8));
      const DyadicPoint x(coords);
      const ILimitResult r = ilimit_partition(h, phi, x, q(1, 1000), 6);
      REQUIRE(r.chain.size() == 7);
      for (int k = 0; k <= 6; ++k) {
        // The members of I_x at depth k: every depth-k cell holding x.
        std::vector<QVec> found;
        for (std::uint64_t i = 0; i < h.cell_count(k); ++i)
          if (h.contains(Cell{k, i}, x)) found.push_back(phi(Cell{k, i}));
        REQUIRE(found.size() == 1);
        CHECK(found[0] == r.chain[k]);
      }
      // E is resolved at depth 3, so the chain is constant from there on.
      CHECK(r.converged());
      CHECK(r.value == QVec{e.contains(x) ? Rational(1) : Rational(0)});
    }
  }
}

TEST_CASE("interval counterexample to union preservation") {
  const Interval amb = Interval::closed(-2, 2);
  const IntervalUnion whole = on(amb, {Interval::closed(-1, 1)});
  const IntervalUnion left = on(amb, {Interval::closed(-1, 0)});
  const IntervalUnion right = on(amb, {Interval::closed(0, 1)});
  CHECK(density_point_interval(whole, 0));
  CHECK_FALSE(density_point_interval(left, 0));
  CHECK_FALSE(density_point_interval(right, 0));
  CHECK(density_point_interval(left.unite(right), 0));
  CHECK(density_points_interval(left.unite(right)) == on(amb, {Interval::open(-1, 1)}));
  CHECK_FALSE(density_point_interval(IntervalUnion::empty_in(amb), 0));
  CHECK_THROWS(density_point_interval(whole, 3));
}

TEST_CASE("density_points_interval examples") {
  const Interval amb = Interval::closed(0, 1);
  CHECK(density_points_interval(on(amb, {Interval::closed(0, q(1, 2))})) ==
        on(amb, {Interval::half_open(0, q(1, 2))}));  // 0 is an ambient end
  const Interval wide = Interval::closed(-1, 1);
  CHECK(density_points_interval(on(wide, {Interval::closed(0, q(1, 2))})) == on(wide, {Interval::open(0, q(1, 2))}));
  CHECK(density_points_interval(on(wide, {Interval::closed(0, q(1, 4)), Interval::closed(q(1, 4), q(1, 2))})) ==
        on(wide, {Interval::open(0, q(1, 2))}));
  // A point piece is null and disappears.
  CHECK(density_points_interval(on(wide, {Interval::point(q(1, 3))})).empty());
  CHECK(density_points_interval(on(wide, {Interval::closed(0, q(1, 3)), Interval::point(q(1, 3)),
                                          Interval::open(q(1, 3), q(1, 2))})) == on(wide, {Interval::open(0, q(1, 2))}));
}

TEST_CASE("interval density points match the window oracle") {
  Rng rng(29);
  const Interval amb = Interval::closed(-1, 1);
  const Rational radius = pow2(-8);
  for (int t = 0; t < 300; ++t) {
    const IntervalUnion e = fixtures::random_interval_union(rng, amb, 4, 4);
    const IntervalUnion d = density_points_interval(e);
    for (Rational x = amb.lo; x <= amb.hi; x += pow2(-5)) {
      CHECK(d.contains(x) == window_oracle(e, x, radius));
      CHECK(density_point_interval(e, x) == d.contains(x));
    }
    CHECK(e.symmetric_difference(d).length() == 0);
    const IntervalUnion f = fixtures::random_interval_union(rng, amb, 4, 4);
    CHECK(density_points_interval(e.intersect(f)) == d.intersect(density_points_interval(f)));
    if (e.subset_of(e.unite(f))) CHECK(d.subset_of(density_points_interval(e.unite(f))));
  }
}

TEST_CASE("density_points_partition examples") {
  const DyadicHierarchy h(1, 4);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  CHECK(density_points_partition(CellSet::full(h, 2), leb).same_set(CellSet::full(h, 0)));
  CHECK(density_points_partition(CellSet::from_string(h, 2, "1010"), leb).same_set(CellSet::from_string(h, 2, "1010")));
  const BaseMeasure step = BaseMeasure::step_density(h, 2, {q(1), q(0), q(2), q(1)});
  CHECK(density_points_partition(CellSet::from_string(h, 2, "0100"), step).empty());
  CHECK(density_points_partition(CellSet::full(h, 2), step).same_set(CellSet::full(h, 0)));
  // The null cell 1 sits in the positive parent 0-1, whose positive part is cell 0.
  CHECK(density_points_partition(CellSet::from_string(h, 2, "1000"), step).to_string() == "1100");
  CHECK_THROWS(density_points_partition(CellSet::full(DyadicHierarchy(1, 5), 2), step));
}

TEST_CASE("chain floors") {
  const DyadicHierarchy h(1, 3);
  const BaseMeasure mu = BaseMeasure::step_density(h, 2, {q(0), q(0), q(1), q(1)});
  const auto f = chain_floor(mu, 2);
  CHECK(f[0] == Cell{0, 0});
  CHECK(f[1] == Cell{0, 0});
  CHECK(f[2] == Cell{2, 2});
  const auto deeper = chain_floor(mu, 3);
  CHECK(deeper[1] == Cell{0, 0});
  CHECK(deeper[5] == Cell{3, 5});
  // Both null cells reach the root, which holds two positive cells: a lower
  // density that is not a lifting.
  CHECK_FALSE(leaf_density_preserves_unions(mu, 2));
  CHECK(leaf_density_preserves_unions(BaseMeasure::step_density(h, 2, {q(0), q(1), q(1), q(0)}), 2));
}

TEST_CASE("check_lower_density examples on a 4-cell algebra") {
  const DyadicHierarchy h(1, 3);
  SUBCASE("density points: all axioms and union preservation") {
    const BaseMeasure mu = BaseMeasure::step_density(h, 2, {q(1), q(2), q(1), q(3)});
    const std::function<CellSet(const CellSet&)> d = [&](const CellSet& e) { return density_points_partition(e, mu); };
    const LawReport r = check_lower_density(d, leaf_algebra(mu, 2));
    CHECK(r.all_as_expected());
    CHECK(r.law("union").holds);
    CHECK(r.law("intersection").checked == 256);
  }
  SUBCASE("identity with a null cell breaks null invariance") {
    const BaseMeasure mu = BaseMeasure::step_density(h, 2, {q(1), q(0), q(1), q(1)});
    const std::function<CellSet(const CellSet&)> id = [](const CellSet& e) { return e; };
    const LawReport r = check_lower_density(id, leaf_algebra(mu, 2));
    CHECK_FALSE(r.law("null-invariance").holds);
    CHECK(r.law("intersection").holds);
    CHECK(r.law("union").holds);
  }
  SUBCASE("interval density points do not preserve unions") {
    const Interval amb = Interval::closed(-2, 2);
    const std::function<IntervalUnion(const IntervalUnion&)> d = [](const IntervalUnion& e) {
      return density_points_interval(e);
    };
    LowerDensityOptions opt;
    opt.union_expected = false;
    const LawReport r = check_lower_density(
        d, interval_algebra(amb, {on(amb, {Interval::closed(-1, 0)}), on(amb, {Interval::closed(0, 1)})}), opt);
    CHECK(r.all_as_expected());
    CHECK_FALSE(r.law("union").holds);
    CHECK(r.law("union").witness.find("[-1/1,0/1]") != std::string::npos);
  }
}

TEST_CASE("mask kernel agrees with the generic engine") {
  Rng rng(31);
  for (int t = 0; t < 12; ++t) {
    const DyadicHierarchy h(1, 5);
    const BaseMeasure mu = fixtures::random_step_measure(rng, h, 3, true);
    const auto table = density_point_table(mu, 3);
    std::uint16_t positive = 0;
    const auto masses = mu.cell_masses(3);
    for (int i = 0; i < 8; ++i)
      if (masses[i] > 0) positive |= static_cast<std::uint16_t>(1u << i);
    const MaskLawCounts serial = check_lower_density_masks(table, 8, positive, Execution::Serial);
    const MaskLawCounts parallel = check_lower_density_masks(table, 8, positive, Execution::Parallel);
    CHECK(serial == parallel);
    CHECK(serial.lower_density());
    CHECK(serial.sets == 256);
    CHECK(serial.pairs == 256 * 257 / 2);

    const std::function<CellSet(const CellSet&)> d = [&](const CellSet& e) { return density_points_partition(e, mu); };
    const auto alg = leaf_algebra(mu, 3);
    const LawReport generic = check_lower_density(d, alg, {0, 0, std::nullopt});
    CHECK(generic.all_as_expected());
    for (std::uint32_t e = 0; e < 256; ++e)
      CHECK(d(alg.sets[e]).to_string() == CellSet(h, 3, boost::dynamic_bitset<>(8, table[e])).to_string());
    CHECK((serial.unions == 0) == leaf_density_preserves_unions(mu, 3));
  }
}

TEST_CASE("sandwich between density points and the leaf lifting") {
  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    const DyadicHierarchy h(1, 4);
    const BaseMeasure mu = fixtures::random_step_measure(rng, h, 3, true);
    const LiftingOperator ell = leaf_lifting(mu, 3);
    const std::function<PointSet(const PointSet&)> phi = [&](const PointSet& e) {
      return PointSet(density_points_partition(CellSet(h, 3, e), mu).bits());
    };
    const LawResult s = check_sandwich(phi, ell);
    CHECK(s.holds);
    CHECK(s.checked == ell.space().measurable_sets().size());
  }
}

TEST_CASE("basis checks") {
  const DyadicHierarchy h(2, 3);
  CHECK(check_basis(PartitionBasis{BaseMeasure::lebesgue(h)}).ok());
  CHECK(check_basis(IntervalBasis{Interval::closed(-1, 1)}).ok());
  Rng rng(41);
  CHECK(check_basis(LiftingBasis{LiftingOperator(fixtures::random_atomic_space(rng, 4, 1))}).ok());

  const BaseMeasure mu = BaseMeasure::step_density(DyadicHierarchy(1, 3), 2, {q(0), q(1), q(0), q(0)});
  const auto members = members_at(PartitionBasis{mu}, DyadicPoint{q(1, 16)});
  REQUIRE(members.size() == 2);  // root and [0,1/2); the null cell [0,1/4) is not a member
  CHECK(members.back() == Cell{1, 0});
}

TEST_CASE("lifting-basis limits are values at the atom") {
  const AtomicSpace s({q(1), q(0), q(2)}, {{0, 1}, {2}});
  const LiftingOperator ell(s);
  const auto phi = [&](const PointSet& e) { return QVec{s.measure(e & s.make_set({0}))}; };
  CHECK(ilimit_lifting(ell, phi, 1) == QVec{1});
  CHECK(ilimit_lifting(ell, phi, 2) == QVec{0});
  CHECK(density_points_partition(s.make_set({0}), s) == s.make_set({0, 1}));
}

}  // TEST_SUITE
