#include <cmath>

#include "doctest.h"
#include "vmeas/bochner.hpp"
#include "vmeas/bundle.hpp"
#include "vmeas/fixtures.hpp"
#include "vmeas/lebesgue.hpp"

using namespace vmeas;

namespace {

Rational q(long p, long r = 1) { return Rational(p, r); }

MeasurableSet cells(const DyadicHierarchy& h, int depth, const char* bits) {
  return CellSet::from_string(h, depth, bits);
}

}  // namespace

TEST_SUITE("bochner") {

TEST_CASE("bochner_integral_simple examples") {
  const DyadicHierarchy h(1, 6);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  const SimpleMap half(2, {{cells(h, 1, "10"), QVec{2, 0}}});
  CHECK(bochner_integral_simple(half, CellSet::full(h, 0), leb) == QVec{1, 0});
  CHECK(bochner_integral_simple(SimpleMap::zero(2), CellSet::full(h, 0), leb) == QVec{0, 0});
  const SimpleMap two(2, {{cells(h, 2, "1000"), QVec{1, 1}}, {cells(h, 1, "01"), QVec{0, 2}}});
  CHECK(bochner_integral_simple(two, cells(h, 1, "10"), leb) == QVec{q(1, 4), q(1, 4)});
  CHECK_THROWS(SimpleMap(1, {{cells(h, 1, "11"), QVec{1}}, {cells(h, 2, "1000"), QVec{2}}}));  // overlap
}

TEST_CASE("bochner integral: linearity and the norm inequality") {
  Rng rng(61);
  for (int d = 1; d <= 2; ++d) {
    const DyadicHierarchy h(d, 6);
    for (int t = 0; t < 40; ++t) {
      const BaseMeasure mu = fixtures::random_step_measure(rng, h, 1, true);
      const SimpleMap v = fixtures::random_cell_map(rng, h, 2, 2);
      const SimpleMap w = fixtures::random_cell_map(rng, h, 2, 2);
      const CellSet e(h, 2, boost::dynamic_bitset<>(h.cell_count(2), rng.next()));
      const Rational a = rng.small_rational(5, 3);
      const auto vv = v.cell_values(h, 2), wv = w.cell_values(h, 2);
      std::vector<QVec> comb(vv.size());
      for (std::size_t i = 0; i < vv.size(); ++i) comb[i] = vv[i] * a + wv[i];
      const SimpleMap sum = SimpleMap::from_cells(h, 2, comb);
      CHECK(bochner_integral_simple(sum, e, mu) ==
            bochner_integral_simple(v, e, mu) * a + bochner_integral_simple(w, e, mu));
      // Cell by cell: sum over cells in E of v(c) mu(c).
      QVec direct(2);
      const auto masses = mu.cell_masses(2);
      for (std::size_t i = 0; i < vv.size(); ++i)
        if (e.test(i)) direct += vv[i] * masses[i];
      CHECK(bochner_integral_simple(v, e, mu) == direct);
      for (Norm n : {Norm::L1, Norm::L2})
        CHECK(mag_less_equal(norm_of(bochner_integral_simple(v, e, mu), n), integral_of_norm(v, e, mu, n)));
    }
  }
}

TEST_CASE("cell_average examples") {
  const DyadicHierarchy h(1, 8);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  const PolynomialMap c = PolynomialMap::univariate({q(5, 3)});
  for (std::uint64_t i = 0; i < 4; ++i) CHECK(cell_average(c, Cell{2, i}, leb).value == QVec{q(5, 3)});
  const PolynomialMap t = PolynomialMap::univariate({0, 1});
  const CellAverage a = cell_average(t, Cell{2, 1}, leb);
  CHECK(a.exact);
  CHECK(a.value == QVec{q(3, 8)});
  // Step map across its pieces: mass-weighted mean.
  const SimpleMap step(1, {{cells(h, 2, "0100"), QVec{4}}});
  const BaseMeasure mu = BaseMeasure::step_density(h, 2, {q(1), q(3), q(1), q(1)});
  CHECK(cell_average(step, Cell{1, 0}, mu).value == QVec{q(3)});  // (4 * 3/4) / 1
  CHECK(cell_average(step, Cell{1, 0}, mu).value ==
        bochner_integral_simple(step, CellSet::of_cell(h, Cell{1, 0}), mu) / mu.mass(Cell{1, 0}));
  const BaseMeasure holes = BaseMeasure::step_density(h, 1, {q(0), q(1)});
  CHECK_THROWS_AS(cell_average(t, Cell{2, 0}, holes), std::domain_error);
}

TEST_CASE("quadrature error stays within the stated bound") {
  const DyadicHierarchy h(1, 10);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  const FunctionEvaluator sine(1, 1, [](const std::vector<double>& x) { return std::vector<double>{std::sin(3 * x[0])}; },
                               Rational(3));
  for (int k : {0, 2, 5})
    for (std::uint64_t i = 0; i < h.cell_count(k); i += 3) {
      const CellAverage a = cell_average(sine, Cell{k, i}, leb, 8);
      REQUIRE(a.squared_error_bound.has_value());
      const double lo = static_cast<double>(i) / (1 << k), hi = static_cast<double>(i + 1) / (1 << k);
      const double truth = (std::cos(3 * lo) - std::cos(3 * hi)) / (3 * (hi - lo));
      const double err = std::abs(a.value[0].convert_to<double>() - truth);
      CHECK(err * err <= a.squared_error_bound->convert_to<double>() + 1e-15);
    }
}

TEST_CASE("lebesgue_point_scan examples") {
  const DyadicHierarchy h(1, 24);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  ScanOptions opt;
  opt.k_max = 20;
  opt.tol = Rational(1, 100000);
  const PolynomialMap sq = PolynomialMap::univariate({0, 0, 1}, Rational(2));
  const LebesguePointReport r = lebesgue_point(sq, leb, DyadicPoint{q(1, 3)}, opt);
  CHECK(r.converged());
  CHECK(r.value == QVec{q(1, 9)});
  REQUIRE(r.chain.size() == 21);
  for (const LebesgueRow& row : r.chain) {
    // [a, b) with b - a = 2^-k: the average of t^2 is (a^2 + ab + b^2)/3.
    const Cell c = h.cell_containing(DyadicPoint{q(1, 3)}, row.depth);
    const Box b = h.bounds(c);
    const Rational avg = (b.lo[0] * b.lo[0] + b.lo[0] * b.hi[0] + b.hi[0] * b.hi[0]) / 3;
    CHECK(row.average == QVec{avg});
    CHECK(row.exact);
    CHECK_FALSE(row.deviation_exact);
    CHECK(mag_less_equal(row.residual, Magnitude::from_rational(2 * pow2(-row.depth) + pow2(-2 * row.depth))));
  }

  const SimpleMap step(1, {{cells(h, 1, "10"), QVec{1}}});
  const LebesguePointReport edge = lebesgue_point(step, leb, DyadicPoint{q(1, 2)}, opt);
  CHECK(edge.converged());
  CHECK(edge.value == QVec{0});
  for (const LebesgueRow& row : edge.chain) {
    CHECK(row.deviation_exact);
    if (row.depth >= 1) CHECK(row.residual.is_zero());
  }

  const SimpleMap inner(1, {{cells(h, 3, "00100000"), QVec{q(5, 2)}}});
  const LebesguePointReport in = lebesgue_point(inner, leb, DyadicPoint{q(5, 16)}, opt);
  CHECK(in.converged());
  for (const LebesgueRow& row : in.chain) CHECK(row.residual.is_zero() == (row.depth >= 3));
}

TEST_CASE("parallel scans match the serial reference") {
  const DyadicHierarchy h(2, 16);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  const PolynomialMap p(2, 2, {{1, 0, QVec{1, 0}}, {0, 2, QVec{0, 3}}, {1, 1, QVec{q(-1, 2), 1}}});
  Rng rng(67);
  std::vector<DyadicPoint> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(DyadicPoint{rng.dyadic(16), rng.dyadic(16)});
  ScanOptions opt;
  opt.k_max = 14;
  opt.tol = Rational(1, 100);
  const auto serial = lebesgue_point_scan(p, leb, pts, opt);
  opt.execution = Execution::Parallel;
  const auto parallel = lebesgue_point_scan(p, leb, pts, opt);
  CHECK(lebesgue_csv(serial) == lebesgue_csv(parallel));
  for (const auto& r : serial) CHECK(r.converged());
}

TEST_CASE("precise representative") {
  const DyadicHierarchy h(1, 4);
  const BaseMeasure mu = BaseMeasure::step_density(h, 2, {q(1), q(0), q(2), q(1)});
  const SimpleMap v = SimpleMap::from_cells(h, 2, {QVec{1}, QVec{9}, QVec{3}, QVec{3}});
  const SimpleMap w = SimpleMap::from_cells(h, 2, {QVec{1}, QVec{-4}, QVec{3}, QVec{3}});
  const SimpleMap pv = precise_representative(v, mu, 2);
  CHECK(pv.cell_values(h, 2) == std::vector<QVec>{QVec{1}, QVec{0}, QVec{3}, QVec{3}});
  CHECK(precise_representative(w, mu, 2) == pv);
  CHECK(precise_representative(pv, mu, 2) == pv);
  const SimpleMap c(1, {{CellSet::full(h, 0), QVec{7}}});
  CHECK(precise_representative(c, BaseMeasure::lebesgue(h), 2).cell_values(h, 2) == c.cell_values(h, 2));
  // Atomic spaces: the atom average.
  const AtomicSpace s({q(1), q(0), q(3)}, {{0, 1}, {2}});
  const SimpleMap pts = SimpleMap::from_points({QVec{2}, QVec{100}, QVec{-1}});
  CHECK(precise_representative(pts, BaseMeasure::atomic(s), 0).point_values(3) ==
        std::vector<QVec>{QVec{2}, QVec{2}, QVec{-1}});
}

TEST_CASE("bundle membership examples") {
  const DyadicHierarchy h(1, 3);
  const BanachBundle line = BanachBundle::constant(2, 1, 2, Subspace::span(2, {QVec{1, 0}}));
  CHECK(bundle_membership(SimpleMap(2, {{cells(h, 1, "10"), QVec{3, 0}}}), line).member);
  const BundleMembership off = bundle_membership(SimpleMap(2, {{cells(h, 1, "10"), QVec{0, 1}}}), line);
  CHECK_FALSE(off.member);
  CHECK(mag_equal(off.worst, Magnitude::from_rational(1)));
  const BanachBundle plane = BanachBundle::constant(2, 1, 2, Subspace::whole(2));
  CHECK(bundle_membership(SimpleMap(2, {{cells(h, 1, "01"), QVec{-5, q(2, 7)}}}), plane).member);
}

}  // TEST_SUITE
