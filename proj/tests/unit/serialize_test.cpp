#include "doctest.h"
#include "vmeas/fixtures.hpp"
#include "vmeas/serialize.hpp"

using namespace vmeas;
using io::Json;

namespace {

Rational q(long p, long r = 1) { return Rational(p, r); }

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("rationals and points") {
  CHECK(io::to_json(q(-3, 4)) == Json("-3/4"));
  CHECK(io::rational_from(Json(5)) == q(5));
  CHECK(io::rational_from(Json("0.125")) == q(1, 8));
  CHECK(io::rational_from(Json("6/8")) == q(3, 4));
  CHECK(io::rational_from(Json("010/03")) == q(10, 3));
  CHECK(io::rational_from(Json("-0.05e1")) == q(-1, 2));
  CHECK_THROWS_AS(io::rational_from(Json("1/0")), io::FormatError);
  CHECK_THROWS_AS(io::rational_from(Json(true)), io::FormatError);
  const DyadicPoint x{q(1, 3), q(5, 8)};
  CHECK(io::point_from(io::to_json(x)) == x);
  CHECK(io::qvec_from(Json::parse(R"(["1/2", 3])")) == QVec{q(1, 2), q(3)});
}

TEST_CASE("format errors name the field") {
  const Json j = Json::parse(R"({"weights": [1, "x"], "atoms": [[0, 1]]})");
  try {
    io::atomic_space_from(j, "space");
    FAIL("accepted a bad weight");
  } catch (const io::FormatError& e) {
    CHECK(e.path() == "space.weights[1]");
  }
}

TEST_CASE("model objects round-trip") {
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    const AtomicSpace s = fixtures::random_atomic_space(rng, 1 + rng.below(5), 2);
    const Json js = io::to_json(s);
    CHECK(io::to_json(io::atomic_space_from(js)) == js);
    const BaseMeasure a = BaseMeasure::atomic(s);
    CHECK(io::to_json(io::base_measure_from(io::to_json(a))) == io::to_json(a));
    const PointSet e = fixtures::random_measurable(s, rng);
    CHECK(io::point_set_from(io::point_set_json(e), s.size()) == e);
  }
  for (int d = 1; d <= 2; ++d) {
    const DyadicHierarchy h(d, 6);
    CHECK(io::hierarchy_from(io::to_json(h)).dimension() == d);
    for (int t = 0; t < 10; ++t) {
      const BaseMeasure mu = fixtures::random_step_measure(rng, h, 2, true);
      const Json jm = io::to_json(mu);
      CHECK(io::to_json(io::base_measure_from(jm)) == jm);
      const CellSet c(h, 3, boost::dynamic_bitset<>(h.cell_count(3), rng.next()));
      CHECK(io::cell_set_from(io::to_json(c), h) == c);
      const SimpleMap v = fixtures::random_cell_map(rng, h, 2, 2);
      CHECK(io::simple_map_from(io::to_json(v), &h, 0) == v);
    }
  }
  const IntervalUnion u(Interval::closed(q(-1), q(1)), {Interval{q(0), q(1, 2), false, true}});
  CHECK(io::to_json(io::interval_union_from(io::to_json(u))) == io::to_json(u));
}

}  // TEST_SUITE
