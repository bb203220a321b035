#include "doctest.h"
#include "vmeas/laws.hpp"

using namespace vmeas;

TEST_SUITE("laws") {

TEST_CASE("every suite meets its expectations on a small seeded run") {
  SuiteOptions o;
  o.seed = 5;
  o.instances = 8;
  o.atoms = 3;
  for (const std::string& name : suite_names()) {
    CAPTURE(name);
    const LawReport r = run_suite(name, o);
    CHECK_FALSE(r.laws.empty());
    for (const LawResult& l : r.laws) {
      CAPTURE(l.name);
      CAPTURE(l.witness);
      CHECK(l.as_expected());
    }
  }
  CHECK_THROWS_AS(run_suite("no-such-suite", o), std::invalid_argument);
}

TEST_CASE("law reports are reproducible from the seed") {
  SuiteOptions o;
  o.seed = 9;
  o.instances = 6;
  o.atoms = 3;
  CHECK(run_suite("lifting", o).to_json() == run_suite("lifting", o).to_json());
  SuiteOptions p = o;
  p.execution = Execution::Parallel;
  CHECK(run_suite("vector-measure", o).to_json() == run_suite("vector-measure", p).to_json());
}

}  // TEST_SUITE
