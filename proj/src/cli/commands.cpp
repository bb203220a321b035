#include "vmeas/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "vmeas/diff_basis.hpp"
#include "vmeas/disintegration.hpp"
#include "vmeas/fixtures.hpp"
#include "vmeas/laws.hpp"
#include "vmeas/lebesgue.hpp"
#include "vmeas/lower_density.hpp"
#include "vmeas/oracles.hpp"
#include "vmeas/vector_measure.hpp"

namespace vmeas::cli {

using io::Json;

namespace {

// Separate streams for generated objects and sampled points.
constexpr std::uint64_t kPointStream = 0x5eed0001;
constexpr std::uint64_t kObjectStream = 0x5eed0002;

std::int64_t int_field(const Json& j, const char* key, std::int64_t fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ConfigError(path + "." + key + ": expected an integer");
  return j[key].get<std::int64_t>();
}

std::string string_field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string())
    throw ConfigError(path + "." + key + ": expected a string");
  return j[key].get<std::string>();
}

Json require(const ExperimentConfig& c, const std::string& key) {
  auto s = c.section(key);
  if (!s) throw ConfigError(key + ": missing (required by '" + c.command + "')");
  return *s;
}

Json magnitude_json(const Magnitude& m) { return csv_number(m); }

Magnitude max_of(const Magnitude& a, const Magnitude& b) { return compare(a, b) >= 0 ? a : b; }

// ------------------------------------------------------------ model specs

DyadicHierarchy default_hierarchy(const ExperimentConfig& c) {
  const auto dim = int_field(c.document, "dimension", 1, "config");
  if (dim != 1 && dim != 2) throw ConfigError("dimension: must be 1 or 2");
  return DyadicHierarchy(static_cast<int>(dim), c.k_max);
}

BaseMeasure measure_or_lebesgue(const ExperimentConfig& c) {
  if (auto m = c.section("measure")) {
    BaseMeasure mu = io::base_measure_from(*m, "measure");
    if (mu.on_hierarchy() && mu.hierarchy().max_depth() < c.k_max)
      throw ConfigError("measure.hierarchy.max_depth: below kmax " + std::to_string(c.k_max));
    return mu;
  }
  return BaseMeasure::lebesgue(default_hierarchy(c));
}

std::shared_ptr<const Evaluator> evaluator_from(const Json& j, const DyadicHierarchy& h, const ExperimentConfig& c,
                                                const std::string& path) {
  const std::string kind = string_field(j, "kind", path);
  std::optional<Rational> lip;
  if (j.contains("lipschitz")) lip = io::rational_from(j["lipschitz"], path + ".lipschitz");
  if (kind == "polynomial" && j.contains("coefficients")) {
    if (h.dimension() != 1) throw ConfigError(path + ": coefficient lists are for one-dimensional models");
    const Json& cs = j["coefficients"];
    if (!cs.is_array() || cs.empty()) throw ConfigError(path + ".coefficients: expected a nonempty array");
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < cs.size(); ++i)
      coeffs.push_back(io::rational_from(cs[i], path + ".coefficients[" + std::to_string(i) + "]"));
    if (!lip) {
      // sup |p'| on [0,1] is at most sum k |c_k|.
      Rational l = 0;
      for (std::size_t k = 1; k < coeffs.size(); ++k) l += Rational(static_cast<long>(k)) * abs(coeffs[k]);
      lip = l;
    }
    return std::make_shared<PolynomialMap>(PolynomialMap::univariate(std::move(coeffs), lip));
  }
  if (kind == "polynomial") {
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
      throw ConfigError(path + ".terms: expected a nonempty array");
    std::vector<PolynomialMap::Term> terms;
    for (std::size_t i = 0; i < j["terms"].size(); ++i) {
      const Json& t = j["terms"][i];
      const std::string p = path + ".terms[" + std::to_string(i) + "]";
      if (!t.contains("coefficient")) throw ConfigError(p + ".coefficient: missing field");
      terms.push_back({static_cast<int>(int_field(t, "a", 0, p)), static_cast<int>(int_field(t, "b", 0, p)),
                       io::qvec_from(t["coefficient"], p + ".coefficient")});
    }
    const std::size_t m = terms.front().coefficient.dim();
    return std::make_shared<PolynomialMap>(h.dimension(), m, std::move(terms), lip);
  }
  if (kind == "constant") {
    QVec v = io::qvec_from(j.value("value", Json()), path + ".value");
    const std::size_t m = v.dim();
    return std::make_shared<PolynomialMap>(h.dimension(), m, std::vector<PolynomialMap::Term>{{0, 0, std::move(v)}},
                                           Rational(0));
  }
  if (kind == "simple") {
    if (!j.contains("map")) throw ConfigError(path + ".map: missing field");
    return std::make_shared<SimpleMap>(io::simple_map_from(j["map"], &h, 0, path + ".map"));
  }
  if (kind == "random-step") {
    Rng rng(c.require_seed(path + " (random-step)") ^ kObjectStream);
    const auto depth = int_field(j, "depth", 4, path);
    const auto codim = int_field(j, "codim", 1, path);
    if (depth < 0 || depth > std::min(h.max_depth(), h.dimension() == 1 ? 16 : 8) || codim < 1)
      throw ConfigError(path + ": depth or codim out of range");
    return std::make_shared<SimpleMap>(
        fixtures::random_cell_map(rng, h, static_cast<int>(depth), static_cast<std::size_t>(codim)));
  }
  throw ConfigError(path + ".kind: expected polynomial, constant, simple or random-step");
}

std::vector<DyadicPoint> points_for(const ExperimentConfig& c, const DyadicHierarchy& h) {
  Json doc = c.section("points").value_or(Json{{"random", 100}, {"depth", c.k_max}});
  std::vector<DyadicPoint> pts;
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const std::string p = "points[" + std::to_string(i) + "]";
      DyadicPoint x = io::point_from(doc[i], p);
      try {
        h.check_point(x);
      } catch (const std::exception& e) {
        throw ConfigError(p + ": " + e.what());
      }
      pts.push_back(std::move(x));
    }
    return pts;
  }
  if (!doc.is_object() || !doc.contains("random")) throw ConfigError("points: expected a list or {\"random\": N}");
  const auto n = int_field(doc, "random", 100, "points");
  const auto depth = int_field(doc, "depth", c.k_max, "points");
  if (n < 1 || n > 1000000) throw ConfigError("points.random: must lie in [1, 1000000]");
  if (depth < 0 || depth > 62) throw ConfigError("points.depth: must lie in [0, 62]");
  Rng rng(c.require_seed("random points") ^ kPointStream);
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<Rational> coords;
    for (int a = 0; a < h.dimension(); ++a) coords.push_back(rng.dyadic(static_cast<int>(depth)));
    pts.emplace_back(std::move(coords));
  }
  return pts;
}

ScanOptions scan_options(const ExperimentConfig& c) {
  ScanOptions o;
  o.tol = c.tol;
  o.k_max = c.k_max;
  o.quadrature = c.quadrature;
  o.execution = c.execution;
  return o;
}

VectorMeasure omega_from(const ExperimentConfig& c, Norm fallback, bool* fixture_map = nullptr) {
  const Json j = require(c, "omega");
  std::optional<Norm> chosen = c.norm;
  if (!chosen && j.is_object() && !j.contains("norm")) chosen = fallback;
  std::optional<VectorMeasure> omega;
  if (j.is_object() && j.contains("generator")) {
    const std::string g = string_field(j, "generator", "omega");
    if (g == "three-atom") {
      omega = fixtures::three_atom_measure(chosen.value_or(fallback));
      if (fixture_map) *fixture_map = true;
    } else if (g == "random-atoms") {
      Rng rng(c.require_seed("omega (random-atoms)") ^ kObjectStream);
      const auto ground = int_field(j, "ground", 5, "omega");
      const auto codim = int_field(j, "codim", 2, "omega");
      if (ground < 1 || ground > 4096 || codim < 1 || codim > 64) throw ConfigError("omega: ground or codim out of range");
      omega = fixtures::random_atom_list(rng, static_cast<std::size_t>(ground), static_cast<std::size_t>(codim),
                                         chosen.value_or(fallback));
    } else {
      throw ConfigError("omega.generator: expected three-atom or random-atoms");
    }
  } else {
    omega = io::vector_measure_from(j, "omega");
  }
  if (chosen) omega = omega->with_norm(*chosen);
  return *omega;
}

// --------------------------------------------------------------- commands

CommandResult cmd_lebesgue(const ExperimentConfig& c) {
  const BaseMeasure mu = measure_or_lebesgue(c);
  if (!mu.on_hierarchy()) throw ConfigError("measure: lebesgue scans need a hierarchy model");
  const DyadicHierarchy& h = mu.hierarchy();
  const auto v = evaluator_from(require(c, "function"), h, c, "function");
  if (v->dimension() != h.dimension()) throw ConfigError("function: dimension differs from the model");
  const auto points = points_for(c, h);
  const auto reports = lebesgue_point_scan(*v, mu, points, scan_options(c));

  CommandResult r;
  Json items = Json::array();
  std::size_t converged = 0;
  Magnitude worst;
  for (const auto& p : reports) {
    converged += p.converged();
    worst = max_of(worst, p.final_residual());
    items.push_back({{"point", point_label(p.x)},
                     {"value", io::to_json(p.value)},
                     {"converged", p.converged()},
                     {"stable_depth", p.stable_depth},
                     {"final_residual", magnitude_json(p.final_residual())}});
  }
  r.ok = converged == reports.size();
  r.report["items"] = std::move(items);
  r.report["summary"] = {{"points", reports.size()},
                         {"converged", converged},
                         {"converged_fraction", to_string(Rational(converged, std::max<std::size_t>(1, reports.size())))},
                         {"max_residual_at_kmax", magnitude_json(worst)}};
  r.csv = lebesgue_csv(reports);
  return r;
}

CommandResult cmd_rn(const ExperimentConfig& c) {
  const Json doc = require(c, "omega");
  std::optional<VectorMeasure> omega;
  std::optional<BaseMeasure> mu;
  if (auto m = c.section("measure")) mu = io::base_measure_from(*m, "measure");
  if (doc.is_object() && doc.contains("function")) {
    if (!mu) mu = BaseMeasure::lebesgue(default_hierarchy(c));
    if (!mu->on_hierarchy()) throw ConfigError("measure: density functions need a hierarchy model");
    omega = VectorMeasure::density_form(evaluator_from(doc["function"], mu->hierarchy(), c, "omega.function"), *mu,
                                        c.norm.value_or(Norm::L2));
  } else {
    omega = omega_from(c, Norm::L2);
    if (!mu) {
      if (omega->kind() != VectorMeasure::Kind::DensityForm) throw ConfigError("measure: required for atom lists");
      mu = omega->base();
    }
  }

  CommandResult r;
  if (omega->finite()) {
    std::optional<SimpleMap> rn;
    try {
      rn = rn_derivative(*omega, *mu);
    } catch (const AbsoluteContinuityError& e) {
      r.ok = false;
      r.report["error"] = e.what();
      r.report["witness"] = e.witness();
      return r;
    }
    LawResult trip{"round-trip", true, 0, {}, true};
    LawTally t(trip);
    const auto& g = omega->generator_values();
    for (std::size_t i = 0; i < g.size(); ++i) {
      MeasurableSet e = omega->on_cells()
                            ? MeasurableSet(CellSet::of_cell(omega->base().hierarchy(), Cell{omega->native_depth(), i}))
                            : MeasurableSet([&] {
                                PointSet p(g.size());
                                p.set(i);
                                return p;
                              }());
      t.check_lazy(g[i] == bochner_integral_simple(*rn, e, *mu), [&] { return omega->generator_label(i); });
    }
    r.report["derivative"] = io::to_json(*rn);
    r.report["round_trip"] = {{"checked", trip.checked}, {"holds", trip.holds}};
    if (!trip.holds) r.report["round_trip"]["witness"] = trip.witness;
    r.ok = trip.holds;
  }
  if (omega->kind() == VectorMeasure::Kind::DensityForm && mu->on_hierarchy()) {
    if (mu->hierarchy().max_depth() < c.k_max) throw ConfigError("measure.hierarchy.max_depth: below kmax");
    const auto points = points_for(c, mu->hierarchy());
    const auto reports = rn_ratio_scan(*omega, *mu, points, scan_options(c));
    Json items = Json::array();
    std::size_t converged = 0;
    Magnitude worst;
    for (const auto& p : reports) {
      converged += p.converged();
      Json item{{"point", point_label(p.x)},
                {"target", io::to_json(p.target)},
                {"converged", p.converged()},
                {"stable_depth", p.stable_depth}};
      if (!p.chain.empty()) {
        worst = max_of(worst, p.chain.back().residual);
        item["final_residual"] = magnitude_json(p.chain.back().residual);
      }
      if (p.truncated_at) item["truncated_at"] = *p.truncated_at;
      items.push_back(std::move(item));
    }
    r.ok = r.ok && converged == reports.size();
    r.report["items"] = std::move(items);
    r.report["summary"] = {{"points", reports.size()},
                           {"converged", converged},
                           {"max_residual_at_kmax", magnitude_json(worst)}};
    r.csv = rn_csv(reports);
  }
  return r;
}

CommandResult cmd_laws(const ExperimentConfig& c) {
  if (c.suite.empty()) throw ConfigError("suite: give --suite or a \"suite\" field");
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), c.suite) == names.end()) {
    std::string all;
    for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
    throw ConfigError("suite: unknown suite '" + c.suite + "' (expected one of " + all + ")");
  }
  SuiteOptions o;
  o.seed = c.require_seed("the law suites");
  o.instances = static_cast<std::size_t>(int_field(c.document, "instances", 100, "config"));
  o.atoms = static_cast<std::size_t>(int_field(c.document, "atoms", 4, "config"));
  if (o.instances < 1 || o.instances > 100000) throw ConfigError("instances: must lie in [1, 100000]");
  if (o.atoms < 1 || o.atoms > 5) throw ConfigError("atoms: must lie in [1, 5]");
  o.norm = c.norm;
  o.execution = c.execution;
  const LawReport rep = run_suite(c.suite, o);
  CommandResult r;
  r.report["laws"] = rep.to_json();
  std::size_t pass = 0;
  for (const auto& l : rep.laws) pass += l.as_expected();
  r.report["summary"] = {{"laws", rep.laws.size()}, {"as_expected", pass}};
  r.ok = rep.all_as_expected();
  return r;
}

Json disintegration_json(const Disintegration& d) {
  Json mixing = Json::array();
  const auto nu = d.mixing();
  for (std::size_t y = 0; y < nu.size(); ++y) mixing.push_back({{"target", y}, {"nu", magnitude_json(nu[y])}});
  Json fibers = Json::array();
  for (const Fiber& f : d.fibers) {
    Json values = Json::array();
    auto q = f.normalizer.rational();
    for (std::size_t i = 0; i < f.numerators.size(); ++i) {
      if (d.map[i] != f.label || f.numerators[i].is_zero()) continue;
      Json v = Json::array();
      for (const Rational& x : f.numerators[i]) {
        if (q)
          v.push_back(to_string(x / *q));
        else
          v.push_back(Real(to_real(x) / f.normalizer.value()).str(40));
      }
      values.push_back({{"generator", d.source.generator_label(i)}, {"value", v}});
    }
    fibers.push_back({{"label", f.label}, {"nu", magnitude_json(f.normalizer)}, {"values", values}});
  }
  return {{"mixing", mixing}, {"fibers", fibers}};
}

CommandResult cmd_disintegrate(const ExperimentConfig& c) {
  bool fixture_map = false;
  const VectorMeasure omega = omega_from(c, Norm::L1, &fixture_map);
  const std::size_t n = omega.generator_count();
  std::vector<std::size_t> map;
  std::size_t targets = 0;
  if (auto m = c.section("map")) {
    if (m->is_array()) {
      for (std::size_t i = 0; i < m->size(); ++i) {
        if (!(*m)[i].is_number_integer() || (*m)[i].get<std::int64_t>() < 0)
          throw ConfigError("map[" + std::to_string(i) + "]: expected a nonnegative label");
        map.push_back((*m)[i].get<std::size_t>());
      }
    } else if (m->is_object() && m->value("generator", "") == "random") {
      const auto t = int_field(*m, "targets", 2, "map");
      if (t < 1) throw ConfigError("map.targets: must be positive");
      Rng rng(c.require_seed("map (random)") ^ kObjectStream ^ 1);
      for (std::size_t i = 0; i < n; ++i) map.push_back(rng.below(static_cast<std::uint64_t>(t)));
      targets = static_cast<std::size_t>(t);
    } else {
      throw ConfigError("map: expected a label list or {\"generator\": \"random\"}");
    }
  } else if (fixture_map) {
    map = fixtures::three_atom_map();
  } else {
    throw ConfigError("map: missing (required by 'disintegrate')");
  }
  if (map.size() != n) throw ConfigError("map: needs one label per generator (" + std::to_string(n) + ")");
  for (std::size_t y : map) targets = std::max(targets, y + 1);
  targets = static_cast<std::size_t>(int_field(c.document, "targets", static_cast<std::int64_t>(targets), "config"));
  for (std::size_t y : map)
    if (y >= targets) throw ConfigError("targets: smaller than a map label");

  const Disintegration d = disintegrate(omega, map, targets);
  const auto steps = int_field(c.document, "step_functions", 100, "config");
  if (steps < 0 || steps > 100000) throw ConfigError("step_functions: must lie in [0, 100000]");
  const LawReport verify = verify_disintegration(d, {static_cast<std::size_t>(steps), c.seed.value_or(0)});

  CommandResult r;
  r.report["disintegration"] = disintegration_json(d);
  r.report["verify"] = verify.to_json();
  r.ok = verify.all_as_expected();

  if (c.patch) {
    std::vector<boost::dynamic_bitset<>> carriers;
    if (auto ps = c.section("pieces")) {
      if (!ps->is_array()) throw ConfigError("pieces: expected a list of generator lists");
      for (std::size_t k = 0; k < ps->size(); ++k)
        carriers.push_back(io::point_set_from((*ps)[k], n, "pieces[" + std::to_string(k) + "]"));
    } else {
      Rng rng(c.require_seed("--patch with a random split") ^ kObjectStream ^ 2);
      boost::dynamic_bitset<> side(n);
      for (std::size_t i = 0; i < n; ++i) side[i] = rng.coin();
      carriers = {side, ~side};
    }
    std::vector<PatchPiece> pieces;
    Json piece_json = Json::array();
    for (const auto& carrier : carriers) {
      std::vector<Rational> one(n);
      for (std::size_t i = 0; i < n; ++i) one[i] = carrier.test(i) ? 1 : 0;
      const VectorMeasure part = omega.restrict(one);
      piece_json.push_back(io::point_set_json(carrier));
      if (part.total_variation().is_zero())
        pieces.push_back({carrier, Disintegration{part, map, targets, {}}});
      else
        pieces.push_back({carrier, disintegrate(part, map, targets)});
    }
    const Disintegration patched = patch_disintegrations(omega, pieces);
    const UniquenessDistance dist = uniqueness_distance(d, patched);
    const LawReport pv = verify_disintegration(patched, {static_cast<std::size_t>(steps), c.seed.value_or(0)});
    Json pj{{"pieces", piece_json}, {"distance", magnitude_json(dist.distance)}, {"verify", pv.to_json()}};
    if (dist.witness) pj["witness"] = *dist.witness;
    r.report["patch"] = std::move(pj);
    r.ok = r.ok && dist.distance.is_zero() && pv.all_as_expected();
  }
  r.csv = disintegration_csv(d);
  return r;
}

CommandResult cmd_density_points(const ExperimentConfig& c) {
  CommandResult r;
  std::vector<bool> members;
  std::string csv = "x,member\n";
  if (auto s = c.section("set")) {
    const IntervalUnion e = io::interval_union_from(*s, "set");
    r.report["set"] = describe(e);
    r.report["density_points"] = describe(density_points_interval(e));
    if (auto pts = c.section("points")) {
      if (!pts->is_array()) throw ConfigError("points: expected a list of rationals");
      Json items = Json::array();
      for (std::size_t i = 0; i < pts->size(); ++i) {
        const std::string p = "points[" + std::to_string(i) + "]";
        const Rational x = io::rational_from((*pts)[i], p);
        if (!e.ambient().contains(x)) throw ConfigError(p + ": outside the ambient interval");
        members.push_back(density_point_interval(e, x));
        items.push_back({{"x", to_string(x)}, {"member", members.back()}});
        csv += to_string(x) + "," + (members.back() ? "1" : "0") + "\n";
      }
      r.report["points"] = std::move(items);
    }
  } else if (auto cells = c.section("cells")) {
    const BaseMeasure mu = io::base_measure_from(require(c, "measure"), "measure");
    if (!mu.on_hierarchy()) throw ConfigError("measure: cell sets need a hierarchy model");
    const CellSet e = io::cell_set_from(*cells, mu.hierarchy(), "cells");
    const CellSet d = density_points_partition(e, mu);
    r.report["density_points"] = io::to_json(d);
    if (auto pts = c.section("points")) {
      if (!pts->is_array()) throw ConfigError("points: expected a list of points");
      Json items = Json::array();
      for (std::size_t i = 0; i < pts->size(); ++i) {
        const DyadicPoint x = io::point_from((*pts)[i], "points[" + std::to_string(i) + "]");
        members.push_back(d.contains(x));
        items.push_back({{"x", point_label(x)}, {"member", members.back()}});
        csv += point_label(x) + "," + (members.back() ? "1" : "0") + "\n";
      }
      r.report["points"] = std::move(items);
    }
  } else if (auto space = c.section("space")) {
    const AtomicSpace s = io::atomic_space_from(*space, "space");
    const PointSet e = io::point_set_from(require(c, "subset"), s.size(), "subset");
    const PointSet d = density_points_partition(e, s);
    r.report["density_points"] = io::point_set_json(d);
    for (std::size_t p = 0; p < s.size(); ++p) {
      members.push_back(d.test(p));
      csv += std::to_string(p) + "," + (d.test(p) ? "1" : "0") + "\n";
    }
  } else {
    throw ConfigError("density-points: give \"set\", \"cells\" with \"measure\", or \"space\" with \"subset\"");
  }
  if (auto expected = c.section("expected")) {
    if (!expected->is_array() || expected->size() != members.size())
      throw ConfigError("expected: needs one boolean per point");
    bool match = true;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!(*expected)[i].is_boolean()) throw ConfigError("expected[" + std::to_string(i) + "]: expected a boolean");
      match = match && (*expected)[i].get<bool>() == members[i];
    }
    r.report["matches_expected"] = match;
    r.ok = match;
  }
  r.csv = csv;
  return r;
}

CommandResult cmd_variation(const ExperimentConfig& c) {
  const VectorMeasure omega = omega_from(c, Norm::L2);
  const auto& g = omega.generator_values();
  const auto& w = omega.variation().weights();
  CommandResult r;
  Json gens = Json::array();
  std::string csv = "generator,variation\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    gens.push_back({{"generator", omega.generator_label(i)},
                    {"value", io::to_json(g[i])},
                    {"variation", magnitude_json(w[i])}});
    csv += omega.generator_label(i) + "," + csv_number(w[i]) + "\n";
  }
  r.report["generators"] = std::move(gens);
  r.report["total"] = magnitude_json(omega.total_variation());
  if (g.size() <= 8) {
    const Magnitude sup = oracle::partition_supremum(g, omega.norm());
    const bool holds = mag_equal(sup, omega.total_variation());
    r.report["partition_oracle"] = {{"supremum", magnitude_json(sup)}, {"holds", holds}};
    r.ok = r.ok && holds;
  }
  if (g.size() <= 16) {
    bool dominated = true;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.size()); ++m) {
      const boost::dynamic_bitset<> e(g.size(), m);
      dominated = dominated &&
                  mag_less_equal(norm_of(omega.evaluate_generators(e), omega.norm()), omega.variation().of_generators(e));
    }
    r.report["domination"] = dominated;
    r.ok = r.ok && dominated;
  }
  if (omega.kind() == VectorMeasure::Kind::DensityForm) {
    const DensityNormReport dn = density_norm_inequality(omega, omega.base());
    Json levels = Json::array();
    for (const auto& l : dn.levels) {
      Json lj{{"level", l.level},
              {"native", l.native},
              {"cells", l.cells},
              {"strict", l.strict},
              {"violations", l.violations}};
      if (!l.first_strict.empty()) lj["first_strict"] = l.first_strict;
      levels.push_back(std::move(lj));
    }
    r.report["density_norm"] = {
        {"levels", levels}, {"holds", dn.holds()}, {"equality_at_native", dn.equality_at_native()}};
    r.ok = r.ok && dn.holds() && dn.equality_at_native();
  }
  r.csv = csv;
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"lebesgue", "rn", "laws", "disintegrate", "density-points", "variation"};
  return names;
}

CommandResult run_command(const ExperimentConfig& c) {
  CommandResult r;
  if (c.command == "lebesgue") r = cmd_lebesgue(c);
  else if (c.command == "rn") r = cmd_rn(c);
  else if (c.command == "laws") r = cmd_laws(c);
  else if (c.command == "disintegrate") r = cmd_disintegrate(c);
  else if (c.command == "density-points") r = cmd_density_points(c);
  else if (c.command == "variation") r = cmd_variation(c);
  else throw ConfigError("unknown command '" + c.command + "'");
  Json out{{"command", c.command}, {"config", c.echo()}};
  out.update(r.report);
  out["ok"] = r.ok;
  r.report = std::move(out);
  return r;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Experiments on liftings, differentiation, vector measures and disintegrations", "vmeas"};
  std::string command, config_path, out_path, tol, norm, suite;
  std::uint64_t seed = 0;
  int k_max = 0, quadrature = 0;
  bool patch = false, parallel = false;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "JSON config document")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Where to write the CSV export");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized batteries and samples");
  auto* tol_opt = app.add_option("--tol", tol, "Convergence tolerance (rational or decimal)");
  auto* kmax_opt = app.add_option("--kmax", k_max, "Deepest chain depth");
  auto* norm_opt = app.add_option("--norm", norm, "Norm on R^m")->check(CLI::IsMember({"l1", "l2"}));
  auto* q_opt = app.add_option("--quadrature", quadrature, "Midpoint nodes per axis for cell averages");
  app.add_option("--suite", suite, "Law suite for 'laws'");
  app.add_flag("--patch", patch, "Also patch a split of the measure and compare");
  app.add_flag("--parallel", parallel, "Fan point and pair batteries out over threads");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    ExperimentConfig c;
    c.command = command;
    if (!config_path.empty()) {
      c.config_path = config_path;
      c.document = read_document(config_path);
      apply_document(c);
    }
    if (*seed_opt) c.seed = seed;
    if (*tol_opt) {
      try {
        c.tol = parse_rational(tol);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("--tol: ") + e.what());
      }
    }
    if (*kmax_opt) c.k_max = k_max;
    if (*norm_opt) c.norm = parse_norm(norm);
    if (*q_opt) c.quadrature = quadrature;
    if (!suite.empty()) c.suite = suite;
    if (!out_path.empty()) c.out = out_path;
    if (patch) c.patch = true;
    if (parallel) c.execution = Execution::Parallel;
    validate(c);

    const CommandResult r = run_command(c);
    out << r.report.dump(2) << "\n";
    if (!c.out.empty() && !r.csv.empty()) {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw ConfigError("--out: cannot write " + c.out);
      f << r.csv;
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    err << "vmeas " << command << ": " << (r.ok ? "ok" : "criteria not met") << " in " << took.count() << " s\n";
    return r.ok ? 0 : 1;
  } catch (const ConfigError& e) {
    err << "vmeas " << command << ": config error: " << e.what() << "\n";
  } catch (const io::FormatError& e) {
    err << "vmeas " << command << ": config error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "vmeas " << command << ": error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace vmeas::cli
