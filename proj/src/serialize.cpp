#include "vmeas/serialize.hpp"

namespace vmeas::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw FormatError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(path + "." + key, "missing field");
  return *it;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path, "expected an array");
  return j;
}

std::int64_t integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw FormatError(path, "expected an integer");
  return j.get<std::int64_t>();
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw FormatError(path, "expected true or false");
  return j.get<bool>();
}

// Runs f, reporting library precondition failures against `path`.
template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(path, e.what());
  }
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return guarded(path, [&] { return parse_rational(j.get<std::string>()); });
  if (j.is_number_float()) throw FormatError(path, "write non-integers as strings (\"1/3\", \"0.25\")");
  throw FormatError(path, "expected a rational");
}

Json to_json(const QVec& v) {
  Json out = Json::array();
  for (const Rational& q : v) out.push_back(to_json(q));
  return out;
}

QVec qvec_from(const Json& j, const std::string& path) {
  if (!j.is_array()) return QVec{rational_from(j, path)};  // scalars as 1-vectors
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(rational_from(j[i], at(path, i)));
  return QVec(std::move(c));
}

Json to_json(const DyadicPoint& x) { return to_json(QVec(x.coords())); }

DyadicPoint point_from(const Json& j, const std::string& path) {
  return guarded(path, [&] { return DyadicPoint(qvec_from(j, path).coords()); });
}

Json to_json(const Interval& iv) {
  return {{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

Interval interval_from(const Json& j, const std::string& path) {
  Interval iv{rational_from(field(j, "lo", path), path + ".lo"), rational_from(field(j, "hi", path), path + ".hi")};
  if (j.contains("lo_closed")) iv.lo_closed = boolean(j["lo_closed"], path + ".lo_closed");
  if (j.contains("hi_closed")) iv.hi_closed = boolean(j["hi_closed"], path + ".hi_closed");
  return iv;
}

Json to_json(const IntervalUnion& e) {
  Json pieces = Json::array();
  for (const Interval& p : e.pieces()) pieces.push_back(to_json(p));
  return {{"ambient", to_json(e.ambient())}, {"pieces", pieces}};
}

IntervalUnion interval_union_from(const Json& j, const std::string& path) {
  const Interval ambient = interval_from(field(j, "ambient", path), path + ".ambient");
  const Json& ps = array(field(j, "pieces", path), path + ".pieces");
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i < ps.size(); ++i) pieces.push_back(interval_from(ps[i], at(path + ".pieces", i)));
  return guarded(path, [&] { return IntervalUnion(ambient, std::move(pieces)); });
}

Json to_json(const DyadicHierarchy& h) { return {{"dimension", h.dimension()}, {"max_depth", h.max_depth()}}; }

DyadicHierarchy hierarchy_from(const Json& j, const std::string& path) {
  const auto d = integer(field(j, "dimension", path), path + ".dimension");
  const auto k = integer(field(j, "max_depth", path), path + ".max_depth");
  return guarded(path, [&] { return DyadicHierarchy(static_cast<int>(d), static_cast<int>(k)); });
}

Json to_json(const CellSet& e) { return {{"depth", e.depth()}, {"bits", e.to_string()}}; }

CellSet cell_set_from(const Json& j, const DyadicHierarchy& h, const std::string& path) {
  const auto depth = integer(field(j, "depth", path), path + ".depth");
  const Json& bits = field(j, "bits", path);
  if (!bits.is_string()) throw FormatError(path + ".bits", "expected a bit string");
  return guarded(path, [&] { return CellSet::from_string(h, static_cast<int>(depth), bits.get<std::string>()); });
}

Json point_set_json(const PointSet& e) {
  Json out = Json::array();
  for (auto p = e.find_first(); p != PointSet::npos; p = e.find_next(p)) out.push_back(p);
  return out;
}

PointSet point_set_from(const Json& j, std::size_t ground, const std::string& path) {
  array(j, path);
  PointSet e(ground);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = integer(j[i], at(path, i));
    if (p < 0 || static_cast<std::size_t>(p) >= ground) throw FormatError(at(path, i), "point outside the ground set");
    e.set(static_cast<std::size_t>(p));
  }
  return e;
}

Json to_json(const AtomicSpace& s) {
  Json w = Json::array(), atoms = Json::array();
  for (const Rational& q : s.weights()) w.push_back(to_json(q));
  for (std::size_t a = 0; a < s.atom_count(); ++a) atoms.push_back(s.atom_points(a));
  return {{"weights", w}, {"atoms", atoms}};
}

AtomicSpace atomic_space_from(const Json& j, const std::string& path) {
  const Json& w = array(field(j, "weights", path), path + ".weights");
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < w.size(); ++i) weights.push_back(rational_from(w[i], at(path + ".weights", i)));
  if (!j.contains("atoms")) return guarded(path, [&] { return AtomicSpace::from_weights(std::move(weights)); });
  const Json& a = array(j["atoms"], path + ".atoms");
  std::vector<std::vector<std::size_t>> atoms;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = at(path + ".atoms", i);
    std::vector<std::size_t> pts;
    for (std::size_t k = 0; k < array(a[i], p).size(); ++k) {
      const auto v = integer(a[i][k], at(p, k));
      if (v < 0) throw FormatError(at(p, k), "negative point index");
      pts.push_back(static_cast<std::size_t>(v));
    }
    atoms.push_back(std::move(pts));
  }
  return guarded(path, [&] { return AtomicSpace(std::move(weights), std::move(atoms)); });
}

Json to_json(const BaseMeasure& mu) {
  switch (mu.kind()) {
    case BaseMeasure::Kind::Lebesgue:
      return {{"kind", "lebesgue"}, {"hierarchy", to_json(mu.hierarchy())}};
    case BaseMeasure::Kind::StepDensity: {
      Json d = Json::array();
      for (const Rational& q : mu.densities()) d.push_back(to_json(q));
      return {{"kind", "step"}, {"hierarchy", to_json(mu.hierarchy())}, {"depth", mu.density_depth()}, {"densities", d}};
    }
    case BaseMeasure::Kind::AtomicWeights:
      return {{"kind", "atomic"}, {"space", to_json(mu.space())}};
  }
  return {};
}

BaseMeasure base_measure_from(const Json& j, const std::string& path) {
  const Json& kind = field(j, "kind", path);
  if (kind == "atomic") return BaseMeasure::atomic(atomic_space_from(field(j, "space", path), path + ".space"));
  const DyadicHierarchy h = hierarchy_from(field(j, "hierarchy", path), path + ".hierarchy");
  if (kind == "lebesgue") return BaseMeasure::lebesgue(h);
  if (kind != "step") throw FormatError(path + ".kind", "expected lebesgue, step or atomic");
  const auto depth = integer(field(j, "depth", path), path + ".depth");
  const Json& d = array(field(j, "densities", path), path + ".densities");
  std::vector<Rational> rho;
  for (std::size_t i = 0; i < d.size(); ++i) rho.push_back(rational_from(d[i], at(path + ".densities", i)));
  return guarded(path, [&] { return BaseMeasure::step_density(h, static_cast<int>(depth), std::move(rho)); });
}

Json to_json(const SimpleMap& v) {
  Json pieces = Json::array();
  for (const auto& p : v.pieces()) {
    Json piece{{"value", to_json(p.value)}};
    if (const auto* c = std::get_if<CellSet>(&p.set))
      piece["cells"] = to_json(*c);
    else
      piece["points"] = point_set_json(std::get<PointSet>(p.set));
    pieces.push_back(std::move(piece));
  }
  return {{"codim", v.codim()}, {"pieces", pieces}};
}

SimpleMap simple_map_from(const Json& j, const DyadicHierarchy* h, std::size_t ground, const std::string& path) {
  const auto codim = integer(field(j, "codim", path), path + ".codim");
  if (codim < 1) throw FormatError(path + ".codim", "must be positive");
  const Json& ps = array(field(j, "pieces", path), path + ".pieces");
  std::vector<SimpleMap::Piece> pieces;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string p = at(path + ".pieces", i);
    QVec value = qvec_from(field(ps[i], "value", p), p + ".value");
    if (ps[i].contains("cells")) {
      if (!h) throw FormatError(p + ".cells", "cell pieces need a hierarchy model");
      pieces.push_back({cell_set_from(ps[i]["cells"], *h, p + ".cells"), std::move(value)});
    } else {
      pieces.push_back({point_set_from(field(ps[i], "points", p), ground, p + ".points"), std::move(value)});
    }
  }
  return guarded(path, [&] { return SimpleMap(static_cast<std::size_t>(codim), std::move(pieces)); });
}

Json to_json(const VectorMeasure& omega) {
  if (omega.kind() == VectorMeasure::Kind::AtomList) {
    Json carriers = Json::array();
    for (const auto& c : omega.carriers()) carriers.push_back({{"point", c.point}, {"value", to_json(c.value)}});
    return {{"kind", "atoms"},
            {"ground", omega.ground_size()},
            {"codim", omega.codim()},
            {"norm", std::string(norm_name(omega.norm()))},
            {"carriers", carriers}};
  }
  const SimpleMap* g = omega.simple_density();
  if (!g) throw std::invalid_argument("only simple densities have a JSON form");
  return {{"kind", "density"},
          {"norm", std::string(norm_name(omega.norm()))},
          {"base", to_json(omega.base())},
          {"density", to_json(*g)}};
}

VectorMeasure vector_measure_from(const Json& j, const std::string& path) {
  Norm norm = Norm::L2;
  if (j.is_object() && j.contains("norm")) {
    if (!j["norm"].is_string()) throw FormatError(path + ".norm", "expected l1 or l2");
    norm = guarded(path + ".norm", [&] { return parse_norm(j["norm"].get<std::string>()); });
  }
  const Json& kind = field(j, "kind", path);
  if (kind == "atoms") {
    const auto ground = integer(field(j, "ground", path), path + ".ground");
    const auto codim = integer(field(j, "codim", path), path + ".codim");
    if (ground < 0 || codim < 1) throw FormatError(path, "ground must be >= 0 and codim >= 1");
    const Json& cs = array(field(j, "carriers", path), path + ".carriers");
    std::vector<VectorMeasure::Carrier> carriers;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string p = at(path + ".carriers", i);
      const auto point = integer(field(cs[i], "point", p), p + ".point");
      if (point < 0) throw FormatError(p + ".point", "negative point index");
      carriers.push_back({static_cast<std::size_t>(point), qvec_from(field(cs[i], "value", p), p + ".value")});
    }
    return guarded(path, [&] {
      return VectorMeasure::atom_list(static_cast<std::size_t>(ground), static_cast<std::size_t>(codim),
                                      std::move(carriers), norm);
    });
  }
  if (kind == "values") {
    // Shorthand: one vector per ground point.
    const Json& vs = array(field(j, "values", path), path + ".values");
    std::vector<QVec> values;
    for (std::size_t i = 0; i < vs.size(); ++i) values.push_back(qvec_from(vs[i], at(path + ".values", i)));
    return guarded(path, [&] { return VectorMeasure::from_point_values(values, norm); });
  }
  if (kind != "density") throw FormatError(path + ".kind", "expected atoms, values or density");
  BaseMeasure mu = base_measure_from(field(j, "base", path), path + ".base");
  const DyadicHierarchy* h = mu.on_hierarchy() ? &mu.hierarchy() : nullptr;
  const std::size_t ground = mu.on_hierarchy() ? 0 : mu.space().size();
  SimpleMap g = simple_map_from(field(j, "density", path), h, ground, path + ".density");
  return guarded(path, [&] { return VectorMeasure::density_form(std::move(g), std::move(mu), norm); });
}

}  // namespace vmeas::io
