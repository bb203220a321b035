#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "vmeas/base_measure.hpp"
#include "vmeas/bochner.hpp"
#include "vmeas/vector_measure.hpp"

/// JSON forms of the model objects. Rationals are written as "p/q" strings;
/// readers also take integers and exact decimals. Every writer round-trips.
namespace vmeas::io {

using Json = nlohmann::json;

/// Malformed document; `path` locates the offending field ("measure.weights[3]").
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json to_json(const Rational& q);
Rational rational_from(const Json& j, const std::string& path = "value");

Json to_json(const QVec& v);
QVec qvec_from(const Json& j, const std::string& path = "vector");

Json to_json(const DyadicPoint& x);
DyadicPoint point_from(const Json& j, const std::string& path = "point");

/// {"lo", "hi", "lo_closed", "hi_closed"}.
Json to_json(const Interval& iv);
Interval interval_from(const Json& j, const std::string& path = "interval");
/// {"ambient", "pieces"}.
Json to_json(const IntervalUnion& e);
IntervalUnion interval_union_from(const Json& j, const std::string& path = "set");

/// {"dimension", "max_depth"}.
Json to_json(const DyadicHierarchy& h);
DyadicHierarchy hierarchy_from(const Json& j, const std::string& path = "hierarchy");
/// {"depth", "bits"} with bits as in CellSet::to_string.
Json to_json(const CellSet& e);
CellSet cell_set_from(const Json& j, const DyadicHierarchy& h, const std::string& path = "cells");

Json point_set_json(const PointSet& e);
PointSet point_set_from(const Json& j, std::size_t ground, const std::string& path = "points");

/// {"weights", "atoms"}.
Json to_json(const AtomicSpace& s);
AtomicSpace atomic_space_from(const Json& j, const std::string& path = "space");

/// {"kind": "lebesgue" | "step" | "atomic", ...}.
Json to_json(const BaseMeasure& mu);
BaseMeasure base_measure_from(const Json& j, const std::string& path = "measure");

/// {"codim", "pieces": [{"cells" | "points", "value"}]}. Cell pieces need
/// the hierarchy, point pieces the ground size.
Json to_json(const SimpleMap& v);
SimpleMap simple_map_from(const Json& j, const DyadicHierarchy* h, std::size_t ground,
                          const std::string& path = "map");

/// Finite views only: {"kind": "atoms", "ground", "codim", "norm", "carriers"}
/// or {"kind": "density", "norm", "base", "density"}.
Json to_json(const VectorMeasure& omega);
VectorMeasure vector_measure_from(const Json& j, const std::string& path = "omega");

}  // namespace vmeas::io
