#include "vmeas/bochner.hpp"

#include <map>
#include <stdexcept>

namespace vmeas {

namespace {

Rational overlap_volume(const Box& a, const Box& b) {
  Rational v = 1;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    const Rational lo = std::max(a.lo[i], b.lo[i]);
    const Rational hi = std::min(a.hi[i], b.hi[i]);
    if (hi <= lo) return 0;
    v *= hi - lo;
  }
  return v;
}

Rational power(const Rational& x, int n) {
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Integral of t^n over [lo, hi].
Rational monomial_integral(const Rational& lo, const Rational& hi, int n) {
  return (power(hi, n + 1) - power(lo, n + 1)) / (n + 1);
}

bool is_cells(const MeasurableSet& s) { return std::holds_alternative<CellSet>(s); }

MeasurableSet meet(const MeasurableSet& a, const MeasurableSet& b) {
  if (a.index() != b.index()) throw std::invalid_argument("sets come from different models");
  if (is_cells(a)) return std::get<CellSet>(a).intersect(std::get<CellSet>(b));
  const auto& pa = std::get<PointSet>(a);
  const auto& pb = std::get<PointSet>(b);
  if (pa.size() != pb.size()) throw std::invalid_argument("point sets over different ground sets");
  return pa & pb;
}

bool is_empty(const MeasurableSet& s) {
  return is_cells(s) ? std::get<CellSet>(s).empty() : std::get<PointSet>(s).none();
}

}  // namespace

PolynomialMap::PolynomialMap(int dimension, std::size_t codim, std::vector<Term> terms, std::optional<Rational> lipschitz)
    : dimension_(dimension), codim_(codim), terms_(std::move(terms)), lipschitz_(std::move(lipschitz)) {
  if (dimension_ != 1 && dimension_ != 2) throw std::invalid_argument("polynomials are in one or two variables");
  for (const Term& t : terms_) {
    if (t.coefficient.dim() != codim_) throw std::invalid_argument("coefficient has the wrong dimension");
    if (t.a < 0 || t.b < 0 || (dimension_ == 1 && t.b != 0)) throw std::invalid_argument("bad monomial exponent");
  }
}

PolynomialMap PolynomialMap::univariate(std::vector<Rational> coefficients, std::optional<Rational> lipschitz) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (coefficients[i] != 0) terms.push_back({static_cast<int>(i), 0, QVec{coefficients[i]}});
  return PolynomialMap(1, 1, std::move(terms), std::move(lipschitz));
}

QVec PolynomialMap::value(const DyadicPoint& x) const {
  if (x.dimension() != dimension_) throw std::invalid_argument("point has the wrong dimension");
  QVec out(codim_);
  for (const Term& t : terms_) {
    Rational m = power(x[0], t.a);
    if (dimension_ == 2) m *= power(x[1], t.b);
    out += t.coefficient * m;
  }
  return out;
}

std::optional<QVec> PolynomialMap::box_integral(const Box& box) const {
  QVec out(codim_);
  for (const Term& t : terms_) {
    Rational m = monomial_integral(box.lo[0], box.hi[0], t.a);
    if (dimension_ == 2) m *= monomial_integral(box.lo[1], box.hi[1], t.b);
    out += t.coefficient * m;
  }
  return out;
}

FunctionEvaluator::FunctionEvaluator(int dimension, std::size_t codim, Fn fn, std::optional<Rational> lipschitz)
    : dimension_(dimension), codim_(codim), fn_(std::move(fn)), lipschitz_(std::move(lipschitz)) {}

QVec FunctionEvaluator::value(const DyadicPoint& x) const {
  std::vector<double> in;
  for (const auto& c : x.coords()) in.push_back(c.convert_to<double>());
  const std::vector<double> out = fn_(in);
  if (out.size() != codim_) throw std::domain_error("callback returned the wrong number of components");
  QVec v(codim_);
  for (std::size_t i = 0; i < codim_; ++i) v[i] = from_double(out[i]);
  return v;
}

SimpleMap::SimpleMap(std::size_t codim, std::vector<Piece> pieces) : codim_(codim), pieces_(std::move(pieces)) {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].value.dim() != codim_) throw std::invalid_argument("piece value has the wrong dimension");
    if (pieces_[i].set.index() != pieces_[0].set.index()) throw std::invalid_argument("pieces mix cell and point sets");
    if (is_cells(pieces_[i].set) &&
        !(std::get<CellSet>(pieces_[i].set).hierarchy() == std::get<CellSet>(pieces_[0].set).hierarchy()))
      throw std::invalid_argument("pieces live on different hierarchies");
    for (std::size_t j = 0; j < i; ++j)
      if (!is_empty(meet(pieces_[i].set, pieces_[j].set))) throw std::invalid_argument("pieces are not disjoint");
  }
}

SimpleMap SimpleMap::from_cells(const DyadicHierarchy& h, int depth, const std::vector<QVec>& values) {
  if (values.size() != h.cell_count(depth)) throw std::invalid_argument("one value per cell expected");
  if (values.empty()) throw std::invalid_argument("no cells");
  std::map<QVec, boost::dynamic_bitset<>> groups;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].is_zero()) continue;
    auto [it, fresh] = groups.try_emplace(values[i], values.size());
    it->second.set(i);
  }
  std::vector<Piece> pieces;
  for (auto& [v, bits] : groups) pieces.push_back({CellSet(h, depth, std::move(bits)), v});
  return SimpleMap(values[0].dim(), std::move(pieces));
}

SimpleMap SimpleMap::from_points(const std::vector<QVec>& values) {
  if (values.empty()) throw std::invalid_argument("no points");
  std::map<QVec, PointSet> groups;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].is_zero()) continue;
    auto [it, fresh] = groups.try_emplace(values[i], values.size());
    it->second.set(i);
  }
  std::vector<Piece> pieces;
  for (auto& [v, bits] : groups) pieces.push_back({std::move(bits), v});
  return SimpleMap(values[0].dim(), std::move(pieces));
}

int SimpleMap::dimension() const {
  for (const Piece& p : pieces_)
    if (is_cells(p.set)) return std::get<CellSet>(p.set).hierarchy().dimension();
  return 1;
}

bool SimpleMap::on_cells() const { return pieces_.empty() || is_cells(pieces_[0].set); }

QVec SimpleMap::value(const DyadicPoint& x) const {
  if (!on_cells()) throw std::invalid_argument("map is defined on points, not on cells");
  for (const Piece& p : pieces_)
    if (std::get<CellSet>(p.set).contains(x)) return p.value;
  return QVec(codim_);
}

QVec SimpleMap::value_at(std::size_t point) const {
  if (on_cells() && !pieces_.empty()) throw std::invalid_argument("map is defined on cells, not on points");
  for (const Piece& p : pieces_) {
    const auto& s = std::get<PointSet>(p.set);
    if (point >= s.size()) throw std::out_of_range("point index out of range");
    if (s.test(point)) return p.value;
  }
  return QVec(codim_);
}

std::optional<QVec> SimpleMap::box_integral(const Box& box) const {
  if (!on_cells()) return std::nullopt;
  QVec out(codim_);
  for (const Piece& p : pieces_) {
    const CellSet& s = std::get<CellSet>(p.set);
    Rational vol = 0;
    for (const Cell& c : s.cells()) vol += overlap_volume(box, s.hierarchy().bounds(c));
    if (vol != 0) out += p.value * vol;
  }
  return out;
}

int SimpleMap::depth() const {
  int d = 0;
  for (const Piece& p : pieces_)
    if (is_cells(p.set)) d = std::max(d, std::get<CellSet>(p.set).depth());
  return d;
}

std::vector<QVec> SimpleMap::cell_values(const DyadicHierarchy& h, int depth) const {
  if (!on_cells()) throw std::invalid_argument("map is defined on points, not on cells");
  if (depth < this->depth()) throw std::invalid_argument("depth coarser than the map");
  std::vector<QVec> out(h.cell_count(depth), QVec(codim_));
  for (const Piece& p : pieces_) {
    const CellSet fine = std::get<CellSet>(p.set).refine(depth);
    for (auto i = fine.bits().find_first(); i != boost::dynamic_bitset<>::npos; i = fine.bits().find_next(i))
      out[i] = p.value;
  }
  return out;
}

std::vector<QVec> SimpleMap::point_values(std::size_t n) const {
  std::vector<QVec> out(n, QVec(codim_));
  for (const Piece& p : pieces_) {
    if (is_cells(p.set)) throw std::invalid_argument("map is defined on cells, not on points");
    const auto& s = std::get<PointSet>(p.set);
    if (s.size() != n) throw std::invalid_argument("ground set size mismatch");
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out[i] = p.value;
  }
  return out;
}

bool operator==(const SimpleMap& a, const SimpleMap& b) {
  if (a.codim_ != b.codim_ || a.pieces_.size() != b.pieces_.size()) return false;
  for (std::size_t i = 0; i < a.pieces_.size(); ++i)
    if (!(a.pieces_[i].value == b.pieces_[i].value) || !(a.pieces_[i].set == b.pieces_[i].set)) return false;
  return true;
}

Rational measure_of(const BaseMeasure& mu, const MeasurableSet& e) {
  return std::visit([&](const auto& s) { return mu.measure_of(s); }, e);
}

Rational measure_within(const BaseMeasure& mu, const CellSet& e, const Cell& cell) {
  const DyadicHierarchy& h = e.hierarchy();
  if (cell.depth >= e.depth()) return e.contains(h.ancestor(cell, e.depth())) ? mu.mass(cell) : Rational(0);
  Rational total = 0;
  for (const Cell& c : h.descendants(cell, e.depth()))
    if (e.contains(c)) total += mu.mass(c);
  return total;
}

QVec bochner_integral_simple(const SimpleMap& v, const MeasurableSet& e, const BaseMeasure& mu) {
  QVec out(v.codim());
  for (const auto& p : v.pieces()) {
    const Rational m = measure_of(mu, meet(e, p.set));
    if (m != 0) out += p.value * m;
  }
  return out;
}

Magnitude integral_of_norm(const SimpleMap& v, const MeasurableSet& e, const BaseMeasure& mu, Norm norm) {
  Magnitude out;
  for (const auto& p : v.pieces()) {
    const Rational m = measure_of(mu, meet(e, p.set));
    if (m != 0) out += norm_of(p.value, norm) * m;
  }
  return out;
}

std::optional<QVec> exact_cell_integral(const Evaluator& v, const Cell& cell, const BaseMeasure& mu) {
  const DyadicHierarchy& h = mu.hierarchy();
  const int dd = mu.density_depth();
  if (mu.kind() == BaseMeasure::Kind::Lebesgue) return v.box_integral(h.bounds(cell));
  if (cell.depth >= dd) {
    auto i = v.box_integral(h.bounds(cell));
    if (!i) return std::nullopt;
    return *i * mu.density_on(cell);
  }
  QVec out(v.codim());
  for (const Cell& c : h.descendants(cell, dd)) {
    const Rational& rho = mu.density_on(c);
    if (rho == 0) continue;
    auto i = v.box_integral(h.bounds(c));
    if (!i) return std::nullopt;
    out += *i * rho;
  }
  return out;
}

CellAverage cell_average(const Evaluator& v, const Cell& cell, const BaseMeasure& mu, int q) {
  const Rational mass = mu.mass(cell);
  if (mass == 0) throw std::domain_error("average over a null cell is undefined");
  if (auto exact = exact_cell_integral(v, cell, mu)) return {*exact / mass, true, std::nullopt};
  if (q < 1) throw std::invalid_argument("quadrature needs at least one node per axis");

  const DyadicHierarchy& h = mu.hierarchy();
  const Box b = h.bounds(cell);
  const int d = h.dimension();
  QVec sum(v.codim());
  Rational weight = 0;
  const int nodes = d == 1 ? q : q * q;
  for (int n = 0; n < nodes; ++n) {
    std::vector<Rational> coords;
    int rest = n;
    for (int axis = 0; axis < d; ++axis) {
      const int j = rest % q;
      rest /= q;
      coords.push_back(b.lo[axis] + (b.hi[axis] - b.lo[axis]) * Rational(2 * j + 1, 2 * q));
    }
    const DyadicPoint node(std::move(coords));
    const Rational rho = mu.density_at(node);
    if (rho == 0) continue;
    sum += v.value(node) * rho;
    weight += rho;
  }
  if (weight == 0) throw std::domain_error("quadrature nodes miss the support of the measure");
  CellAverage out{sum / weight, false, std::nullopt};
  if (auto lip = v.lipschitz(); lip && cell.depth >= mu.density_depth())
    out.squared_error_bound = *lip * *lip * d * pow2(-2 * cell.depth) / (q * q);
  return out;
}

SimpleMap precise_representative(const SimpleMap& v, const BaseMeasure& mu, int depth) {
  if (mu.kind() == BaseMeasure::Kind::AtomicWeights) {
    const AtomicSpace& space = mu.space();
    const std::vector<QVec> values = v.point_values(space.size());
    std::vector<QVec> out(space.size(), QVec(v.codim()));
    for (std::size_t j = 0; j < space.atom_count(); ++j) {
      QVec avg(v.codim());
      for (std::size_t p : space.atom_points(j))
        if (space.weight(p) != 0) avg += values[p] * space.weight(p);
      avg /= space.atom_mass(j);
      for (std::size_t p : space.atom_points(j)) out[p] = avg;
    }
    return SimpleMap::from_points(out);
  }
  const DyadicHierarchy& h = mu.hierarchy();
  std::vector<QVec> values = v.cell_values(h, depth);
  const std::vector<Rational> masses = mu.cell_masses(depth);
  // v is constant on each cell, so its chain averages stop moving at `depth`.
  for (std::size_t i = 0; i < values.size(); ++i)
    if (masses[i] == 0) values[i] = QVec(v.codim());
  return SimpleMap::from_cells(h, depth, values);
}

BundleMembership bundle_membership(const SimpleMap& v, const BanachBundle& bundle) {
  BundleMembership out;
  for (const auto& p : v.pieces()) {
    if (!is_cells(p.set)) throw std::invalid_argument("cell bundle applied to a point map");
    const CellSet& s = std::get<CellSet>(p.set);
    if (s.depth() > bundle.depth()) throw std::invalid_argument("map is finer than the bundle");
    const CellSet fine = s.refine(bundle.depth());
    for (auto i = fine.bits().find_first(); i != boost::dynamic_bitset<>::npos; i = fine.bits().find_next(i)) {
      const Magnitude dev = bundle.fiber(i).distance(p.value);
      if (!dev.is_zero()) out.member = false;
      if (mag_less(out.worst, dev)) out.worst = dev;
    }
  }
  return out;
}

BundleMembership bundle_membership(const SimpleMap& v, const BanachBundle& bundle, const AtomicSpace& space) {
  if (bundle.fiber_count() != space.atom_count()) throw std::invalid_argument("bundle needs one fiber per atom");
  BundleMembership out;
  const std::vector<QVec> values = v.point_values(space.size());
  for (std::size_t p = 0; p < values.size(); ++p) {
    const Magnitude dev = bundle.fiber(space.atom_of(p)).distance(values[p]);
    if (!dev.is_zero()) out.member = false;
    if (mag_less(out.worst, dev)) out.worst = dev;
  }
  return out;
}

}  // namespace vmeas
