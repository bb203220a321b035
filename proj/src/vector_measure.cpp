#include "vmeas/vector_measure.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace vmeas {

namespace {

constexpr std::size_t kMaxGenerators = std::size_t{1} << 20;

DensityNormLevel make_level(std::string name, bool native) {
  DensityNormLevel l;
  l.level = std::move(name);
  l.native = native;
  return l;
}

std::string cell_label(const Cell& c) { return "cell " + std::to_string(c.depth) + ":" + std::to_string(c.index); }

// Omega of every cell at `depth` >= native depth of a simple density form.
std::vector<QVec> cell_values_at(const VectorMeasure& omega, int depth) {
  const BaseMeasure& nu = omega.base();
  std::vector<QVec> g = omega.simple_density()->cell_values(nu.hierarchy(), depth);
  const std::vector<Rational> masses = nu.cell_masses(depth);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] *= masses[i];
  return g;
}

}  // namespace

VariationMeasure::VariationMeasure(std::vector<Magnitude> weights, std::optional<BaseMeasure> cells_base, int depth)
    : weights_(std::move(weights)), base_(std::move(cells_base)), depth_(depth) {}

Magnitude VariationMeasure::total() const {
  Magnitude t;
  for (const auto& w : weights_) t += w;
  return t;
}

Magnitude VariationMeasure::of(const PointSet& e) const {
  if (base_ && base_->on_hierarchy()) throw std::invalid_argument("variation lives on cells");
  if (e.size() != weights_.size()) throw std::invalid_argument("point set over a different ground set");
  Magnitude t;
  for (auto p = e.find_first(); p != PointSet::npos; p = e.find_next(p)) t += weights_[p];
  return t;
}

Magnitude VariationMeasure::of(const CellSet& e) const {
  if (!base_ || !base_->on_hierarchy()) throw std::invalid_argument("variation lives on points");
  const DyadicHierarchy& h = base_->hierarchy();
  Magnitude t;
  if (e.depth() <= depth_) {
    const CellSet fine = e.refine(depth_);
    for (auto i = fine.bits().find_first(); i != boost::dynamic_bitset<>::npos; i = fine.bits().find_next(i))
      t += weights_[i];
    return t;
  }
  for (const Cell& c : e.cells()) {
    const Cell n = h.ancestor(c, depth_);
    const Magnitude& w = weights_[n.index];
    if (w.is_zero()) continue;
    t += w * (base_->mass(c) / base_->mass(n));
  }
  return t;
}

Magnitude VariationMeasure::of_generators(const boost::dynamic_bitset<>& mask) const {
  Magnitude t;
  for (auto i = mask.find_first(); i != boost::dynamic_bitset<>::npos; i = mask.find_next(i)) t += weights_.at(i);
  return t;
}

std::optional<BaseMeasure> VariationMeasure::as_base_measure() const {
  std::vector<Rational> w;
  for (const auto& m : weights_) {
    auto q = m.rational();
    if (!q) return std::nullopt;
    w.push_back(*q);
  }
  if (base_ && base_->on_hierarchy()) {
    const Rational vol = base_->hierarchy().cell_volume(depth_);
    for (auto& x : w) x /= vol;
    return BaseMeasure::step_density(base_->hierarchy(), depth_, std::move(w));
  }
  return BaseMeasure::atomic(AtomicSpace::from_weights(std::move(w)));
}

VectorMeasure VectorMeasure::atom_list(std::size_t ground_size, std::size_t codim, std::vector<Carrier> carriers,
                                       Norm norm) {
  VectorMeasure m;
  m.kind_ = Kind::AtomList;
  m.norm_ = norm;
  m.codim_ = codim;
  m.ground_size_ = ground_size;
  std::set<std::size_t> seen;
  for (const Carrier& c : carriers) {
    if (c.point >= ground_size) throw std::invalid_argument("carrier outside the ground set");
    if (!seen.insert(c.point).second) throw std::invalid_argument("carriers must be distinct");
    if (c.value.dim() != codim) throw std::invalid_argument("carrier vector has the wrong dimension");
  }
  m.carriers_ = std::move(carriers);
  m.build_view();
  return m;
}

VectorMeasure VectorMeasure::from_point_values(const std::vector<QVec>& values, Norm norm) {
  if (values.empty()) throw std::invalid_argument("empty ground set");
  std::vector<Carrier> carriers;
  for (std::size_t p = 0; p < values.size(); ++p)
    if (!values[p].is_zero()) carriers.push_back({p, values[p]});
  return atom_list(values.size(), values[0].dim(), std::move(carriers), norm);
}

VectorMeasure VectorMeasure::density_form(std::shared_ptr<const Evaluator> density, BaseMeasure mu, Norm norm) {
  if (!density) throw std::invalid_argument("missing density");
  VectorMeasure m;
  m.kind_ = Kind::DensityForm;
  m.norm_ = norm;
  m.codim_ = density->codim();
  m.density_ = std::move(density);
  if (mu.on_hierarchy() && m.density_->dimension() != mu.hierarchy().dimension() &&
      !(m.simple_density() && m.simple_density()->pieces().empty()))
    throw std::invalid_argument("density and measure have different dimensions");
  if (mu.kind() == BaseMeasure::Kind::AtomicWeights) {
    if (!m.simple_density() || !(m.simple_density()->on_cells() == false || m.simple_density()->pieces().empty()))
      throw std::invalid_argument("densities on atomic spaces are point maps");
    m.ground_size_ = mu.space().size();
  }
  m.base_ = std::move(mu);
  m.build_view();
  return m;
}

void VectorMeasure::build_view() {
  finite_ = false;
  generators_.clear();
  std::optional<BaseMeasure> var_base;
  if (kind_ == Kind::AtomList) {
    generators_.assign(ground_size_, QVec(codim_));
    for (const Carrier& c : carriers_) generators_[c.point] = c.value;
    depth_ = -1;
    finite_ = true;
  } else if (const SimpleMap* s = simple_density()) {
    if (base_->kind() == BaseMeasure::Kind::AtomicWeights) {
      generators_ = s->point_values(ground_size_);
      for (std::size_t p = 0; p < ground_size_; ++p) generators_[p] *= base_->space().weight(p);
      depth_ = -1;
      finite_ = true;
      var_base = base_;
    } else {
      depth_ = std::max({s->depth(), base_->density_depth(), min_depth_});
      if (base_->hierarchy().cell_count(depth_) <= kMaxGenerators) {
        generators_ = cell_values_at(*this, depth_);
        finite_ = true;
        var_base = base_;
      }
    }
  }
  if (!finite_) {
    variation_.reset();
    return;
  }
  std::vector<Magnitude> w;
  w.reserve(generators_.size());
  for (const QVec& v : generators_) w.push_back(norm_of(v, norm_));
  variation_ = std::make_shared<VariationMeasure>(std::move(w), var_base, depth_);
}

const Evaluator& VectorMeasure::density() const {
  if (!density_) throw std::logic_error("atom lists have no density");
  return *density_;
}

const SimpleMap* VectorMeasure::simple_density() const { return dynamic_cast<const SimpleMap*>(density_.get()); }

const BaseMeasure& VectorMeasure::base() const {
  if (!base_) throw std::logic_error("atom lists have no base measure");
  return *base_;
}

const std::vector<QVec>& VectorMeasure::generator_values() const {
  if (!finite_) throw std::logic_error("measure has no finite view");
  return generators_;
}

std::string VectorMeasure::generator_label(std::size_t g) const {
  if (depth_ < 0) return "point " + std::to_string(g);
  return cell_label(Cell{depth_, g});
}

const VariationMeasure& VectorMeasure::variation() const {
  if (!variation_) throw std::logic_error("variation needs a finite view (atom list or simple density)");
  return *variation_;
}

QVec VectorMeasure::evaluate(const PointSet& e) const {
  if (on_cells() || (kind_ == Kind::DensityForm && base_->on_hierarchy()))
    throw std::invalid_argument("measure lives on cells");
  if (e.size() != ground_size_) throw std::invalid_argument("point set over a different ground set");
  QVec out(codim_);
  for (auto p = e.find_first(); p != PointSet::npos; p = e.find_next(p)) out += generators_[p];
  return out;
}

QVec VectorMeasure::evaluate(const CellSet& e) const {
  if (kind_ != Kind::DensityForm || !base_->on_hierarchy()) throw std::invalid_argument("measure lives on points");
  if (const SimpleMap* s = simple_density()) return bochner_integral_simple(*s, e, *base_);
  QVec out(codim_);
  for (const Cell& c : e.cells()) out += evaluate(c);
  return out;
}

QVec VectorMeasure::evaluate(const Cell& cell) const {
  if (kind_ != Kind::DensityForm || !base_->on_hierarchy()) throw std::invalid_argument("measure lives on points");
  if (const SimpleMap* s = simple_density()) {
    QVec out(codim_);
    for (const auto& p : s->pieces()) {
      const Rational m = measure_within(*base_, std::get<CellSet>(p.set), cell);
      if (m != 0) out += p.value * m;
    }
    return out;
  }
  auto v = exact_cell_integral(*density_, cell, *base_);
  if (!v) throw std::domain_error("density has no exact cell integral");
  return *v;
}

QVec VectorMeasure::evaluate(const MeasurableSet& e) const {
  return std::visit([this](const auto& s) { return evaluate(s); }, e);
}

QVec VectorMeasure::evaluate_generators(const boost::dynamic_bitset<>& mask) const {
  const auto& g = generator_values();
  if (mask.size() != g.size()) throw std::invalid_argument("mask does not match the generators");
  QVec out(codim_);
  for (auto i = mask.find_first(); i != boost::dynamic_bitset<>::npos; i = mask.find_next(i)) out += g[i];
  return out;
}

VectorMeasure VectorMeasure::restrict(const std::vector<Rational>& f) const {
  if (f.size() != generator_count()) throw std::invalid_argument("one factor per generator expected");
  if (kind_ == Kind::AtomList) {
    std::vector<Carrier> carriers;
    for (const Carrier& c : carriers_) carriers.push_back({c.point, c.value * f[c.point]});
    return atom_list(ground_size_, codim_, std::move(carriers), norm_);
  }
  const SimpleMap* s = simple_density();
  if (!s) throw std::invalid_argument("restriction needs a simple density");
  if (depth_ < 0) {
    std::vector<QVec> g = s->point_values(ground_size_);
    for (std::size_t p = 0; p < g.size(); ++p) g[p] *= f[p];
    return density_form(SimpleMap::from_points(g), *base_, norm_);
  }
  std::vector<QVec> g = s->cell_values(base_->hierarchy(), depth_);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] *= f[i];
  // Zero cells drop out of the map; keep the generators of the original view.
  VectorMeasure r = density_form(SimpleMap::from_cells(base_->hierarchy(), depth_, g), *base_, norm_);
  r.min_depth_ = depth_;
  r.build_view();
  return r;
}

VectorMeasure VectorMeasure::with_norm(Norm norm) const {
  VectorMeasure m = *this;
  m.norm_ = norm;
  m.build_view();
  return m;
}

VectorMeasure pushforward(const VectorMeasure& omega, const std::vector<std::size_t>& map, std::size_t target_count) {
  const auto& g = omega.generator_values();
  if (map.size() != g.size()) throw std::invalid_argument("map needs one target per generator");
  std::vector<QVec> out(target_count, QVec(omega.codim()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (map[i] >= target_count) throw std::out_of_range("map target out of range");
    out[map[i]] += g[i];
  }
  std::vector<VectorMeasure::Carrier> carriers;
  for (std::size_t t = 0; t < target_count; ++t)
    if (!out[t].is_zero()) carriers.push_back({t, out[t]});
  return VectorMeasure::atom_list(target_count, omega.codim(), std::move(carriers), omega.norm());
}

std::vector<Magnitude> pushforward_variation(const VectorMeasure& omega, const std::vector<std::size_t>& map,
                                             std::size_t target_count) {
  const auto& w = omega.variation().weights();
  if (map.size() != w.size()) throw std::invalid_argument("map needs one target per generator");
  std::vector<Magnitude> out(target_count);
  for (std::size_t i = 0; i < w.size(); ++i) out.at(map[i]) += w[i];
  return out;
}

std::vector<Rational> StepFunction::on_generators(const VectorMeasure& omega) const {
  std::vector<Rational> f(omega.generator_count());
  for (const auto& [lambda, set] : terms) {
    boost::dynamic_bitset<> mask;
    if (const auto* p = std::get_if<PointSet>(&set)) {
      if (omega.on_cells()) throw std::invalid_argument("point set on a cell measure");
      mask = *p;
    } else {
      const CellSet& c = std::get<CellSet>(set);
      if (!omega.on_cells()) throw std::invalid_argument("cell set on a point measure");
      if (c.depth() > omega.native_depth()) throw std::invalid_argument("step function finer than the generators");
      mask = c.refine(omega.native_depth()).bits();
    }
    if (mask.size() != f.size()) throw std::invalid_argument("set does not match the generators");
    for (auto i = mask.find_first(); i != boost::dynamic_bitset<>::npos; i = mask.find_next(i)) f[i] += lambda;
  }
  return f;
}

QVec bartle_integral(const VectorMeasure& omega, const StepFunction& f) {
  QVec out(omega.codim());
  for (const auto& [lambda, set] : f.terms) out += omega.evaluate(set) * lambda;
  return out;
}

QVec bartle_integral_generators(const VectorMeasure& omega, const std::vector<Rational>& f) {
  const auto& g = omega.generator_values();
  if (f.size() != g.size()) throw std::invalid_argument("one value per generator expected");
  QVec out(omega.codim());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (f[i] != 0) out += g[i] * f[i];
  return out;
}

Magnitude sup_set_norm(const VectorMeasure& omega, bool* exact) {
  std::vector<const QVec*> live;
  for (const QVec& v : omega.generator_values())
    if (!v.is_zero()) live.push_back(&v);
  if (live.size() > 20) {
    if (exact) *exact = false;
    return omega.total_variation();
  }
  if (exact) *exact = true;
  const bool l1 = omega.norm() == Norm::L1;
  QVec sum(omega.codim());
  std::vector<bool> in(live.size(), false);
  Rational best = 0;
  // Gray code: each step toggles one generator.
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << live.size()); ++i) {
    const int b = std::countr_zero(i);
    if (in[b]) sum -= *live[b]; else sum += *live[b];
    in[b] = !in[b];
    const Rational n = l1 ? sum.l1_norm() : sum.squared_norm();
    if (n > best) best = n;
  }
  return l1 ? Magnitude::from_rational(best) : Magnitude::sqrt_of(best);
}

SimpleMap rn_derivative(const VectorMeasure& omega, const BaseMeasure& mu) {
  if (!omega.finite()) throw std::invalid_argument("derivative needs a finite view");
  if (!omega.on_cells()) {
    if (mu.kind() != BaseMeasure::Kind::AtomicWeights || mu.space().size() != omega.ground_size())
      throw std::invalid_argument("measure on a different ground set");
    const auto& g = omega.generator_values();
    std::vector<QVec> out(g.size(), QVec(omega.codim()));
    for (std::size_t p = 0; p < g.size(); ++p) {
      const Rational& w = mu.space().weight(p);
      if (w == 0) {
        if (!g[p].is_zero())
          throw AbsoluteContinuityError("{" + std::to_string(p) + "}", "not absolutely continuous: mass on null point " + std::to_string(p));
        continue;
      }
      out[p] = g[p] / w;
    }
    return SimpleMap::from_points(out);
  }
  if (!mu.on_hierarchy() || !(mu.hierarchy() == omega.base().hierarchy()))
    throw std::invalid_argument("measure on a different hierarchy");
  const int depth = std::max(omega.native_depth(), mu.density_depth());
  std::vector<QVec> g = depth == omega.native_depth() ? omega.generator_values() : cell_values_at(omega, depth);
  const std::vector<Rational> masses = mu.cell_masses(depth);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (masses[i] == 0) {
      if (!g[i].is_zero()) {
        const std::string w = cell_label(Cell{depth, i});
        throw AbsoluteContinuityError(w, "not absolutely continuous: mass on null " + w);
      }
      continue;
    }
    g[i] /= masses[i];
  }
  return SimpleMap::from_cells(mu.hierarchy(), depth, g);
}

std::vector<RnPointReport> rn_ratio_scan(const VectorMeasure& omega, const BaseMeasure& mu,
                                         const std::vector<DyadicPoint>& points, const ScanOptions& options) {
  if (omega.kind() != VectorMeasure::Kind::DensityForm || !mu.on_hierarchy())
    throw std::invalid_argument("ratio scans need a density form on a hierarchy");
  if (options.tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (options.k_max < 4) throw std::invalid_argument("k_max must be at least 4");
  const DyadicHierarchy& h = mu.hierarchy();
  h.check_depth(options.k_max);
  std::optional<SimpleMap> rn;
  if (omega.finite()) {
    rn = rn_derivative(omega, mu);
  } else if (!(mu == omega.base())) {
    throw std::invalid_argument("derivative of a non-simple density is known only against its own base");
  }
  std::vector<RnPointReport> out(points.size());
  for_each_index(points.size(), options.execution, [&](std::size_t i) {
    RnPointReport r;
    r.x = points[i];
    r.target = rn ? rn->value(r.x) : omega.density().value(r.x);
    for (const Cell& c : h.chain(r.x, options.k_max)) {
      const Rational m = mu.mass(c);
      if (m == 0) {
        r.truncated_at = c.depth;
        break;
      }
      RnRow row;
      row.depth = c.depth;
      row.ratio = omega.evaluate(c) / m;
      row.residual = Magnitude::sqrt_of((row.ratio - r.target).squared_norm());
      r.chain.push_back(std::move(row));
    }
    if (!r.truncated_at) {
      std::vector<Rational> dist;
      for (const auto& row : r.chain) dist.push_back((row.ratio - r.chain.back().ratio).max_norm());
      if (cauchy_tail_converged(dist, options.tol, options.k_max, &r.stable_depth) &&
          mag_less_equal(r.chain.back().residual, Magnitude::from_rational(options.tol)))
        r.verdict = ILimitResult::Status::Converged;
    }
    out[i] = std::move(r);
  });
  return out;
}

std::string rn_csv(const std::vector<RnPointReport>& reports) {
  std::ostringstream os;
  const std::size_t m = reports.empty() ? 0 : reports[0].target.dim();
  os << "point,k";
  for (std::size_t i = 0; i < m; ++i) os << ",ratio_" << i;
  os << ",residual\n";
  for (const auto& r : reports)
    for (const auto& row : r.chain) {
      os << point_label(r.x) << "," << row.depth;
      for (const auto& c : row.ratio) os << "," << to_string(c);
      os << "," << csv_number(row.residual) << "\n";
    }
  return os.str();
}

bool DensityNormReport::holds() const {
  for (const auto& l : levels)
    if (l.violations) return false;
  return true;
}

bool DensityNormReport::equality_at_native() const {
  for (const auto& l : levels)
    if (l.native && (l.strict || l.violations)) return false;
  return true;
}

DensityNormReport density_norm_inequality(const VectorMeasure& omega, const BaseMeasure& mu) {
  DensityNormReport report;
  auto compare_level = [&](DensityNormLevel& level, const std::vector<QVec>& values,
                           const std::vector<Magnitude>& variation, const std::vector<Rational>& masses,
                           auto&& label) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (masses[i] == 0) continue;
      ++level.cells;
      // Dividing both sides by mu(c) > 0 does not change the comparison.
      const int c = compare(norm_of(values[i], omega.norm()), variation[i]);
      if (c > 0) ++level.violations;
      if (c < 0 && level.strict++ == 0) level.first_strict = label(i);
    }
  };

  if (!omega.on_cells()) {
    if (mu.kind() != BaseMeasure::Kind::AtomicWeights) throw std::invalid_argument("point measure needs point weights");
    const AtomicSpace& space = mu.space();
    const auto& g = omega.generator_values();
    const auto& w = omega.variation().weights();
    DensityNormLevel points = make_level("points", true);
    compare_level(points, g, w, space.weights(), [](std::size_t i) { return "point " + std::to_string(i); });
    DensityNormLevel atoms = make_level("atoms", false);
    std::vector<QVec> av(space.atom_count(), QVec(omega.codim()));
    std::vector<Magnitude> aw(space.atom_count());
    std::vector<Rational> am(space.atom_count());
    for (std::size_t j = 0; j < space.atom_count(); ++j) {
      for (std::size_t p : space.atom_points(j)) {
        av[j] += g[p];
        aw[j] += w[p];
      }
      am[j] = space.atom_mass(j);
    }
    compare_level(atoms, av, aw, am, [](std::size_t j) { return "atom " + std::to_string(j); });
    DensityNormLevel whole = make_level("X", false);
    compare_level(whole, {omega.evaluate(space.full_set())}, {omega.total_variation()}, {space.total_mass()},
                  [](std::size_t) { return std::string("X"); });
    report.levels = {points, atoms, whole};
    return report;
  }

  if (!mu.on_hierarchy() || !(mu.hierarchy() == omega.base().hierarchy()))
    throw std::invalid_argument("measure on a different hierarchy");
  const DyadicHierarchy& h = mu.hierarchy();
  const int native = std::max(omega.native_depth(), mu.density_depth());
  std::vector<QVec> values = native == omega.native_depth() ? omega.generator_values() : cell_values_at(omega, native);
  std::vector<Magnitude> variation;
  for (const QVec& v : values) variation.push_back(norm_of(v, omega.norm()));
  std::vector<DensityNormLevel> levels;
  for (int k = native; k >= 0; --k) {
    DensityNormLevel level = make_level("depth " + std::to_string(k), k == native);
    compare_level(level, values, variation, mu.cell_masses(k), [&](std::size_t i) { return cell_label(Cell{k, i}); });
    levels.push_back(std::move(level));
    if (k == 0) break;
    std::vector<QVec> up(h.cell_count(k - 1), QVec(omega.codim()));
    std::vector<Magnitude> upv(up.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const Cell p = h.parent(Cell{k, i});
      up[p.index] += values[i];
      upv[p.index] += variation[i];
    }
    values = std::move(up);
    variation = std::move(upv);
  }
  report.levels.assign(levels.rbegin(), levels.rend());
  return report;
}

}  // namespace vmeas
