#include "vmeas/base_measure.hpp"

#include <stdexcept>

namespace vmeas {

BaseMeasure BaseMeasure::lebesgue(const DyadicHierarchy& h) {
  BaseMeasure m;
  m.kind_ = Kind::Lebesgue;
  m.hierarchy_ = h;
  m.density_depth_ = 0;
  m.densities_ = {Rational(1)};
  return m;
}

BaseMeasure BaseMeasure::step_density(const DyadicHierarchy& h, int depth, std::vector<Rational> densities) {
  h.check_depth(depth);
  if (densities.size() != h.cell_count(depth))
    throw std::invalid_argument("step density needs one value per depth-" + std::to_string(depth) + " cell");
  for (const auto& d : densities)
    if (d < 0) throw std::invalid_argument("densities must be nonnegative");
  BaseMeasure m;
  m.kind_ = Kind::StepDensity;
  m.hierarchy_ = h;
  m.density_depth_ = depth;
  m.densities_ = std::move(densities);
  return m;
}

BaseMeasure BaseMeasure::atomic(AtomicSpace space) {
  BaseMeasure m;
  m.kind_ = Kind::AtomicWeights;
  m.space_ = std::make_shared<const AtomicSpace>(std::move(space));
  return m;
}

void BaseMeasure::require_hierarchy(const char* what) const {
  if (!on_hierarchy()) throw std::domain_error(std::string(what) + " needs a hierarchy measure, got atomic weights");
}

const DyadicHierarchy& BaseMeasure::hierarchy() const {
  require_hierarchy("hierarchy()");
  return *hierarchy_;
}

const AtomicSpace& BaseMeasure::space() const {
  if (kind_ != Kind::AtomicWeights) throw std::domain_error("measure is not an atomic-weights measure");
  return *space_;
}

const Rational& BaseMeasure::density_on(const Cell& cell) const {
  require_hierarchy("density_on");
  if (cell.depth < density_depth_) throw std::domain_error("cell coarser than the density depth");
  return densities_[hierarchy_->ancestor(cell, density_depth_).index];
}

Rational BaseMeasure::density_at(const DyadicPoint& x) const {
  return density_on(hierarchy().cell_containing(x, density_depth_));
}

Rational BaseMeasure::mass(const Cell& cell) const {
  require_hierarchy("mass(Cell)");
  const auto& h = *hierarchy_;
  if (cell.depth >= density_depth_) return density_on(cell) * h.cell_volume(cell.depth);
  Rational s = 0;
  for (const auto& d : h.descendants(cell, density_depth_)) s += densities_[d.index];
  return s * h.cell_volume(density_depth_);
}

Rational BaseMeasure::measure_of(const CellSet& e) const {
  require_hierarchy("measure_of(CellSet)");
  if (!(e.hierarchy() == *hierarchy_)) throw std::domain_error("cell set and measure use different hierarchies");
  const CellSet& fine = e.depth() >= density_depth_ ? e : e.refine(density_depth_);
  Rational s = 0;
  for (const auto& c : fine.cells()) s += mass(c);
  return s;
}

Rational BaseMeasure::measure_of(const PointSet& e) const { return space().measure(e); }

Rational BaseMeasure::measure_of(const IntervalUnion& e) const {
  require_hierarchy("measure_of(IntervalUnion)");
  if (hierarchy_->dimension() != 1) throw std::domain_error("interval unions need a one-dimensional hierarchy");
  if (e.ambient().lo < 0 || e.ambient().hi > 1) throw std::domain_error("interval union ambient not inside [0,1]");
  Rational s = 0;
  Rational side = pow2(-density_depth_);
  for (std::uint64_t i = 0; i < densities_.size(); ++i) {
    if (densities_[i] == 0) continue;
    IntervalUnion cell(e.ambient(), {Interval::half_open(Rational(i) * side, Rational(i + 1) * side)});
    s += densities_[i] * e.intersect(cell).length();
  }
  return s;
}

Rational BaseMeasure::total_mass() const {
  if (!on_hierarchy()) return space_->total_mass();
  return mass(hierarchy_->root());
}

std::vector<Rational> BaseMeasure::cell_masses(int depth) const {
  require_hierarchy("cell_masses");
  std::vector<Rational> out;
  out.reserve(hierarchy_->cell_count(depth));
  for (std::uint64_t i = 0; i < hierarchy_->cell_count(depth); ++i) out.push_back(mass(Cell{depth, i}));
  return out;
}

CellSet BaseMeasure::positive_cells(int depth) const {
  CellSet s(*hierarchy_, depth);
  auto masses = cell_masses(depth);
  boost::dynamic_bitset<> bits(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i)
    if (masses[i] > 0) bits.set(i);
  return CellSet(*hierarchy_, depth, std::move(bits));
}

bool operator==(const BaseMeasure& a, const BaseMeasure& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == BaseMeasure::Kind::AtomicWeights)
    return a.space_->weights() == b.space_->weights() && a.space_->atom_count() == b.space_->atom_count();
  return a.hierarchy_ == b.hierarchy_ && a.density_depth_ == b.density_depth_ && a.densities_ == b.densities_;
}

std::vector<MeasurableSet> atoms_of(const BaseMeasure& mu) {
  std::vector<MeasurableSet> out;
  if (mu.kind() == BaseMeasure::Kind::AtomicWeights) {
    for (std::size_t j = 0; j < mu.space().atom_count(); ++j) out.emplace_back(mu.space().atom(j));
    return out;
  }
  const auto& h = mu.hierarchy();
  int leaf = std::max(h.max_depth(), mu.density_depth());
  if (h.cell_count(leaf) > (std::uint64_t{1} << 20)) throw std::length_error("leaf algebra too large for atoms_of");
  for (const auto& c : mu.positive_cells(leaf).cells()) out.emplace_back(CellSet::of_cell(h, c));
  return out;
}

}  // namespace vmeas
