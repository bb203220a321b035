#include "vmeas/lifting_checks.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vmeas/random.hpp"

namespace vmeas {

namespace {

Rational box_overlap(const Box& a, const Box& b) {
  Rational v = 1;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    const Rational lo = std::max(a.lo[i], b.lo[i]);
    const Rational hi = std::min(a.hi[i], b.hi[i]);
    if (hi <= lo) return 0;
    v *= hi - lo;
  }
  return v;
}

bool strictly_inside(const Box& b, const DyadicPoint& x) {
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    if (!(b.lo[i] < x[i] && x[i] < b.hi[i])) return false;
  return true;
}

bool in_closure(const Box& b, const DyadicPoint& x) {
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    if (x[i] < b.lo[i] || x[i] > b.hi[i]) return false;
  return true;
}

bool closures_disjoint(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i)
    if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return true;
  return false;
}

// ceil(log2(sqrt(d) / r)) + 1 from r^2, exactly.
int witness_bound(int d, const Rational& r2) {
  int n = 0;
  auto ok = [&](int m) { return pow2(2 * m) * r2 >= d; };
  while (!ok(n)) ++n;
  while (n > -126 && ok(n - 1)) --n;
  return n + 1;
}

}  // namespace

bool OpenSet::contains(const DyadicPoint& x) const {
  if (whole) return true;
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return strictly_inside(b, x); });
}

Rational OpenSet::squared_boundary_distance(const DyadicPoint& x) const {
  for (const Box& b : boxes) {
    if (!strictly_inside(b, x)) continue;
    std::optional<Rational> r;
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
      Rational side = x[i] - b.lo[i];
      // A face on the far edge of [0,1) borders no point of the space.
      if (b.hi[i] < 1) side = std::min(side, Rational(b.hi[i] - x[i]));
      if (!r || side < *r) r = side;
    }
    return *r * *r;
  }
  throw std::invalid_argument("point is not in the open set");
}

std::string OpenSet::describe() const {
  if (whole) return "X";
  std::ostringstream os;
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    if (k) os << " u ";
    const Box& b = boxes[k];
    for (std::size_t i = 0; i < b.lo.size(); ++i) {
      if (i) os << "x";
      os << "(" << to_string(b.lo[i]) << "," << to_string(b.hi[i]) << ")";
    }
  }
  return os.str();
}

Rational measure_in(const BaseMeasure& mu, const OpenSet& u, const Cell& cell) {
  if (u.whole) return mu.mass(cell);
  const DyadicHierarchy& h = mu.hierarchy();
  const int dd = mu.density_depth();
  std::vector<Cell> pieces = cell.depth >= dd ? std::vector<Cell>{cell} : h.descendants(cell, dd);
  Rational total = 0;
  for (const Cell& c : pieces) {
    const Rational& rho = mu.density_on(c);
    if (rho == 0) continue;
    const Box cb = h.bounds(c);
    for (const Box& b : u.boxes) total += rho * box_overlap(b, cb);
  }
  return total;
}

bool StrongLiftingReport::all_members() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.member; });
}

bool StrongLiftingReport::all_within_bound() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.within_bound(); });
}

StrongLiftingRow strong_lifting_point(const BaseMeasure& mu, const OpenSet& u, const DyadicPoint& x, int depth_cap) {
  const DyadicHierarchy& h = mu.hierarchy();
  h.check_point(x);
  const int cap = std::min(depth_cap, h.max_depth());
  const Cell home = h.cell_containing(x, mu.density_depth());
  if (mu.density_on(home) == 0) {
    const CellSet positive = mu.positive_cells(mu.density_depth());
    for (const Cell& c : positive.cells())
      if (in_closure(h.bounds(c), x)) throw std::domain_error("point lies on the edge of the support, not in a positive cell");
    throw std::domain_error("point outside the support of the measure");
  }
  if (!u.contains(x)) throw std::invalid_argument("point is not in the open set");
  StrongLiftingRow row{u.describe(), x};
  if (!u.whole) row.bound = witness_bound(h.dimension(), u.squared_boundary_distance(x));
  // Once mu(P \ U) = 0 it stays 0 on every deeper chain cell, so the first
  // unit ratio is the witness depth.
  for (int k = 0; k <= cap; ++k) {
    const Cell c = h.cell_containing(x, k);
    if (measure_in(mu, u, c) == mu.mass(c)) {
      row.kbar = k;
      row.member = true;
      break;
    }
  }
  return row;
}

StrongLiftingReport strong_lifting_check(const BaseMeasure& mu, int depth_cap, std::size_t samples, std::uint64_t seed) {
  if (!mu.on_hierarchy() || mu.total_mass() == 0) throw std::invalid_argument("need a nonzero measure on a hierarchy");
  const DyadicHierarchy& h = mu.hierarchy();
  const int d = h.dimension();
  const int grid = std::min(5, h.max_depth());
  const int fine = std::min(h.max_depth(), grid + 5);
  const std::int64_t gn = std::int64_t{1} << grid;
  const std::int64_t fn = std::int64_t{1} << fine;
  Rng rng(seed);
  StrongLiftingReport report;
  std::size_t attempts = 0;
  while (report.rows.size() < samples) {
    if (++attempts > 1000 * (samples + 1)) throw std::runtime_error("could not sample points in the support");
    OpenSet u;
    if (rng.below(16) == 0) {
      u.whole = true;
    } else {
      const int count = static_cast<int>(rng.range(1, d == 1 ? 3 : 2));
      auto draw_box = [&]() -> std::optional<Box> {
        Box b;
        for (int axis = 0; axis < d; ++axis) {
          std::int64_t a = rng.range(0, gn), c = rng.range(0, gn);
          if (a == c) return std::nullopt;
          if (a > c) std::swap(a, c);
          b.lo.push_back(Rational(a, gn));
          b.hi.push_back(Rational(c, gn));
        }
        return b;
      };
      // Later boxes may have no room left; give up on them after a few draws.
      for (int tries = 0; static_cast<int>(u.boxes.size()) < count && (u.boxes.empty() || tries < 64); ++tries) {
        auto b = draw_box();
        if (b && std::all_of(u.boxes.begin(), u.boxes.end(), [&](const Box& o) { return closures_disjoint(o, *b); }))
          u.boxes.push_back(std::move(*b));
      }
    }
    std::vector<Rational> coords;
    if (u.whole) {
      for (int axis = 0; axis < d; ++axis) coords.push_back(Rational(rng.range(0, fn - 1), fn));
    } else {
      const Box& b = u.boxes[rng.below(u.boxes.size())];
      for (int axis = 0; axis < d; ++axis) {
        const std::int64_t lo = static_cast<std::int64_t>((b.lo[axis] * fn).convert_to<double>());
        const std::int64_t hi = static_cast<std::int64_t>((b.hi[axis] * fn).convert_to<double>());
        coords.push_back(Rational(rng.range(lo + 1, hi - 1), fn));
      }
    }
    DyadicPoint x(std::move(coords));
    if (mu.density_on(h.cell_containing(x, mu.density_depth())) == 0) continue;
    report.rows.push_back(strong_lifting_point(mu, u, x, depth_cap));
  }
  return report;
}

namespace {

std::vector<Rational> radii(const AtomicSpace& space, const SquaredDistance& d2, std::size_t x) {
  std::set<Rational> attained;
  for (std::size_t z = 0; z < space.size(); ++z) {
    Rational r = d2(z, x);
    if (r > 0) attained.insert(r);
  }
  std::vector<Rational> out(attained.begin(), attained.end());
  out.push_back(out.empty() ? Rational(1) : Rational(out.front() / 4));
  return out;
}

}  // namespace

ApproxContinuity approximate_continuity(const LiftingOperator& ell, const SquaredDistance& d2, std::size_t x) {
  const AtomicSpace& space = ell.space();
  if (x >= space.size()) throw std::out_of_range("point index out of range");
  const std::size_t atoms = space.atom_count();
  if (atoms > 12) throw std::length_error("approximate continuity check limited to 12 atoms");
  const std::vector<Rational> eps2 = radii(space, d2, x);
  const std::size_t own = space.atom_of(x);
  const std::vector<PointSet> measurable = space.measurable_sets();

  ApproxContinuity out{true, true, true};
  for (const Rational& e : eps2) {
    PointSet ball(space.size());
    for (std::size_t z = 0; z < space.size(); ++z) ball[z] = d2(z, x) < e;

    bool found = false;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << atoms) && !found; ++mask) {
      if (!(mask >> own & 1)) continue;
      const PointSet member = space.union_of_atoms(boost::dynamic_bitset<>(atoms, mask));
      found = (member & space.support()).is_subset_of(ball);
    }
    out.via_basis = out.via_basis && found;

    out.via_lifted_balls = out.via_lifted_balls && ell.lift(ball).test(x);

    found = false;
    for (const PointSet& set : measurable) {
      if (set.test(x) && set.is_subset_of(ball) && set.is_subset_of(ell.lift(set))) {
        found = true;
        break;
      }
    }
    out.via_topology = out.via_topology && found;
  }
  return out;
}

ApproxContinuity approximate_continuity(const LiftingOperator& ell, const std::vector<QVec>& phi, std::size_t x) {
  if (phi.size() != ell.space().size()) throw std::invalid_argument("map does not match the atomic space");
  return approximate_continuity(ell, [&phi](std::size_t a, std::size_t b) { return (phi[a] - phi[b]).squared_norm(); }, x);
}

}  // namespace vmeas
