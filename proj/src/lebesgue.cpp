#include "vmeas/lebesgue.hpp"

#include <cmath>
#include <sstream>

namespace vmeas {

namespace {

Magnitude mean_deviation(const Evaluator& v, const Cell& cell, const BaseMeasure& mu, const QVec& vx, int q,
                         bool& exact) {
  const Rational mass = mu.mass(cell);
  if (auto* s = dynamic_cast<const SimpleMap*>(&v)) {
    exact = true;
    Magnitude total;
    Rational covered = 0;
    for (const auto& p : s->pieces()) {
      const Rational m = measure_within(mu, std::get<CellSet>(p.set), cell);
      if (m == 0) continue;
      covered += m;
      total += norm_of(p.value - vx, Norm::L2) * m;
    }
    total += norm_of(vx, Norm::L2) * (mass - covered);
    return total * (1 / mass);
  }
  exact = false;
  const DyadicHierarchy& h = mu.hierarchy();
  const Box b = h.bounds(cell);
  const int d = h.dimension();
  const int nodes = d == 1 ? q : q * q;
  double sum = 0, weight = 0;
  for (int n = 0; n < nodes; ++n) {
    std::vector<Rational> coords;
    int rest = n;
    for (int axis = 0; axis < d; ++axis) {
      const int j = rest % q;
      rest /= q;
      coords.push_back(b.lo[axis] + (b.hi[axis] - b.lo[axis]) * Rational(2 * j + 1, 2 * q));
    }
    const DyadicPoint node(std::move(coords));
    const double rho = mu.density_at(node).convert_to<double>();
    if (rho == 0) continue;
    sum += rho * std::sqrt((v.value(node) - vx).squared_norm().convert_to<double>());
    weight += rho;
  }
  return Magnitude::approximate(Real(weight == 0 ? 0.0 : sum / weight));
}

}  // namespace

LebesguePointReport lebesgue_point(const Evaluator& v, const BaseMeasure& mu, const DyadicPoint& x,
                                   const ScanOptions& options) {
  if (options.tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (options.k_max < 4) throw std::invalid_argument("k_max must be at least 4");
  const DyadicHierarchy& h = mu.hierarchy();
  h.check_depth(options.k_max);
  LebesguePointReport r;
  r.x = x;
  r.value = v.value(x);
  for (const Cell& c : h.chain(x, options.k_max)) {
    CellAverage avg = cell_average(v, c, mu, options.quadrature);
    LebesgueRow row;
    row.depth = c.depth;
    row.residual = Magnitude::sqrt_of((avg.value - r.value).squared_norm());
    row.average = std::move(avg.value);
    row.exact = avg.exact;
    row.mean_deviation = mean_deviation(v, c, mu, r.value, options.quadrature, row.deviation_exact);
    r.chain.push_back(std::move(row));
  }
  std::vector<Rational> dist;
  for (const auto& row : r.chain) dist.push_back((row.average - r.chain.back().average).max_norm());
  const bool tail = cauchy_tail_converged(dist, options.tol, options.k_max, &r.stable_depth);
  if (tail && mag_less_equal(r.final_residual(), Magnitude::from_rational(options.tol)))
    r.verdict = ILimitResult::Status::Converged;
  return r;
}

std::vector<LebesguePointReport> lebesgue_point_scan(const Evaluator& v, const BaseMeasure& mu,
                                                     const std::vector<DyadicPoint>& points, const ScanOptions& options) {
  std::vector<LebesguePointReport> out(points.size());
  for_each_index(points.size(), options.execution,
                 [&](std::size_t i) { out[i] = lebesgue_point(v, mu, points[i], options); });
  return out;
}

std::string point_label(const DyadicPoint& x) {
  std::string s;
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    if (i) s += " ";
    s += to_string(x[i]);
  }
  return s;
}

std::string csv_number(const Magnitude& m) {
  if (auto q = m.rational()) return to_string(*q);
  return m.value().str(40);
}

std::string lebesgue_csv(const std::vector<LebesguePointReport>& reports) {
  std::ostringstream os;
  const std::size_t m = reports.empty() ? 0 : reports[0].value.dim();
  os << "point,k";
  for (std::size_t i = 0; i < m; ++i) os << ",avg_" << i;
  os << ",residual\n";
  for (const auto& r : reports)
    for (const auto& row : r.chain) {
      os << point_label(r.x) << "," << row.depth;
      for (const auto& c : row.average) os << "," << to_string(c);
      os << "," << csv_number(row.residual) << "\n";
    }
  return os.str();
}

}  // namespace vmeas
