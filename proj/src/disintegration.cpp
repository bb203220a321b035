#include "vmeas/disintegration.hpp"

#include <sstream>

#include "vmeas/random.hpp"

namespace vmeas {

namespace {

// Sum of coefficient * vector, kept rational while every coefficient is.
class Combination {
 public:
  explicit Combination(std::size_t dim) : exact_(dim), approx_(dim) {}

  void add(const Magnitude& coefficient, const QVec& v) {
    auto q = coefficient.rational();
    if (is_exact_ && q) {
      exact_ += v * *q;
      return;
    }
    if (is_exact_) {
      for (std::size_t i = 0; i < exact_.dim(); ++i) approx_[i] = to_real(exact_[i]);
      is_exact_ = false;
    }
    for (std::size_t i = 0; i < v.dim(); ++i) approx_[i] += coefficient.value() * to_real(v[i]);
  }

  bool equals(const QVec& target) const {
    if (is_exact_) return exact_ == target;
    for (std::size_t i = 0; i < target.dim(); ++i)
      if (abs(approx_[i] - to_real(target[i])) > high_precision_tolerance()) return false;
    return true;
  }

 private:
  bool is_exact_ = true;
  QVec exact_;
  std::vector<Real> approx_;
};

Magnitude fiber_variation(const Fiber& f, Norm norm) {
  Magnitude t;
  for (const QVec& v : f.numerators) t += norm_of(v, norm);
  return t;
}

std::vector<Magnitude> mixing_of(const VectorMeasure& omega, const std::vector<std::size_t>& map, std::size_t targets) {
  return pushforward_variation(omega, map, targets);
}

std::string fiber_component(const QVec& num, std::size_t i, const Magnitude& n) {
  if (auto q = n.rational()) return to_string(num[i] / *q);
  return Real(to_real(num[i]) / n.value()).str(40);
}

}  // namespace

std::vector<Magnitude> Disintegration::mixing() const { return mixing_of(source, map, target_count); }

const Fiber* Disintegration::fiber(std::size_t label) const {
  for (const Fiber& f : fibers)
    if (f.label == label) return &f;
  return nullptr;
}

Disintegration disintegrate(const VectorMeasure& omega, const std::vector<std::size_t>& map, std::size_t target_count) {
  const auto& g = omega.generator_values();
  if (map.size() != g.size()) throw std::invalid_argument("map needs one label per generator");
  if (omega.total_variation().is_zero()) throw std::domain_error("the zero measure has no disintegration");
  Disintegration d{omega, map, target_count, {}};
  const std::vector<Magnitude> nu = mixing_of(omega, map, target_count);
  for (std::size_t y = 0; y < target_count; ++y) {
    if (nu[y].is_zero()) continue;
    Fiber f{y, std::vector<QVec>(g.size(), QVec(omega.codim())), nu[y]};
    for (std::size_t i = 0; i < g.size(); ++i)
      if (map[i] == y) f.numerators[i] = g[i];
    d.fibers.push_back(std::move(f));
  }
  return d;
}

LawReport verify_disintegration(const Disintegration& d, const DisintegrationCheckOptions& options) {
  LawReport report{"disintegration", {}};
  report.laws.reserve(5);
  LawTally normalization(report.add("normalization"));
  LawTally concentration(report.add("concentration"));
  LawTally generators(report.add("reconstruction-generators"));
  LawTally steps(report.add("reconstruction-step-functions"));
  LawTally balance(report.add("mass-balance"));

  const VectorMeasure& omega = d.source;
  const auto& g = omega.generator_values();
  const std::vector<Magnitude> nu = d.mixing();
  std::vector<Magnitude> weight(d.fibers.size());  // nu(y) / N_y
  for (std::size_t k = 0; k < d.fibers.size(); ++k) {
    const Fiber& f = d.fibers[k];
    if (f.numerators.size() != g.size() || f.label >= d.target_count)
      throw std::invalid_argument("fiber does not match the source");
    if (f.normalizer.is_zero()) throw std::invalid_argument("fiber with zero normalizer");
    weight[k] = nu[f.label] / f.normalizer;
    const std::string y = "y=" + std::to_string(f.label);
    normalization.check_lazy(mag_equal(fiber_variation(f, omega.norm()), f.normalizer), [&] { return y; });
    bool inside = true;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (d.map[i] != f.label && !f.numerators[i].is_zero()) inside = false;
    concentration.check_lazy(inside, [&] { return y; });
  }
  for (std::size_t y = 0; y < d.target_count; ++y)
    if (!nu[y].is_zero() && !d.fiber(y)) normalization.check(false, "y=" + std::to_string(y) + " missing");

  for (std::size_t i = 0; i < g.size(); ++i) {
    Combination c(omega.codim());
    for (std::size_t k = 0; k < d.fibers.size(); ++k) c.add(weight[k], d.fibers[k].numerators[i]);
    generators.check_lazy(c.equals(g[i]), [&] { return omega.generator_label(i); });
  }

  Rng rng(options.seed);
  for (std::size_t s = 0; s < options.step_functions; ++s) {
    std::vector<Rational> f(g.size());
    for (auto& x : f) x = rng.below(4) == 0 ? Rational(0) : rng.small_rational(5, 4);
    const QVec lhs = bartle_integral_generators(omega, f);
    Combination c(omega.codim());
    for (std::size_t k = 0; k < d.fibers.size(); ++k) {
      QVec inner(omega.codim());
      for (std::size_t i = 0; i < g.size(); ++i)
        if (f[i] != 0) inner += d.fibers[k].numerators[i] * f[i];
      c.add(weight[k], inner);
    }
    steps.check_lazy(c.equals(lhs), [&] { return "step function " + std::to_string(s); });
  }

  Magnitude mass;
  for (std::size_t k = 0; k < d.fibers.size(); ++k)
    mass += weight[k] * fiber_variation(d.fibers[k], omega.norm());
  balance.check_lazy(mag_equal(mass, omega.total_variation()), [&] { return mass.to_string(); });
  return report;
}

Disintegration patch_disintegrations(const VectorMeasure& omega, const std::vector<PatchPiece>& pieces) {
  if (pieces.empty()) throw std::invalid_argument("no pieces to patch");
  const auto& g = omega.generator_values();
  const std::size_t n = g.size();
  boost::dynamic_bitset<> covered(n);
  const auto& map = pieces[0].part.map;
  const std::size_t targets = pieces[0].part.target_count;
  for (const PatchPiece& p : pieces) {
    if (p.carrier.size() != n) throw std::invalid_argument("piece carrier does not match the generators");
    if (covered.intersects(p.carrier)) throw std::invalid_argument("piece carriers overlap");
    covered |= p.carrier;
    if (p.part.map != map || p.part.target_count != targets) throw std::invalid_argument("pieces use different maps");
    const auto& pg = p.part.source.generator_values();
    for (std::size_t i = 0; i < n; ++i)
      if (!(pg[i] == (p.carrier.test(i) ? g[i] : QVec(omega.codim()))))
        throw std::invalid_argument("piece source is not the restriction of the measure");
  }
  if (!omega.variation().of_generators(~covered).is_zero())
    throw std::domain_error("variation mass outside the pieces");

  Disintegration out{omega, map, targets, {}};
  const std::vector<Magnitude> nu = mixing_of(omega, map, targets);
  for (std::size_t y = 0; y < targets; ++y) {
    if (nu[y].is_zero()) continue;
    Fiber f{y, std::vector<QVec>(n, QVec(omega.codim())), nu[y]};
    for (const PatchPiece& p : pieces) {
      const Fiber* part = p.part.fiber(y);
      if (!part) continue;
      // alpha_n(y) Omega^n_y = (nu^n(y) / nu(y)) num / N^n, and the patched
      // fiber keeps nu(y) as its normalizer.
      auto r = (p.part.mixing()[y] / part->normalizer).rational();
      if (!r) throw std::domain_error("patch weight is not rational; use the l1 norm");
      for (std::size_t i = 0; i < n; ++i) f.numerators[i] += part->numerators[i] * *r;
    }
    out.fibers.push_back(std::move(f));
  }
  return out;
}

UniquenessDistance uniqueness_distance(const Disintegration& a, const Disintegration& b) {
  if (a.map != b.map || a.target_count != b.target_count ||
      a.source.generator_values() != b.source.generator_values())
    throw std::invalid_argument("disintegrations of different data");
  const std::size_t n = a.source.generator_count();
  const std::size_t m = a.source.codim();
  const Norm norm = a.source.norm();
  UniquenessDistance out;
  for (std::size_t y = 0; y < a.target_count; ++y) {
    const Fiber* fa = a.fiber(y);
    const Fiber* fb = b.fiber(y);
    if (!fa && !fb) continue;
    Magnitude dist;
    if (!fa || !fb) {
      dist = Magnitude::from_rational(1);
    } else if (auto r = (fa->normalizer / fb->normalizer).rational()) {
      for (std::size_t i = 0; i < n; ++i) dist += norm_of(fa->numerators[i] - fb->numerators[i] * *r, norm);
      dist = dist / fa->normalizer;
    } else {
      Real total = 0;
      for (std::size_t i = 0; i < n; ++i) {
        Real s = 0;
        for (std::size_t j = 0; j < m; ++j) {
          const Real diff = to_real(fa->numerators[i][j]) / fa->normalizer.value() -
                            to_real(fb->numerators[i][j]) / fb->normalizer.value();
          s += norm == Norm::L1 ? Real(abs(diff)) : Real(diff * diff);
        }
        total += norm == Norm::L1 ? s : Real(sqrt(s));
      }
      dist = Magnitude::approximate(total);
    }
    if (mag_less(out.distance, dist)) {
      out.distance = dist;
      out.witness = y;
    }
  }
  return out;
}

std::string disintegration_csv(const Disintegration& d) {
  std::ostringstream os;
  const std::size_t m = d.source.codim();
  os << "fiber,carrier,nu";
  for (std::size_t i = 0; i < m; ++i) os << ",c_" << i;
  os << "\n";
  const std::vector<Magnitude> nu = d.mixing();
  for (const Fiber& f : d.fibers)
    for (std::size_t g = 0; g < f.numerators.size(); ++g) {
      if (f.numerators[g].is_zero()) continue;
      os << f.label << "," << d.source.generator_label(g) << "," << csv_number(nu[f.label]);
      for (std::size_t i = 0; i < m; ++i) os << "," << fiber_component(f.numerators[g], i, f.normalizer);
      os << "\n";
    }
  return os.str();
}

}  // namespace vmeas
