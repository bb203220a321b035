// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "vmeas/cli/commands.hpp"
#include "vmeas/diff_basis.hpp"
#include "vmeas/disintegration.hpp"
#include "vmeas/fixtures.hpp"
#include "vmeas/laws.hpp"
#include "vmeas/lebesgue.hpp"
#include "vmeas/lifting_checks.hpp"
#include "vmeas/lower_density.hpp"
#include "vmeas/oracles.hpp"
#include "vmeas/vector_measure.hpp"

using namespace vmeas;

namespace {

// Pinned tolerances and sizes.
const Real kEuclideanTol("1e-30");
constexpr int kLebesgueDepth = 20;
constexpr std::size_t kLebesguePoints = 1000;
constexpr std::size_t kStepFunctions = 100;
constexpr std::size_t kIntervalPairs = 500;
constexpr std::size_t kLiftingPairs64 = 1000;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure; later ones only bump the count.
struct Gate {
  Outcome out;
  std::size_t failures = 0;
  std::size_t checks = 0;
  void require(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) out.detail = what;
    out.pass = false;
  }
  void report(const LawReport& r, const std::string& prefix = "") {
    for (const LawResult& l : r.laws) {
      if (!prefix.empty() && l.name.rfind(prefix, 0) != 0) continue;
      require(l.as_expected(), l.name + " " + l.status() + (l.witness.empty() ? "" : " at " + l.witness));
    }
  }
  Outcome done(const std::string& summary) {
    if (out.pass) out.detail = summary;
    else out.detail += " (" + std::to_string(failures) + " of " + std::to_string(checks) + " checks failed)";
    return out;
  }
};

Rational q(long p, long r = 1) { return Rational(p, r); }

// ------------------------------------------------------------------ 1

Outcome interval_counterexample() {
  Gate g;
  const Interval amb = Interval::closed(-2, 2);
  const IntervalUnion whole(amb, {Interval::closed(-1, 1)});
  const IntervalUnion left(amb, {Interval::closed(-1, 0)});
  const IntervalUnion right(amb, {Interval::closed(0, 1)});
  g.require(density_point_interval(whole, 0), "0 not in D([-1,1])");
  g.require(!density_point_interval(left, 0), "0 in D([-1,0])");
  g.require(!density_point_interval(right, 0), "0 in D([0,1])");
  g.require(density_point_interval(left.unite(right), 0), "0 not in D([-1,0] u [0,1])");
  // The operator image makes the failure of unions explicit.
  const IntervalUnion sides = density_points_interval(left).unite(density_points_interval(right));
  g.require(!sides.contains(0) && density_points_interval(left.unite(right)).contains(0), "images disagree at 0");
  return g.done("0 in D([-1,1]), 0 not in D([-1,0]) or D([0,1]), 0 in D([-1,0] u [0,1])");
}

// ------------------------------------------------------------------ 2

Outcome lower_density_axioms() {
  Gate g;
  Rng rng(kSeed ^ 2);
  // Interval unions: 25 random sets plus a null variant of each.
  {
    const Interval amb = Interval::closed(0, 1);
    std::vector<IntervalUnion> sets;
    for (int i = 0; i < 25; ++i) {
      IntervalUnion e = fixtures::random_interval_union(rng, amb, 5, 4);
      IntervalUnion variant = e.symmetric_difference(IntervalUnion(amb, {Interval::point(rng.dyadic(5))}));
      sets.push_back(std::move(e));
      sets.push_back(std::move(variant));
    }
    const std::function<IntervalUnion(const IntervalUnion&)> d = density_points_interval;
    g.report(check_lower_density(d, interval_algebra(amb, std::move(sets)), {kIntervalPairs, rng.next(), std::nullopt}));
  }
  // Every subset pair of leaf algebras with 4, 8 and 16 cells.
  std::size_t mask_runs = 0;
  for (int d = 1; d <= 2; ++d) {
    const DyadicHierarchy h(d, 8);
    for (int depth = 1; depth * d <= 4; ++depth) {
      const int cells = 1 << (depth * d);
      if (cells < 4) continue;
      const BaseMeasure mu = fixtures::random_step_measure(rng, h, depth, true);
      std::uint16_t pos = 0;
      const auto masses = mu.cell_masses(depth);
      for (std::size_t i = 0; i < masses.size(); ++i)
        if (masses[i] > 0) pos |= static_cast<std::uint16_t>(1u << i);
      const MaskLawCounts c = check_lower_density_masks(density_point_table(mu, depth), cells, pos, Execution::Parallel);
      g.report(mask_counts_report(c, leaf_density_preserves_unions(mu, depth)));
      g.require(c.pairs == (std::uint64_t{1} << cells) * ((std::uint64_t{1} << cells) + 1) / 2,
                "mask run skipped pairs");
      ++mask_runs;
    }
  }
  // Sandwich on every measurable set of spaces with 1 to 5 atoms.
  std::size_t spaces = 0;
  for (std::size_t atoms = 1; atoms <= 5; ++atoms)
    for (int t = 0; t < 4; ++t) {
      const AtomicSpace s = fixtures::random_atomic_space(rng, atoms, 1);
      const std::function<PointSet(const PointSet&)> d = [&s](const PointSet& e) {
        return density_points_partition(e, s);
      };
      const LiftingOperator ell(s);
      g.report(check_lower_density(d, atomic_algebra(s)));
      const LawResult sw = check_sandwich(d, ell);
      g.require(sw.as_expected(), "sandwich " + sw.witness);
      ++spaces;
    }
  return g.done(std::to_string(kIntervalPairs) + " interval pairs, " + std::to_string(mask_runs) +
                " exhaustive leaf algebras (up to 16 cells), sandwich on " + std::to_string(spaces) + " atomic spaces");
}

// ------------------------------------------------------------------ 3

Outcome lifting_laws() {
  Gate g;
  Rng rng(kSeed ^ 3);
  std::size_t spaces = 0;
  for (std::size_t atoms = 1; atoms <= 5; ++atoms)
    for (int t = 0; t < 4; ++t) {
      const LiftingOperator ell(fixtures::random_atomic_space(rng, atoms, 1));
      g.report(lifting_set_laws(ell, ell.space().measurable_sets(), 0, rng));
      g.report(lifting_function_laws(ell, 20, rng));
      for (Norm n : {Norm::L1, Norm::L2}) g.report(lifting_section_laws(ell, 2, 20, n, rng));
      ++spaces;
    }
  const LiftingOperator big(fixtures::random_atomic_space(rng, 64, 2));
  std::vector<PointSet> sets;
  for (int i = 0; i < 200; ++i) sets.push_back(fixtures::random_measurable(big.space(), rng));
  g.report(lifting_set_laws(big, sets, kLiftingPairs64, rng));
  g.report(lifting_function_laws(big, 100, rng));
  for (Norm n : {Norm::L1, Norm::L2}) g.report(lifting_section_laws(big, 3, 100, n, rng));
  return g.done("exhaustive on " + std::to_string(spaces) + " spaces with up to 5 atoms, " +
                std::to_string(kLiftingPairs64) + " pairs on 64 atoms");
}

// ------------------------------------------------------------------ 4

Outcome lebesgue_differentiation() {
  Gate g;
  Rng rng(kSeed ^ 4);
  const DyadicHierarchy h(1, 24);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  ScanOptions opt;
  opt.k_max = kLebesgueDepth;
  opt.execution = Execution::Parallel;
  std::vector<DyadicPoint> pts;
  for (std::size_t i = 0; i < kLebesguePoints; ++i) pts.push_back(DyadicPoint{rng.dyadic(kLebesgueDepth)});
  const PolynomialMap sq = PolynomialMap::univariate({0, 0, 1}, Rational(2));
  const Rational bound = 2 * pow2(-kLebesgueDepth) + pow2(-2 * kLebesgueDepth);
  Magnitude worst;
  for (const LebesguePointReport& r : lebesgue_point_scan(sq, leb, pts, opt)) {
    g.require(r.converged(), "no convergence at " + point_label(r.x));
    g.require(r.chain.size() == kLebesgueDepth + 1 && r.chain.back().exact, "inexact chain at " + point_label(r.x));
    if (compare(worst, r.final_residual()) < 0) worst = r.final_residual();
  }
  g.require(mag_less_equal(worst, Magnitude::from_rational(bound)), "max residual " + worst.to_string());

  std::size_t rows = 0;
  for (std::size_t t = 0; t < kStepFunctions; ++t) {
    const int dim = 1 + static_cast<int>(rng.below(2));
    const DyadicHierarchy hs(dim, 12);
    const SimpleMap v = fixtures::random_cell_map(rng, hs, static_cast<int>(rng.below(dim == 1 ? 6 : 4)), 2);
    std::vector<DyadicPoint> xs;
    for (int i = 0; i < 5; ++i) {
      std::vector<Rational> c;
      for (int k = 0; k < dim; ++k) c.push_back(rng.dyadic(12));
      xs.push_back(DyadicPoint(c));
    }
    ScanOptions so;
    so.k_max = 10;
    for (const LebesguePointReport& r : lebesgue_point_scan(v, BaseMeasure::lebesgue(hs), xs, so))
      for (const LebesgueRow& row : r.chain)
        if (row.depth >= v.depth()) {
          ++rows;
          g.require(row.residual.is_zero(), "step " + std::to_string(t) + " depth " + std::to_string(row.depth) +
                                                " at " + point_label(r.x));
        }
  }
  return g.done(std::to_string(kLebesguePoints) + " points converge, max residual " + worst.to_string() +
                " <= 2^-19+2^-40; " + std::to_string(rows) + " step rows exactly 0");
}

// ------------------------------------------------------------------ 5

struct DensityInstance {
  BaseMeasure mu;
  VectorMeasure omega;
};

DensityInstance random_density(Rng& rng, Norm norm) {
  const int dim = 1 + static_cast<int>(rng.below(2));
  const DyadicHierarchy h(dim, 12);
  const int max_depth = dim == 1 ? 4 : 2;
  BaseMeasure mu = fixtures::random_step_measure(rng, h, static_cast<int>(rng.below(max_depth + 1)), true);
  const SimpleMap g = fixtures::random_cell_map(rng, h, static_cast<int>(rng.below(max_depth + 1)), 1 + rng.below(3));
  VectorMeasure omega = VectorMeasure::density_form(g, mu, norm);
  return {std::move(mu), std::move(omega)};
}

Outcome rn_differentiation() {
  Gate g;
  Rng rng(kSeed ^ 5);
  const DyadicHierarchy h(1, 24);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  const VectorMeasure omega =
      VectorMeasure::density_form(std::make_shared<PolynomialMap>(PolynomialMap::univariate({0, 1})), leb);
  std::vector<DyadicPoint> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(DyadicPoint{rng.dyadic(22)});
  ScanOptions opt;
  opt.k_max = 20;
  std::size_t rows = 0;
  for (const RnPointReport& r : rn_ratio_scan(omega, leb, pts, opt))
    for (const RnRow& row : r.chain) {
      ++rows;
      g.require(abs(row.ratio[0] - r.x[0]) <= pow2(-row.depth),
                "ratio at " + point_label(r.x) + " depth " + std::to_string(row.depth));
    }
  for (int i = 0; i < 200; ++i) {
    const DensityInstance d = random_density(rng, Norm::L2);
    const SimpleMap rn = rn_derivative(d.omega, d.mu);
    const auto& gv = d.omega.generator_values();
    for (std::size_t k = 0; k < gv.size(); ++k)
      g.require(gv[k] == bochner_integral_simple(
                             rn, CellSet::of_cell(d.mu.hierarchy(), Cell{d.omega.native_depth(), k}), d.mu),
                "round trip, instance " + std::to_string(i) + " generator " + std::to_string(k));
  }
  return g.done(std::to_string(rows) + " ratio rows within 2^-k; round trip exact on 200 density forms");
}

// ------------------------------------------------------------------ 6

Outcome variation_oracle() {
  Gate g;
  Rng rng(kSeed ^ 6);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng.below(6);
    const std::vector<QVec> v = fixtures::random_vectors(rng, n, 1 + rng.below(3), 0.15);
    const std::string w = "instance " + std::to_string(i);
    const auto l1 = VectorMeasure::from_point_values(v, Norm::L1).total_variation();
    const auto o1 = oracle::partition_supremum(v, Norm::L1);
    g.require(l1.rational() && o1.rational() && *l1.rational() == *o1.rational(), w + " l1");
    const auto l2 = VectorMeasure::from_point_values(v, Norm::L2).total_variation();
    const auto o2 = oracle::partition_supremum(v, Norm::L2);
    g.require(abs(l2.value() - o2.value()) <= kEuclideanTol, w + " l2");
  }
  return g.done("300 atom lists: l1 exact, l2 within 1e-30");
}

// -------------------------------------------------------------- 7 to 10

Outcome from_suite(const char* suite, std::size_t instances, const std::vector<std::string>& prefixes,
                   const std::string& summary) {
  Gate g;
  SuiteOptions o;
  o.seed = kSeed;
  o.instances = instances;
  const LawReport r = run_suite(suite, o);
  for (const auto& p : prefixes) {
    const std::size_t before = g.checks;
    g.report(r, p);
    g.require(g.checks > before, "no law named " + p + "*");
  }
  return g.done(summary);
}

Outcome vector_calculus() {
  return from_suite("vector-measure", 300, {"restriction/", "pushforward/", "bartle/"},
                    "restriction, pushforward and Bartle laws on 300 instances; fixtures strict, tight and factor 2");
}

Outcome density_norm() {
  return from_suite("vector-measure", 200, {"density-norm/"},
                    "200 density forms, equality at native depth; two-cell fixture sqrt(2)/2 < 1");
}

Outcome disintegration_check() {
  return from_suite("disintegration", 200,
                    {"three-atom", "random/", "patch/uniqueness", "patch/verified", "injective", "constant"},
                    "three-atom fixture exact; reconstruction and mass balance on 200; 200 patched splits at distance 0");
}

Outcome approx_continuity() {
  return from_suite("approx-continuity", 200, {"agreement", "both-outcomes-seen"},
                    "three conditions agree on every point of 200 atomic instances");
}

// ----------------------------------------------------------------- 11

Outcome strong_lifting() {
  Gate g;
  Rng rng(kSeed ^ 11);
  std::size_t rows = 0;
  for (int d = 1; d <= 2; ++d) {
    const DyadicHierarchy h(d, 16);
    for (int t = 0; t < 4; ++t) {
      const BaseMeasure mu = fixtures::random_step_measure(rng, h, 2, true);
      const StrongLiftingReport r = strong_lifting_check(mu, 16, 64, rng.next());
      for (const StrongLiftingRow& row : r.rows) {
        ++rows;
        g.require(row.member, "no witness for " + point_label(row.x) + " in " + row.open_set);
        g.require(row.within_bound(), "kbar " + std::to_string(row.kbar) + " > " + std::to_string(row.bound));
      }
    }
  }
  g.require(rows == 8 * 64, "missing rows");
  return g.done(std::to_string(rows) + " pairs with a finite witness depth within the bound");
}

// ----------------------------------------------------------------- 12

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  Gate g;
  const fs::path csv = fs::temp_directory_path() / "vmeas_acceptance.csv";
  std::size_t runs = 0;
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(VMEAS_TEST_DATA))
    if (entry.path().extension() == ".json") configs.push_back(entry.path());
  std::sort(configs.begin(), configs.end());
  std::vector<std::string> seen;
  for (const fs::path& cfg : configs) {
    const std::string command = nlohmann::json::parse(slurp(cfg)).value("command", "");
    std::string first_out, first_csv;
    int first_status = -1;
    for (int rep = 0; rep < 2; ++rep) {
      fs::remove(csv);
      const std::string c = cfg.string(), o = csv.string();
      const char* argv[] = {"vmeas", command.c_str(), "--config", c.c_str(), "--out", o.c_str()};
      std::ostringstream out, err;
      const int status = cli::main_entry(6, argv, out, err);
      const std::string bytes = fs::exists(csv) ? slurp(csv) : "";
      if (rep == 0) {
        first_out = out.str();
        first_csv = bytes;
        first_status = status;
      } else {
        g.require(status == first_status && out.str() == first_out && bytes == first_csv,
                  cfg.filename().string() + " differs between runs");
      }
    }
    if (std::find(seen.begin(), seen.end(), command) == seen.end()) seen.push_back(command);
    ++runs;
  }
  for (const std::string& name : cli::command_names())
    g.require(std::find(seen.begin(), seen.end(), name) != seen.end(), "no config for " + name);
  return g.done(std::to_string(runs) + " configs covering every command rerun byte-identically");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"interval counterexample", interval_counterexample},
      {"lower-density axioms", lower_density_axioms},
      {"lifting laws", lifting_laws},
      {"Lebesgue differentiation", lebesgue_differentiation},
      {"RN differentiation", rn_differentiation},
      {"variation oracle", variation_oracle},
      {"vector-measure calculus", vector_calculus},
      {"density-norm inequality", density_norm},
      {"disintegration", disintegration_check},
      {"approximate continuity", approx_continuity},
      {"strong lifting", strong_lifting},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
