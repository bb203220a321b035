#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vmeas/base_measure.hpp"
#include "vmeas/execution.hpp"
#include "vmeas/lifting.hpp"
#include "vmeas/report.hpp"

namespace vmeas {

/// A finite family of sets with the operations the lower-density axioms need.
template <class Set>
struct SetAlgebra {
  SetAlgebra(Set empty_set, Set full_set) : empty(std::move(empty_set)), full(std::move(full_set)) {}

  std::vector<Set> sets;
  Set empty;
  Set full;
  std::function<Rational(const Set&)> measure;
  std::function<Set(const Set&, const Set&)> meet;
  std::function<Set(const Set&, const Set&)> join;
  std::function<Set(const Set&, const Set&)> symmetric_difference;
  std::function<Set(const Set&)> complement;
  std::function<bool(const Set&, const Set&)> equal;
  std::function<bool(const Set&, const Set&)> subset;
  std::function<std::string(const Set&)> describe;
};

SetAlgebra<PointSet> atomic_algebra(const AtomicSpace& space);
/// All 2^n unions of depth-`depth` cells (n <= 20).
SetAlgebra<CellSet> leaf_algebra(const BaseMeasure& mu, int depth);
/// Given sample sets inside one ambient interval, Lebesgue measure.
SetAlgebra<IntervalUnion> interval_algebra(const Interval& ambient, std::vector<IntervalUnion> sets);

struct LowerDensityOptions {
  /// 0 means every ordered pair.
  std::size_t sampled_pairs = 0;
  std::uint64_t seed = 0;
  /// Whether phi is expected to preserve unions (i.e. to be a lifting);
  /// the union law is left out of the report when unset.
  std::optional<bool> union_expected = true;
};

/// Laws: empty, full, intersection, null-invariance, a.e.-representative,
/// monotonicity, and union (the lifting test).
template <class Set>
LawReport check_lower_density(const std::function<Set(const Set&)>& phi, const SetAlgebra<Set>& alg,
                              const LowerDensityOptions& options = {}) {
  LawReport report{"lower-density", {}};
  report.laws.reserve(7);  // the references below must stay valid
  LawResult scratch;
  LawResult& empty = report.add("empty");
  LawResult& full = report.add("full");
  LawResult& inter = report.add("intersection");
  LawResult& nulls = report.add("null-invariance");
  LawResult& ae = report.add("a.e.-representative");
  LawResult& mono = report.add("monotonicity");
  LawResult& uni = options.union_expected ? report.add("union", *options.union_expected) : scratch;

  LawTally(empty).check_lazy(alg.equal(phi(alg.empty), alg.empty), [&] { return alg.describe(phi(alg.empty)); });
  LawTally(full).check_lazy(alg.equal(phi(alg.full), alg.full), [&] { return alg.describe(phi(alg.full)); });

  std::vector<Set> images;
  images.reserve(alg.sets.size());
  for (const Set& e : alg.sets) images.push_back(phi(e));
  LawTally ae_tally(ae);
  for (std::size_t i = 0; i < alg.sets.size(); ++i)
    ae_tally.check_lazy(alg.measure(alg.symmetric_difference(alg.sets[i], images[i])) == 0,
                        [&] { return "E=" + alg.describe(alg.sets[i]); });

  auto pair_check = [&](std::size_t i, std::size_t j) {
    const Set& e = alg.sets[i];
    const Set& f = alg.sets[j];
    const Set& pe = images[i];
    const Set& pf = images[j];
    auto w = [&] { return "E=" + alg.describe(e) + " F=" + alg.describe(f); };
    LawTally(inter).check_lazy(alg.equal(phi(alg.meet(e, f)), alg.meet(pe, pf)), w);
    LawTally(uni).check_lazy(alg.equal(phi(alg.join(e, f)), alg.join(pe, pf)), w);
    if (alg.measure(alg.symmetric_difference(e, f)) == 0) LawTally(nulls).check_lazy(alg.equal(pe, pf), w);
    if (alg.subset(e, f)) LawTally(mono).check_lazy(alg.subset(pe, pf), w);
  };
  const std::size_t n = alg.sets.size();
  if (n == 0) return report;
  if (options.sampled_pairs == 0) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pair_check(i, j);
  } else {
    std::mt19937_64 rng(options.seed);
    for (std::size_t s = 0; s < options.sampled_pairs; ++s) pair_check(rng() % n, rng() % n);
  }
  return report;
}

/// Violation counts from the bitmask kernel over every unordered pair of a
/// <= 16-cell algebra; `first_*` hold the first (E, F) found, packed E<<16|F.
struct MaskLawCounts {
  std::uint64_t sets = 0;
  std::uint64_t pairs = 0;
  std::uint64_t empty = 0, full = 0, ae = 0;
  std::uint64_t intersection = 0, unions = 0, null_invariance = 0;
  std::uint64_t first_intersection = 0, first_union = 0, first_null = 0;

  bool lower_density() const { return empty + full + ae + intersection + null_invariance == 0; }
  friend bool operator==(const MaskLawCounts&, const MaskLawCounts&) = default;
};

/// `phi[E]` is the image of the cell mask E; `positive` flags cells of positive mass.
MaskLawCounts check_lower_density_masks(const std::vector<std::uint16_t>& phi, int cells, std::uint16_t positive,
                                        Execution execution);
/// Table of density_points_partition on the leaf algebra at `depth` (<= 16 cells).
std::vector<std::uint16_t> density_point_table(const BaseMeasure& mu, int depth);

/// Whether that table is a lifting: every chain floor holds exactly one positive cell.
bool leaf_density_preserves_unions(const BaseMeasure& mu, int depth);

LawReport mask_counts_report(const MaskLawCounts& counts, bool union_expected);

/// Lifting of a leaf algebra: each positive cell is an atom, and a null cell
/// joins the first positive cell of its chain floor.
LiftingOperator leaf_lifting(const BaseMeasure& mu, int depth);

/// phi(E) ⊂ ell(E) ⊂ X \ phi(X \ E) for every measurable E of ell's space.
LawResult check_sandwich(const std::function<PointSet(const PointSet&)>& phi, const LiftingOperator& ell);

std::string describe(const PointSet& e);
std::string describe(const IntervalUnion& e);

}  // namespace vmeas
