#include <benchmark/benchmark.h>

#include "vmeas/fixtures.hpp"
#include "vmeas/lebesgue.hpp"
#include "vmeas/lower_density.hpp"

using namespace vmeas;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_LowerDensityMasks(benchmark::State& state) {
  const int cells = static_cast<int>(state.range(1));
  int depth = 0;
  while ((1 << depth) < cells) ++depth;
  const DyadicHierarchy h(1, depth + 2);
  Rng rng(17);
  const BaseMeasure mu = fixtures::random_step_measure(rng, h, depth, true);
  const auto table = density_point_table(mu, depth);
  std::uint16_t pos = 0;
  const auto masses = mu.cell_masses(depth);
  for (std::size_t i = 0; i < masses.size(); ++i)
    if (masses[i] > 0) pos |= static_cast<std::uint16_t>(1u << i);
  for (auto _ : state) benchmark::DoNotOptimize(check_lower_density_masks(table, cells, pos, mode(state)));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << cells) * ((std::int64_t{1} << cells) + 1) / 2);
}
BENCHMARK(BM_LowerDensityMasks)->ArgsProduct({{0, 1}, {4, 8, 16}})->Unit(benchmark::kMillisecond);

void BM_LebesgueScan(benchmark::State& state) {
  const DyadicHierarchy h(2, 20);
  const BaseMeasure leb = BaseMeasure::lebesgue(h);
  const PolynomialMap p(2, 2, {{2, 0, QVec{1, 0}}, {1, 1, QVec{0, 1}}});
  Rng rng(19);
  std::vector<DyadicPoint> pts;
  for (std::int64_t i = 0; i < state.range(1); ++i) pts.push_back(DyadicPoint{rng.dyadic(20), rng.dyadic(20)});
  ScanOptions opt;
  opt.k_max = 16;
  opt.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(lebesgue_point_scan(p, leb, pts, opt));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_LebesgueScan)->ArgsProduct({{0, 1}, {64, 256}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
