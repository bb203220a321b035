#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmeas/execution.hpp"
#include "vmeas/lifting.hpp"
#include "vmeas/magnitude.hpp"
#include "vmeas/random.hpp"
#include "vmeas/report.hpp"

/// Seeded law batteries: exhaustive on small models, sampled on larger ones.
namespace vmeas {

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Seeded instances per randomized law group.
  std::size_t instances = 100;
  /// Largest atom count for the exhaustive lifting checks (at most 5).
  std::size_t atoms = 4;
  /// Unset: l2 for vector measures, l1 for disintegrations.
  std::optional<Norm> norm;
  Execution execution = Execution::Serial;
};

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown suite.
LawReport run_suite(std::string_view name, const SuiteOptions& options);

LawReport lifting_suite(const SuiteOptions& options);
LawReport lower_density_suite(const SuiteOptions& options);
LawReport vector_measure_suite(const SuiteOptions& options);
LawReport disintegration_suite(const SuiteOptions& options);
LawReport approx_continuity_suite(const SuiteOptions& options);

/// Boolean-homomorphism laws, null invariance, a.e.-representative,
/// idempotence and monotonicity over `sets` (measurable). Every unordered pair
/// when sampled_pairs is 0, otherwise that many random pairs.
LawReport lifting_set_laws(const LiftingOperator& ell, const std::vector<PointSet>& sets, std::size_t sampled_pairs,
                           Rng& rng);
/// Function lifting on `trials` random classes.
LawReport lifting_function_laws(const LiftingOperator& ell, std::size_t trials, Rng& rng);
/// Section lifting into R^dim on `trials` random step sections.
LawReport lifting_section_laws(const LiftingOperator& ell, std::size_t dim, std::size_t trials, Norm norm, Rng& rng);

}  // namespace vmeas
