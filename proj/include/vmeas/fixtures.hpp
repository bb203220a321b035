#pragma once

#include "vmeas/bochner.hpp"
#include "vmeas/random.hpp"
#include "vmeas/vector_measure.hpp"

/// Seeded random models shared by the law batteries, the CLI and the tests.
namespace vmeas::fixtures {

/// `atoms` atoms with positive weights, each with up to `max_null` extra
/// zero-weight points; point labels are shuffled.
AtomicSpace random_atomic_space(Rng& rng, std::size_t atoms, std::size_t max_null);
PointSet random_measurable(const AtomicSpace& space, Rng& rng);
/// Null points of a random subset of E's null points toggled.
PointSet null_perturbation(const AtomicSpace& space, const PointSet& e, Rng& rng);
/// Valid a.e.-class: constant on the positive points of each atom, arbitrary on null points.
std::vector<Rational> random_class(const AtomicSpace& space, Rng& rng);
std::vector<QVec> random_section(const AtomicSpace& space, std::size_t dim, Rng& rng);

IntervalUnion random_interval_union(Rng& rng, const Interval& ambient, int grid_depth, int max_pieces);

/// Step density at `depth`; with allow_null some cells get density 0 (never all).
BaseMeasure random_step_measure(Rng& rng, const DyadicHierarchy& h, int depth, bool allow_null);
std::vector<QVec> random_vectors(Rng& rng, std::size_t count, std::size_t dim, double zero_probability = 0.0);
SimpleMap random_cell_map(Rng& rng, const DyadicHierarchy& h, int depth, std::size_t codim);
VectorMeasure random_atom_list(Rng& rng, std::size_t ground, std::size_t codim, Norm norm);

/// The three-point example: (3,0), (0,4), (1,0) with labels 0, 0, 1.
VectorMeasure three_atom_measure(Norm norm = Norm::L1);
std::vector<std::size_t> three_atom_map();

}  // namespace vmeas::fixtures
