#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vmeas/report.hpp"
#include "vmeas/vector_measure.hpp"

namespace vmeas {

/// Omega_y(G) = numerators[G] / normalizer for every generator G of the source.
struct Fiber {
  std::size_t label = 0;
  std::vector<QVec> numerators;
  Magnitude normalizer;
};

struct Disintegration {
  VectorMeasure source;
  /// map[g] is the fiber label of generator g.
  std::vector<std::size_t> map;
  std::size_t target_count = 0;
  /// One entry per fiber of positive mixing mass, by increasing label.
  std::vector<Fiber> fibers;

  /// nu({y}) = |Omega|(phi^-1(y)).
  std::vector<Magnitude> mixing() const;
  const Fiber* fiber(std::size_t label) const;
};

/// Omega_y = Omega restricted to the fiber, divided by its variation mass.
/// Throws std::domain_error when Omega = 0.
Disintegration disintegrate(const VectorMeasure& omega, const std::vector<std::size_t>& map, std::size_t target_count);

struct DisintegrationCheckOptions {
  std::size_t step_functions = 100;
  std::uint64_t seed = 0;
};

/// normalization, concentration, reconstruction on generators and on a
/// battery of step functions, and the mass balance sum_y nu(y)|Omega_y|(X) = |Omega|(X).
LawReport verify_disintegration(const Disintegration& d, const DisintegrationCheckOptions& options = {});

struct PatchPiece {
  /// Generators of the piece X_n.
  boost::dynamic_bitset<> carrier;
  Disintegration part;
};

/// Mixes the pieces with weights nu^n(y)/nu(y). Throws std::invalid_argument
/// on overlapping carriers and std::domain_error when variation mass lies
/// outside their union.
Disintegration patch_disintegrations(const VectorMeasure& omega, const std::vector<PatchPiece>& pieces);

struct UniquenessDistance {
  Magnitude distance;
  std::optional<std::size_t> witness;
};

/// max over fibers of |Omega^1_y - Omega^2_y|(X).
UniquenessDistance uniqueness_distance(const Disintegration& a, const Disintegration& b);

/// fiber,carrier,nu,c_0..c_{m-1}: one row per generator charged by a fiber.
std::string disintegration_csv(const Disintegration& d);

}  // namespace vmeas
