#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vmeas/bochner.hpp"
#include "vmeas/diff_basis.hpp"
#include "vmeas/execution.hpp"
#include "vmeas/lebesgue.hpp"

namespace vmeas {

class AbsoluteContinuityError : public std::domain_error {
 public:
  AbsoluteContinuityError(std::string witness, const std::string& what)
      : std::domain_error(what), witness_(std::move(witness)) {}
  /// The null set on which the measure does not vanish.
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

/// The variation of a vector measure, as weights on the generators of its
/// finite view (points, or cells at the native depth).
class VariationMeasure {
 public:
  VariationMeasure(std::vector<Magnitude> weights, std::optional<BaseMeasure> cells_base, int depth);

  const std::vector<Magnitude>& weights() const { return weights_; }
  Magnitude total() const;
  Magnitude of(const PointSet& e) const;
  /// Cell sets of any depth; deeper sets are split by base-measure proportion.
  Magnitude of(const CellSet& e) const;
  Magnitude of_generators(const boost::dynamic_bitset<>& mask) const;
  /// The same measure as a BaseMeasure, when every weight is rational.
  std::optional<BaseMeasure> as_base_measure() const;

 private:
  std::vector<Magnitude> weights_;
  std::optional<BaseMeasure> base_;
  int depth_;
};

/// R^m-valued measure of bounded variation. Atom lists live on the power set
/// of a finite ground set; density forms g·mu on the algebra of mu's model.
class VectorMeasure {
 public:
  enum class Kind { AtomList, DensityForm };
  struct Carrier {
    std::size_t point;
    QVec value;
  };

  static VectorMeasure atom_list(std::size_t ground_size, std::size_t codim, std::vector<Carrier> carriers,
                                 Norm norm = Norm::L2);
  /// Vectors per ground point; zero vectors are not stored as carriers.
  static VectorMeasure from_point_values(const std::vector<QVec>& values, Norm norm = Norm::L2);
  static VectorMeasure density_form(std::shared_ptr<const Evaluator> density, BaseMeasure mu, Norm norm = Norm::L2);
  static VectorMeasure density_form(const SimpleMap& density, BaseMeasure mu, Norm norm = Norm::L2) {
    return density_form(std::make_shared<SimpleMap>(density), std::move(mu), norm);
  }

  Kind kind() const { return kind_; }
  Norm norm() const { return norm_; }
  std::size_t codim() const { return codim_; }
  const std::vector<Carrier>& carriers() const { return carriers_; }
  std::size_t ground_size() const { return ground_size_; }
  const Evaluator& density() const;
  const SimpleMap* simple_density() const;
  const BaseMeasure& base() const;

  /// A finite view exists for atom lists and simple densities.
  bool finite() const { return finite_; }
  bool on_cells() const { return finite_ && depth_ >= 0; }
  /// Cells at this depth (or points when -1) are the generators.
  int native_depth() const { return depth_; }
  std::size_t generator_count() const { return generators_.size(); }
  /// Omega of each generator.
  const std::vector<QVec>& generator_values() const;
  std::string generator_label(std::size_t g) const;

  QVec evaluate(const PointSet& e) const;
  QVec evaluate(const CellSet& e) const;
  QVec evaluate(const Cell& cell) const;
  QVec evaluate(const MeasurableSet& e) const;
  QVec evaluate_generators(const boost::dynamic_bitset<>& mask) const;

  const VariationMeasure& variation() const;
  Magnitude total_variation() const { return variation().total(); }

  /// f Omega with f given per generator.
  VectorMeasure restrict(const std::vector<Rational>& f) const;
  VectorMeasure with_norm(Norm norm) const;

 private:
  VectorMeasure() = default;
  void build_view();

  Kind kind_ = Kind::AtomList;
  Norm norm_ = Norm::L2;
  std::size_t codim_ = 0;
  std::size_t ground_size_ = 0;
  std::vector<Carrier> carriers_;
  std::shared_ptr<const Evaluator> density_;
  std::optional<BaseMeasure> base_;
  bool finite_ = false;
  int depth_ = -1;
  int min_depth_ = 0;
  std::vector<QVec> generators_;
  std::shared_ptr<const VariationMeasure> variation_;
};

/// (phi#Omega) as an atom list on `target_count` points; map[g] is the
/// target of generator g.
VectorMeasure pushforward(const VectorMeasure& omega, const std::vector<std::size_t>& map, std::size_t target_count);
/// phi#|Omega| per target.
std::vector<Magnitude> pushforward_variation(const VectorMeasure& omega, const std::vector<std::size_t>& map,
                                             std::size_t target_count);

/// Sum of lambda_i 1_{E_i}.
struct StepFunction {
  std::vector<std::pair<Rational, MeasurableSet>> terms;
  /// Value on each generator of omega's finite view.
  std::vector<Rational> on_generators(const VectorMeasure& omega) const;
};

/// Sum of lambda_i Omega(E_i).
QVec bartle_integral(const VectorMeasure& omega, const StepFunction& f);
/// Sum over generators of f(G) Omega(G); the second route to the same value.
QVec bartle_integral_generators(const VectorMeasure& omega, const std::vector<Rational>& f);
/// max |sum of Omega over a union of generators|; exact by Gray-code
/// enumeration up to 20 generators, otherwise |Omega|(X) as an upper bound.
Magnitude sup_set_norm(const VectorMeasure& omega, bool* exact = nullptr);

/// dOmega/dmu per generator. Throws AbsoluteContinuityError naming a
/// mu-null generator that carries mass.
SimpleMap rn_derivative(const VectorMeasure& omega, const BaseMeasure& mu);

struct RnRow {
  int depth = 0;
  QVec ratio;
  /// Euclidean distance from the ratio to the derivative at x.
  Magnitude residual;
};

struct RnPointReport {
  DyadicPoint x;
  QVec target;
  std::vector<RnRow> chain;
  ILimitResult::Status verdict = ILimitResult::Status::Inconclusive;
  int stable_depth = 0;
  /// Depth of the first null chain cell, when the chain had to stop.
  std::optional<int> truncated_at;
  bool converged() const { return verdict == ILimitResult::Status::Converged; }
};

/// Chains Omega(P_k^x)/mu(P_k^x) for a density form whose base is mu.
std::vector<RnPointReport> rn_ratio_scan(const VectorMeasure& omega, const BaseMeasure& mu,
                                         const std::vector<DyadicPoint>& points, const ScanOptions& options);
std::string rn_csv(const std::vector<RnPointReport>& reports);

struct DensityNormLevel {
  /// "depth k", "points", "atoms" or "X".
  std::string level;
  bool native = false;
  std::size_t cells = 0;
  std::size_t strict = 0;
  std::size_t violations = 0;
  std::string first_strict;
};

struct DensityNormReport {
  std::vector<DensityNormLevel> levels;
  bool holds() const;
  bool equality_at_native() const;
};

/// |Omega(c)|/mu(c) <= |Omega|(c)/mu(c) on every positive cell of every depth
/// up to the native one (points and the whole space for atom lists).
DensityNormReport density_norm_inequality(const VectorMeasure& omega, const BaseMeasure& mu);

}  // namespace vmeas
