#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "vmeas/base_measure.hpp"
#include "vmeas/bundle.hpp"
#include "vmeas/magnitude.hpp"

namespace vmeas {

/// Map [0,1)^d -> R^m. Implementations must be safe to call concurrently.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual int dimension() const = 0;
  virtual std::size_t codim() const = 0;
  virtual QVec value(const DyadicPoint& x) const = 0;
  /// Exact Lebesgue integral over a box, when the map has a closed form.
  virtual std::optional<QVec> box_integral(const Box&) const { return std::nullopt; }
  virtual std::optional<Rational> lipschitz() const { return std::nullopt; }
};

/// Sum of coefficient * x^a * y^b.
class PolynomialMap : public Evaluator {
 public:
  struct Term {
    int a = 0;
    int b = 0;
    QVec coefficient;
  };
  PolynomialMap(int dimension, std::size_t codim, std::vector<Term> terms, std::optional<Rational> lipschitz = {});
  /// Scalar polynomial in one variable, coefficients by ascending degree.
  static PolynomialMap univariate(std::vector<Rational> coefficients, std::optional<Rational> lipschitz = {});

  int dimension() const override { return dimension_; }
  std::size_t codim() const override { return codim_; }
  QVec value(const DyadicPoint& x) const override;
  std::optional<QVec> box_integral(const Box& box) const override;
  std::optional<Rational> lipschitz() const override { return lipschitz_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  int dimension_;
  std::size_t codim_;
  std::vector<Term> terms_;
  std::optional<Rational> lipschitz_;
};

/// Wraps a double-valued callback; values are converted to rationals exactly.
class FunctionEvaluator : public Evaluator {
 public:
  using Fn = std::function<std::vector<double>(const std::vector<double>&)>;
  FunctionEvaluator(int dimension, std::size_t codim, Fn fn, std::optional<Rational> lipschitz = {});

  int dimension() const override { return dimension_; }
  std::size_t codim() const override { return codim_; }
  QVec value(const DyadicPoint& x) const override;
  std::optional<Rational> lipschitz() const override { return lipschitz_; }

 private:
  int dimension_;
  std::size_t codim_;
  Fn fn_;
  std::optional<Rational> lipschitz_;
};

/// Finite sum of indicator * vector over pairwise disjoint cell sets or
/// point sets (one kind per map); zero off the pieces.
class SimpleMap : public Evaluator {
 public:
  struct Piece {
    MeasurableSet set;
    QVec value;
  };
  SimpleMap(std::size_t codim, std::vector<Piece> pieces);
  static SimpleMap zero(std::size_t codim) { return SimpleMap(codim, {}); }
  /// One value per depth-`depth` cell; equal values are grouped, zeros dropped.
  static SimpleMap from_cells(const DyadicHierarchy& h, int depth, const std::vector<QVec>& values);
  /// One value per point of a ground set of size values.size().
  static SimpleMap from_points(const std::vector<QVec>& values);

  int dimension() const override;
  std::size_t codim() const override { return codim_; }
  QVec value(const DyadicPoint& x) const override;
  QVec value_at(std::size_t point) const;
  std::optional<QVec> box_integral(const Box& box) const override;
  std::optional<Rational> lipschitz() const override { return std::nullopt; }

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool on_cells() const;
  /// Deepest piece depth (cell pieces only).
  int depth() const;
  /// Value on every cell at `depth` >= depth().
  std::vector<QVec> cell_values(const DyadicHierarchy& h, int depth) const;
  /// Value at every point of a ground set of `n` points.
  std::vector<QVec> point_values(std::size_t n) const;

  friend bool operator==(const SimpleMap& a, const SimpleMap& b);

 private:
  std::size_t codim_;
  std::vector<Piece> pieces_;
};

Rational measure_of(const BaseMeasure& mu, const MeasurableSet& e);
/// mu(E ∩ cell) without refining E to the cell's depth.
Rational measure_within(const BaseMeasure& mu, const CellSet& e, const Cell& cell);

/// Sum of mu(E ∩ E_i) v_i.
QVec bochner_integral_simple(const SimpleMap& v, const MeasurableSet& e, const BaseMeasure& mu);
/// Integral over E of |v(.)|.
Magnitude integral_of_norm(const SimpleMap& v, const MeasurableSet& e, const BaseMeasure& mu, Norm norm = Norm::L2);

/// Exact integral of v against mu over a cell, when v has a closed form.
std::optional<QVec> exact_cell_integral(const Evaluator& v, const Cell& cell, const BaseMeasure& mu);

struct CellAverage {
  QVec value;
  bool exact = false;
  /// For quadrature with a Lipschitz map: Lip * sqrt(d) * 2^-k / q per
  /// component, as its square.
  std::optional<Rational> squared_error_bound;
};

/// Exact when v has a closed form, otherwise midpoint quadrature with q^d
/// nodes weighted by the density. Throws std::domain_error when mu(cell) = 0.
CellAverage cell_average(const Evaluator& v, const Cell& cell, const BaseMeasure& mu, int q = 8);

/// Everywhere-defined representative at `depth`: the essential value on
/// positive cells (atom averages on atomic spaces), 0 on null cells.
SimpleMap precise_representative(const SimpleMap& v, const BaseMeasure& mu, int depth);

struct BundleMembership {
  bool member = true;
  /// Largest Euclidean distance from a piece value to its fiber.
  Magnitude worst;
};

/// Cell pieces against a bundle attached to cells of bundle.depth().
BundleMembership bundle_membership(const SimpleMap& v, const BanachBundle& bundle);
/// Point pieces against an atom-indexed bundle.
BundleMembership bundle_membership(const SimpleMap& v, const BanachBundle& bundle, const AtomicSpace& space);

}  // namespace vmeas
