#pragma once

#include <string>
#include <vector>

#include "vmeas/bochner.hpp"
#include "vmeas/diff_basis.hpp"
#include "vmeas/execution.hpp"

namespace vmeas {

struct ScanOptions {
  Rational tol = Rational(1, 10000);
  int k_max = 20;
  int quadrature = 8;
  Execution execution = Execution::Serial;
};

struct LebesgueRow {
  int depth = 0;
  QVec average;
  /// Euclidean distance from the average to v(x).
  Magnitude residual;
  /// Mean of |v(.) - v(x)| over the chain cell: exact for simple maps,
  /// midpoint quadrature otherwise.
  Magnitude mean_deviation;
  /// The average (and so the residual) is exact.
  bool exact = false;
  bool deviation_exact = false;
};

struct LebesguePointReport {
  DyadicPoint x;
  QVec value;
  std::vector<LebesgueRow> chain;
  ILimitResult::Status verdict = ILimitResult::Status::Inconclusive;
  /// First depth from which every average is within tol of the last one.
  int stable_depth = 0;

  bool converged() const { return verdict == ILimitResult::Status::Converged; }
  const Magnitude& final_residual() const { return chain.back().residual; }
};

/// Converged iff the averages pass the Cauchy tail test and the final
/// residual is within tol. Points need not be at depth >= k_max.
LebesguePointReport lebesgue_point(const Evaluator& v, const BaseMeasure& mu, const DyadicPoint& x,
                                   const ScanOptions& options);
std::vector<LebesguePointReport> lebesgue_point_scan(const Evaluator& v, const BaseMeasure& mu,
                                                     const std::vector<DyadicPoint>& points, const ScanOptions& options);

/// Header: point,k,avg_0..avg_{m-1},residual.
std::string lebesgue_csv(const std::vector<LebesguePointReport>& reports);

std::string point_label(const DyadicPoint& x);
/// Rational string when the value is rational, otherwise 40 significant digits.
std::string csv_number(const Magnitude& m);

}  // namespace vmeas
