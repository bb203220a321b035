#pragma once

#include <vector>

#include "vmeas/magnitude.hpp"

namespace vmeas {

/// Linear subspace of Q^m, stored as an exact orthogonal (not normalized) basis.
class Subspace {
 public:
  /// Span of the given vectors; dependent generators are dropped.
  static Subspace span(std::size_t ambient_dim, const std::vector<QVec>& generators);
  static Subspace whole(std::size_t ambient_dim);
  static Subspace zero(std::size_t ambient_dim) { return span(ambient_dim, {}); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<QVec>& orthogonal_basis() const { return basis_; }

  /// Orthogonal projection; exact.
  QVec project(const QVec& v) const;
  bool contains(const QVec& v) const { return project(v) == v; }
  /// Euclidean distance from v to the subspace.
  Magnitude distance(const QVec& v) const;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<QVec> basis_;
};

/// Banach bundle over a finite index set of fibers (cells at a fixed depth,
/// or atoms of an atomic space); each fiber is a subspace of R^m.
class BanachBundle {
 public:
  /// `depth` records the cell depth the fibers are attached to (-1 for atom-indexed bundles).
  BanachBundle(std::size_t ambient_dim, int depth, std::vector<Subspace> fibers);
  static BanachBundle constant(std::size_t ambient_dim, int depth, std::size_t fiber_count, const Subspace& fiber);

  std::size_t ambient_dim() const { return ambient_dim_; }
  int depth() const { return depth_; }
  std::size_t fiber_count() const { return fibers_.size(); }
  const Subspace& fiber(std::size_t index) const { return fibers_.at(index); }

 private:
  std::size_t ambient_dim_;
  int depth_;
  std::vector<Subspace> fibers_;
};

}  // namespace vmeas
