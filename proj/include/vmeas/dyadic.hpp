#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "vmeas/rational.hpp"

namespace vmeas {

/// Half-open dyadic box of side 2^-depth. In two dimensions the index packs
/// the axis coordinates as ix + (iy << depth).
struct Cell {
  int depth = 0;
  std::uint64_t index = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Axis-aligned box [lo, hi) with rational corners.
struct Box {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
};

/// Point of [0,1)^d with rational coordinates.
///
/// Dyadic coordinates are the intended case; other rationals (1/3, say) are
/// accepted since only the cell containing the point at each depth matters.
class DyadicPoint {
 public:
  DyadicPoint() = default;
  explicit DyadicPoint(std::vector<Rational> coords);
  DyadicPoint(std::initializer_list<Rational> coords) : DyadicPoint(std::vector<Rational>(coords)) {}

  int dimension() const { return static_cast<int>(coords_.size()); }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  /// Least k with every coordinate a multiple of 2^-k; empty for non-dyadic points.
  std::optional<int> depth() const;
  /// Integer coordinate floor(x_i 2^k) of the depth-k cell along axis i.
  std::uint64_t axis_index(std::size_t axis, int k) const;

  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;

 private:
  std::vector<Rational> coords_;
};

/// Refining sequence of half-open dyadic partitions of [0,1)^d, d in {1,2}.
class DyadicHierarchy {
 public:
  DyadicHierarchy(int dimension, int max_depth);

  int dimension() const { return dimension_; }
  int max_depth() const { return max_depth_; }

  std::uint64_t cell_count(int depth) const;
  std::uint64_t axis_count(int depth) const { return std::uint64_t{1} << depth; }
  Rational cell_volume(int depth) const;
  /// Square of the diameter of any depth-k cell: d 4^-k.
  Rational squared_diameter(int depth) const;

  Cell make_cell(int depth, std::uint64_t ix, std::uint64_t iy = 0) const;
  std::array<std::uint64_t, 2> axis_coords(const Cell& cell) const;
  Box bounds(const Cell& cell) const;

  Cell root() const { return Cell{0, 0}; }
  Cell parent(const Cell& cell) const;
  Cell ancestor(const Cell& cell, int depth) const;
  std::vector<Cell> children(const Cell& cell) const;
  /// All depth-`depth` cells inside `cell` (depth >= cell.depth).
  std::vector<Cell> descendants(const Cell& cell, int depth) const;
  bool contains(const Cell& outer, const Cell& inner) const;
  bool contains(const Cell& cell, const DyadicPoint& x) const;

  Cell cell_containing(const DyadicPoint& x, int depth) const;
  /// P_0^x, P_1^x, ..., P_depth^x.
  std::vector<Cell> chain(const DyadicPoint& x, int depth) const;

  void check_point(const DyadicPoint& x) const;
  void check_depth(int depth) const;

  friend bool operator==(const DyadicHierarchy&, const DyadicHierarchy&) = default;

 private:
  int dimension_;
  int max_depth_;
};

}  // namespace vmeas
