#include "vmeas/dyadic.hpp"

#include <stdexcept>

namespace vmeas {

DyadicPoint::DyadicPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty() || coords_.size() > 2)
    throw std::invalid_argument("points live in dimension 1 or 2");
  for (const auto& c : coords_) {
    if (c < 0 || c >= 1) throw std::domain_error("point coordinate " + to_string(c) + " outside [0,1)");
  }
}

std::optional<int> DyadicPoint::depth() const {
  int k = 0;
  for (const auto& c : coords_) {
    Integer den = denominator(c);
    if ((den & (den - 1)) != 0) return std::nullopt;
    k = std::max(k, static_cast<int>(msb(den)));
  }
  return k;
}

std::uint64_t DyadicPoint::axis_index(std::size_t axis, int k) const {
  const Rational& c = coords_.at(axis);
  Integer scaled = numerator(c) << static_cast<unsigned>(k);
  Integer floor_value = scaled / denominator(c);
  return floor_value.convert_to<std::uint64_t>();
}

DyadicHierarchy::DyadicHierarchy(int dimension, int max_depth)
    : dimension_(dimension), max_depth_(max_depth) {
  if (dimension != 1 && dimension != 2) throw std::invalid_argument("hierarchy dimension must be 1 or 2");
  int limit = dimension == 1 ? 62 : 30;
  if (max_depth < 0 || max_depth > limit)
    throw std::invalid_argument("hierarchy depth must lie in [0," + std::to_string(limit) + "]");
}

void DyadicHierarchy::check_depth(int depth) const {
  if (depth < 0 || depth > max_depth_)
    throw std::out_of_range("depth " + std::to_string(depth) + " outside hierarchy range [0," +
                            std::to_string(max_depth_) + "]");
}

void DyadicHierarchy::check_point(const DyadicPoint& x) const {
  if (x.dimension() != dimension_) throw std::domain_error("point dimension does not match hierarchy");
}

std::uint64_t DyadicHierarchy::cell_count(int depth) const {
  check_depth(depth);
  return std::uint64_t{1} << (dimension_ * depth);
}

Rational DyadicHierarchy::cell_volume(int depth) const { return pow2(-dimension_ * depth); }

Rational DyadicHierarchy::squared_diameter(int depth) const { return Rational(dimension_) * pow2(-2 * depth); }

Cell DyadicHierarchy::make_cell(int depth, std::uint64_t ix, std::uint64_t iy) const {
  check_depth(depth);
  if (ix >= axis_count(depth) || iy >= (dimension_ == 2 ? axis_count(depth) : 1))
    throw std::out_of_range("cell coordinates outside depth grid");
  return Cell{depth, dimension_ == 1 ? ix : ix + (iy << depth)};
}

std::array<std::uint64_t, 2> DyadicHierarchy::axis_coords(const Cell& cell) const {
  if (dimension_ == 1) return {cell.index, 0};
  std::uint64_t mask = axis_count(cell.depth) - 1;
  return {cell.index & mask, cell.index >> cell.depth};
}

Box DyadicHierarchy::bounds(const Cell& cell) const {
  Box box;
  auto ij = axis_coords(cell);
  Rational side = pow2(-cell.depth);
  for (int a = 0; a < dimension_; ++a) {
    box.lo.push_back(Rational(ij[a]) * side);
    box.hi.push_back(Rational(ij[a] + 1) * side);
  }
  return box;
}

Cell DyadicHierarchy::parent(const Cell& cell) const {
  if (cell.depth == 0) throw std::domain_error("root cell has no parent");
  return ancestor(cell, cell.depth - 1);
}

Cell DyadicHierarchy::ancestor(const Cell& cell, int depth) const {
  if (depth > cell.depth || depth < 0) throw std::domain_error("ancestor depth must not exceed cell depth");
  auto ij = axis_coords(cell);
  int shift = cell.depth - depth;
  return make_cell(depth, ij[0] >> shift, ij[1] >> shift);
}

std::vector<Cell> DyadicHierarchy::children(const Cell& cell) const { return descendants(cell, cell.depth + 1); }

std::vector<Cell> DyadicHierarchy::descendants(const Cell& cell, int depth) const {
  check_depth(depth);
  if (depth < cell.depth) throw std::domain_error("descendant depth must not be coarser than the cell");
  auto ij = axis_coords(cell);
  int shift = depth - cell.depth;
  std::uint64_t span = std::uint64_t{1} << shift;
  std::vector<Cell> out;
  std::uint64_t ny = dimension_ == 2 ? span : 1;
  out.reserve(span * ny);
  for (std::uint64_t y = 0; y < ny; ++y)
    for (std::uint64_t x = 0; x < span; ++x)
      out.push_back(make_cell(depth, (ij[0] << shift) + x, dimension_ == 2 ? (ij[1] << shift) + y : 0));
  return out;
}

bool DyadicHierarchy::contains(const Cell& outer, const Cell& inner) const {
  if (inner.depth < outer.depth) return false;
  return ancestor(inner, outer.depth) == outer;
}

bool DyadicHierarchy::contains(const Cell& cell, const DyadicPoint& x) const {
  return cell_containing(x, cell.depth) == cell;
}

Cell DyadicHierarchy::cell_containing(const DyadicPoint& x, int depth) const {
  check_point(x);
  return make_cell(depth, x.axis_index(0, depth), dimension_ == 2 ? x.axis_index(1, depth) : 0);
}

std::vector<Cell> DyadicHierarchy::chain(const DyadicPoint& x, int depth) const {
  std::vector<Cell> out;
  out.reserve(depth + 1);
  for (int k = 0; k <= depth; ++k) out.push_back(cell_containing(x, k));
  return out;
}

}  // namespace vmeas
