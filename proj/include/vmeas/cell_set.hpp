#pragma once

#include <boost/dynamic_bitset.hpp>

#include "vmeas/dyadic.hpp"

namespace vmeas {

/// Union of depth-k cells of a hierarchy, one bit per cell.
class CellSet {
 public:
  CellSet(DyadicHierarchy hierarchy, int depth);
  CellSet(DyadicHierarchy hierarchy, int depth, boost::dynamic_bitset<> bits);

  static CellSet empty(const DyadicHierarchy& h, int depth) { return CellSet(h, depth); }
  static CellSet full(const DyadicHierarchy& h, int depth);
  static CellSet of_cell(const DyadicHierarchy& h, const Cell& cell);
  /// Bits read left to right: "1010" marks cells 0 and 2.
  static CellSet from_string(const DyadicHierarchy& h, int depth, std::string_view bits);

  const DyadicHierarchy& hierarchy() const { return hierarchy_; }
  int depth() const { return depth_; }
  const boost::dynamic_bitset<>& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  bool test(std::uint64_t index) const { return bits_.test(index); }
  bool empty() const { return bits_.none(); }
  std::vector<Cell> cells() const;

  bool contains(const Cell& cell) const;
  bool contains(const DyadicPoint& x) const;

  /// Same set expressed at a deeper depth.
  CellSet refine(int depth) const;
  /// The coarsest depth at which the set is still a union of cells.
  int minimal_depth() const;

  CellSet complement() const;
  CellSet unite(const CellSet& other) const;
  CellSet intersect(const CellSet& other) const;
  CellSet minus(const CellSet& other) const;
  CellSet symmetric_difference(const CellSet& other) const;
  bool subset_of(const CellSet& other) const;
  /// Equality as point sets, regardless of the depth each side is stored at.
  bool same_set(const CellSet& other) const;

  std::string to_string() const;

  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  std::pair<CellSet, CellSet> aligned(const CellSet& other) const;

  DyadicHierarchy hierarchy_;
  int depth_;
  boost::dynamic_bitset<> bits_;
};

}  // namespace vmeas
