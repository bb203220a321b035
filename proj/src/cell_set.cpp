#include "vmeas/cell_set.hpp"

#include <stdexcept>

namespace vmeas {

CellSet::CellSet(DyadicHierarchy hierarchy, int depth)
    : hierarchy_(hierarchy), depth_(depth), bits_(hierarchy.cell_count(depth)) {}

CellSet::CellSet(DyadicHierarchy hierarchy, int depth, boost::dynamic_bitset<> bits)
    : hierarchy_(hierarchy), depth_(depth), bits_(std::move(bits)) {
  if (bits_.size() != hierarchy_.cell_count(depth_))
    throw std::invalid_argument("cell set bit length does not match the depth-" + std::to_string(depth) +
                                " cell count");
}

CellSet CellSet::full(const DyadicHierarchy& h, int depth) {
  CellSet s(h, depth);
  s.bits_.set();
  return s;
}

CellSet CellSet::of_cell(const DyadicHierarchy& h, const Cell& cell) {
  CellSet s(h, cell.depth);
  s.bits_.set(cell.index);
  return s;
}

CellSet CellSet::from_string(const DyadicHierarchy& h, int depth, std::string_view bits) {
  CellSet s(h, depth);
  if (bits.size() != s.size()) throw std::invalid_argument("bit string length does not match cell count");
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      s.bits_.set(i);
    else if (bits[i] != '0')
      throw std::invalid_argument("bit strings use only '0' and '1'");
  }
  return s;
}

std::vector<Cell> CellSet::cells() const {
  std::vector<Cell> out;
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
    out.push_back(Cell{depth_, i});
  return out;
}

bool CellSet::contains(const Cell& cell) const {
  if (cell.depth >= depth_) return bits_.test(hierarchy_.ancestor(cell, depth_).index);
  for (const auto& c : hierarchy_.descendants(cell, depth_))
    if (!bits_.test(c.index)) return false;
  return true;
}

bool CellSet::contains(const DyadicPoint& x) const { return bits_.test(hierarchy_.cell_containing(x, depth_).index); }

CellSet CellSet::refine(int depth) const {
  if (depth < depth_) throw std::domain_error("refine() cannot coarsen; target depth is shallower");
  if (depth == depth_) return *this;
  CellSet out(hierarchy_, depth);
  for (const auto& c : cells())
    for (const auto& d : hierarchy_.descendants(c, depth)) out.bits_.set(d.index);
  return out;
}

int CellSet::minimal_depth() const {
  for (int k = 0; k < depth_; ++k) {
    CellSet coarse(hierarchy_, k);
    bool exact = true;
    for (std::uint64_t i = 0; i < coarse.size() && exact; ++i) {
      auto desc = hierarchy_.descendants(Cell{k, i}, depth_);
      bool first = bits_.test(desc.front().index);
      for (const auto& d : desc) {
        if (bits_.test(d.index) != first) {
          exact = false;
          break;
        }
      }
    }
    if (exact) return k;
  }
  return depth_;
}

std::pair<CellSet, CellSet> CellSet::aligned(const CellSet& other) const {
  if (!(hierarchy_ == other.hierarchy_)) throw std::domain_error("cell sets belong to different hierarchies");
  int d = std::max(depth_, other.depth_);
  return {refine(d), other.refine(d)};
}

CellSet CellSet::complement() const {
  CellSet out = *this;
  out.bits_.flip();
  return out;
}

CellSet CellSet::unite(const CellSet& other) const {
  auto [a, b] = aligned(other);
  a.bits_ |= b.bits_;
  return a;
}

CellSet CellSet::intersect(const CellSet& other) const {
  auto [a, b] = aligned(other);
  a.bits_ &= b.bits_;
  return a;
}

CellSet CellSet::minus(const CellSet& other) const {
  auto [a, b] = aligned(other);
  a.bits_ -= b.bits_;
  return a;
}

CellSet CellSet::symmetric_difference(const CellSet& other) const {
  auto [a, b] = aligned(other);
  a.bits_ ^= b.bits_;
  return a;
}

bool CellSet::subset_of(const CellSet& other) const {
  auto [a, b] = aligned(other);
  return a.bits_.is_subset_of(b.bits_);
}

bool CellSet::same_set(const CellSet& other) const {
  auto [a, b] = aligned(other);
  return a.bits_ == b.bits_;
}

std::string CellSet::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_.test(i)) s[i] = '1';
  return s;
}

}  // namespace vmeas
