#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vmeas/magnitude.hpp"

namespace vmeas::oracle {

std::uint64_t bell_number(int n);

/// Calls f(labels, blocks) for every set partition of {0..n-1}, labels given
/// as a restricted growth string.
void for_each_partition(int n, const std::function<void(const std::vector<int>&, int)>& f);

/// max over partitions {E_i} of sum |sum_{p in E_i} values[p]|: the
/// variation of an atom list, from its definition as a supremum.
Magnitude partition_supremum(const std::vector<QVec>& values, Norm norm);

}  // namespace vmeas::oracle
