#include "vmeas/oracles.hpp"

#include <stdexcept>

namespace vmeas::oracle {

std::uint64_t bell_number(int n) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

void for_each_partition(int n, const std::function<void(const std::vector<int>&, int)>& f) {
  if (n < 0 || n > 12) throw std::invalid_argument("partition enumeration limited to 12 elements");
  if (n == 0) {
    f({}, 0);
    return;
  }
  std::vector<int> a(n, 0), m(n, 0);  // m[i] = max(a[0..i])
  while (true) {
    f(a, m[n - 1] + 1);
    int i = n - 1;
    while (i > 0 && a[i] == m[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    m[i] = std::max(m[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      m[j] = m[i];
    }
  }
}

Magnitude partition_supremum(const std::vector<QVec>& values, Norm norm) {
  Magnitude best;
  if (values.empty()) return best;
  const std::size_t dim = values[0].dim();
  for_each_partition(static_cast<int>(values.size()), [&](const std::vector<int>& labels, int blocks) {
    std::vector<QVec> sums(blocks, QVec(dim));
    for (std::size_t p = 0; p < labels.size(); ++p) sums[labels[p]] += values[p];
    Magnitude total;
    for (const QVec& s : sums) total += norm_of(s, norm);
    if (mag_less(best, total)) best = total;
  });
  return best;
}

}  // namespace vmeas::oracle
