#pragma once

#include <cstddef>
#include <vector>

namespace levar::detail {

template <class F>
void for_each_simplex_point(std::size_t n, int resolution, F&& f) {
  std::vector<int> counts(n, 0);
  std::vector<double> w(n, 0.0);
  const double h = 1.0 / resolution;

  // Recursive enumeration of compositions of `resolution` into n parts.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      counts[i] = left;
      for (std::size_t k = 0; k < n; ++k) w[k] = counts[k] * h;
      f(static_cast<const std::vector<double>&>(w));
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[i] = c;
      self(self, i + 1, left - c);
    }
  };
  rec(rec, 0, resolution);
}

}  // namespace levar::detail
