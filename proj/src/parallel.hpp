#pragma once

// Row-parallel loop helpers shared by the kernels. Internal header.

#include <algorithm>
#include <cstddef>
#include <vector>

namespace bvms {

template <class Body>
void parallel_rows(std::size_t rows, Body&& body) {
  const auto m = static_cast<long long>(rows);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < m; ++i) body(static_cast<std::size_t>(i));
}

// One partial per row, summed in row order afterwards: deterministic for any thread count.
template <class RowSum>
double reduce_rows_sum(std::size_t rows, RowSum&& row_sum) {
  std::vector<double> partial(rows);
  parallel_rows(rows, [&](std::size_t i) { partial[i] = row_sum(i); });
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

template <class RowMax>
double reduce_rows_max(std::size_t rows, RowMax&& row_max) {
  std::vector<double> partial(rows);
  parallel_rows(rows, [&](std::size_t i) { partial[i] = row_max(i); });
  return partial.empty() ? 0.0 : *std::max_element(partial.begin(), partial.end());
}

}  // namespace bvms
