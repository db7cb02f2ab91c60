#pragma once

#include <vector>

// Row-partitioned helpers. Each row is handled by one worker and row partials
// are combined serially in row order, so reductions give the same bits for any
// worker count.
namespace gpqla::detail {

template <class RowFn>
void for_each_row(int L, RowFn&& fn) {
#pragma omp parallel for schedule(static)
  for (int y = 0; y < L; ++y) fn(y);
}

template <class RowFn>
double row_sum(int L, RowFn&& fn) {
  std::vector<double> partial(static_cast<std::size_t>(L), 0.0);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < L; ++y) partial[static_cast<std::size_t>(y)] = fn(y);
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

template <class RowFn>
double row_max(int L, RowFn&& fn) {
  std::vector<double> partial(static_cast<std::size_t>(L), 0.0);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < L; ++y) partial[static_cast<std::size_t>(y)] = fn(y);
  double m = 0.0;
  for (double p : partial) m = p > m ? p : m;
  return m;
}

}  // namespace gpqla::detail
