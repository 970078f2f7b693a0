#pragma once

// Optimal assignment (Kuhn-Munkres with row/column potentials, O(n^3)).
// Scores are reduced to double before matching; the similarity scale is
// [0, 1] so no precision is lost that could change a materially better
// assignment. Ties resolve deterministically through the scan order.

#include <cstddef>
#include <limits>
#include <vector>

#include "../real.hpp"

namespace eigenfmt {
namespace detail {

// minimizes total cost; cost is n x m with n <= m; returns row -> column
inline std::vector<std::size_t> hungarian_min(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const std::size_t m = n ? cost[0].size() : 0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      std::size_t j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    while (j0 != 0) {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    }
  }
  std::vector<std::size_t> out(n, m);
  for (std::size_t j = 1; j <= m; ++j)
    if (match[j] != 0) out[match[j] - 1] = j - 1;
  return out;
}

}  // namespace detail

// maximizes total similarity; sim is r x c, rows need not equal columns.
// Unmatched rows (possible when r > c) map to sim[0].size().
inline std::vector<std::size_t> assign_max_similarity(const std::vector<std::vector<Real>>& sim) {
  const std::size_t r = sim.size();
  const std::size_t c = r ? sim[0].size() : 0;
  if (r == 0 || c == 0) return std::vector<std::size_t>(r, c);
  if (r <= c) {
    std::vector<std::vector<double>> cost(r, std::vector<double>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) cost[i][j] = -sim[i][j].to_double();
    return detail::hungarian_min(cost);
  }
  std::vector<std::vector<double>> cost(c, std::vector<double>(r));
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i) cost[j][i] = -sim[i][j].to_double();
  auto col_to_row = detail::hungarian_min(cost);
  std::vector<std::size_t> out(r, c);
  for (std::size_t j = 0; j < c; ++j)
    if (col_to_row[j] < r) out[col_to_row[j]] = j;
  return out;
}

}  // namespace eigenfmt
