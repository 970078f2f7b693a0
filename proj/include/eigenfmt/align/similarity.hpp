#pragma once

// Cosine-similarity matrix between two sets of vectors, evaluated in
// reference arithmetic. Entry (i, j) is |<r_i, s_j>| / (||r_i|| ||s_j||);
// rows index the first set. A zero vector yields zero similarity.

#include <cstddef>
#include <vector>

#include "../real.hpp"

namespace eigenfmt {

inline std::vector<std::vector<Real>> cosine_similarity(
    const std::vector<std::vector<Real>>& r, const std::vector<std::vector<Real>>& s) {
  const std::size_t nr = r.size(), ns = s.size();
  std::vector<Real> rn(nr), sn(ns);
  auto norm = [](const std::vector<Real>& v) {
    Real acc(0.0);
    for (const auto& x : v) acc = acc + x * x;
    return sqrt(acc);
  };
  for (std::size_t i = 0; i < nr; ++i) rn[i] = norm(r[i]);
  for (std::size_t j = 0; j < ns; ++j) sn[j] = norm(s[j]);

  std::vector<std::vector<Real>> c(nr, std::vector<Real>(ns, Real(0.0)));
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < ns; ++j) {
      if (rn[i].is_zero() || sn[j].is_zero()) continue;
      Real dot(0.0);
      const std::size_t n = std::min(r[i].size(), s[j].size());
      for (std::size_t k = 0; k < n; ++k) dot = dot + r[i][k] * s[j][k];
      c[i][j] = abs(dot) / (rn[i] * sn[j]);
    }
  return c;
}

}  // namespace eigenfmt
