#pragma once

// Symmetric normalized graph Laplacian, computed in reference precision
// from a symmetrized adjacency matrix:
//   L[i][i] = 1 when deg(i) > 0, else 0
//   L[i][j] = -1 / sqrt(deg(i) * deg(j)) when i != j, a[i][j] != 0, and
//             both degrees are positive
// with deg(i) the i-th row sum of the symmetrized adjacency matrix.
// Self-loops contribute to degrees but produce no off-diagonal entry.

#include <vector>

#include "../sparse/matrix.hpp"

namespace eigenfmt {

inline std::vector<Real> weighted_degrees(const SparseMatrix& a) {
  std::vector<Real> deg(a.rows());
  for (const auto& e : a.entries()) deg[e.row] += e.value;
  return deg;
}

inline SparseMatrix normalized_laplacian(const SparseMatrix& adjacency) {
  if (!adjacency.is_square())
    throw std::logic_error("normalized_laplacian: adjacency must be square");
  const SparseMatrix a = adjacency.is_symmetric() ? adjacency : adjacency.symmetrized();
  const std::vector<Real> deg = weighted_degrees(a);
  const std::size_t n = a.rows();
  std::vector<Triplet> out;
  out.reserve(a.nnz() + n);
  const Real zero;
  for (std::size_t i = 0; i < n; ++i)
    if (deg[i] > zero) out.push_back({i, i, Real(1.0)});
  for (const auto& e : a.entries()) {
    if (e.row == e.col) continue;
    if (!(deg[e.row] > zero) || !(deg[e.col] > zero)) continue;
    out.push_back({e.row, e.col, -(Real(1.0) / sqrt(deg[e.row] * deg[e.col]))});
  }
  return SparseMatrix::from_triplets(n, n, std::move(out));
}

// Selection rule for raw external matrices: keep exactly the square
// symmetric ones with at most 20000 stored entries.
inline bool keep_external_matrix(const SparseMatrix& m) {
  return m.is_square() && m.nnz() <= 20000 && m.is_symmetric();
}

}  // namespace eigenfmt
