#pragma once

// CSR image of a sparse matrix in a target scalar type. Conversion records
// whether any nonzero entry failed to survive rounding (flushed to zero,
// overflowed, or became non-numeric); such a matrix cannot even be stored
// in the format and downstream reporting treats the run accordingly.

#include <cstddef>
#include <vector>

#include "../formats/registry.hpp"
#include "../sparse/matrix.hpp"

namespace eigenfmt {

template <class S>
struct SparseOperator {
  std::size_t n = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> col;
  std::vector<S> val;
  bool degraded = false;

  static SparseOperator from_matrix(const SparseMatrix& m) {
    using T = ScalarTraits<S>;
    SparseOperator out;
    out.n = m.rows();
    out.row_ptr.assign(out.n + 1, 0);
    out.col.reserve(m.nnz());
    out.val.reserve(m.nnz());
    for (const auto& t : m.entries()) ++out.row_ptr[t.row + 1];
    for (std::size_t i = 0; i < out.n; ++i) out.row_ptr[i + 1] += out.row_ptr[i];
    for (const auto& t : m.entries()) {
      S v = T::from_real(t.value);
      if (T::is_bad(v) || (T::is_zero(v) && !t.value.is_zero())) out.degraded = true;
      out.col.push_back(t.col);
      out.val.push_back(v);
    }
    return out;
  }

  void operator()(const std::vector<S>& x, std::vector<S>& y) const {
    using T = ScalarTraits<S>;
    y.assign(n, T::zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        y[i] += val[k] * x[col[k]];
  }
};

}  // namespace eigenfmt
