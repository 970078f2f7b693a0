#pragma once

// Sparse matrices in coordinate form with reference-precision values.
// Entries are kept sorted by (row, col) with duplicates summed and exact
// zeros dropped, so equality and serialization are canonical.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "../real.hpp"

namespace eigenfmt {

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  Real value;
};

class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> entries) {
    SparseMatrix m(rows, cols);
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (auto& e : entries) {
      if (e.row >= rows || e.col >= cols)
        throw std::out_of_range("SparseMatrix: entry outside dimensions");
      if (!m.entries_.empty() && m.entries_.back().row == e.row &&
          m.entries_.back().col == e.col) {
        m.entries_.back().value += e.value;
      } else {
        m.entries_.push_back(std::move(e));
      }
    }
    // Drop entries that summed to exact zero.
    std::erase_if(m.entries_, [](const Triplet& t) { return t.value.is_zero(); });
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Triplet>& entries() const { return entries_; }

  bool is_square() const { return rows_ == cols_; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (const auto& e : entries_) {
      if (e.row == e.col) continue;
      const Real* mirror = find(e.col, e.row);
      if (mirror == nullptr || !(*mirror == e.value)) return false;
    }
    return true;
  }

  const Real* find(std::size_t r, std::size_t c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{r, c},
                               [](const Triplet& t, const std::pair<std::size_t, std::size_t>& k) {
                                 return t.row != k.first ? t.row < k.first : t.col < k.second;
                               });
    if (it == entries_.end() || it->row != r || it->col != c) return nullptr;
    return &it->value;
  }

  SparseMatrix transposed() const {
    std::vector<Triplet> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
    return from_triplets(cols_, rows_, std::move(t));
  }

  // (A + A^T) / 2
  SparseMatrix symmetrized() const {
    if (!is_square()) throw std::logic_error("symmetrized: matrix must be square");
    std::vector<Triplet> t;
    t.reserve(2 * entries_.size());
    const Real half = Real::parse("0.5");
    for (const auto& e : entries_) {
      t.push_back({e.row, e.col, e.value * half});
      t.push_back({e.col, e.row, e.value * half});
    }
    return from_triplets(rows_, cols_, std::move(t));
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size())
      return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      const auto& x = a.entries_[i];
      const auto& y = b.entries_[i];
      if (x.row != y.row || x.col != y.col || !(x.value == y.value)) return false;
    }
    return true;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Triplet> entries_;
};

// Rectangular inputs are made square: trailing rows or columns that hold no
// entries are dropped; otherwise the short side is zero-padded.
inline SparseMatrix make_square(const SparseMatrix& m) {
  if (m.is_square()) return m;
  std::size_t lo = std::min(m.rows(), m.cols());
  bool trailing_empty = true;
  for (const auto& e : m.entries()) {
    if (e.row >= lo || e.col >= lo) {
      trailing_empty = false;
      break;
    }
  }
  std::size_t n = trailing_empty ? lo : std::max(m.rows(), m.cols());
  std::vector<Triplet> t(m.entries().begin(), m.entries().end());
  return SparseMatrix::from_triplets(n, n, std::move(t));
}

}  // namespace eigenfmt
