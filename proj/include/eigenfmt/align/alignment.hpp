#pragma once

// Pairs computed eigenpairs with reference eigenpairs: similarity matching,
// optimal assignment, anchor-based sign resolution, buffer truncation, and
// aggregate error norms. Everything runs in reference arithmetic.

#include <cstddef>
#include <vector>

#include "../real.hpp"
#include "hungarian.hpp"
#include "similarity.hpp"

namespace eigenfmt {

struct EigenPairs {
  std::vector<Real> values;                // ordered by descending magnitude
  std::vector<std::vector<Real>> vectors;  // one column per value
};

struct SignAnchor {
  std::size_t index = 0;
  int sign = 1;
};

// anchor of a reference eigenvector: largest-magnitude entry, lowest index on ties
inline SignAnchor make_anchor(const std::vector<Real>& v) {
  SignAnchor a;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (abs(v[a.index]) < abs(v[i])) a.index = i;
  a.sign = v[a.index].sign() < 0 ? -1 : 1;
  return a;
}

struct AlignmentReport {
  bool ok = false;  // false when a computed vector is zero (unalignable)
  std::vector<std::size_t> permutation;  // reference slot i <- computed column permutation[i]
  std::vector<int> signs;                // applied to the matched computed column
  Real eigenvalue_abs_error{0.0};
  Real eigenvalue_rel_error{0.0};
  Real eigenvector_abs_error{0.0};
  Real eigenvector_rel_error{0.0};
};

// count is the reported prefix; both sides should carry count + buffer pairs
inline AlignmentReport align_and_measure(const EigenPairs& ref, const EigenPairs& got,
                                         std::size_t count,
                                         const std::vector<SignAnchor>* anchors = nullptr) {
  AlignmentReport rep;
  const std::size_t m = std::min(ref.values.size(), got.values.size());
  if (m == 0 || ref.values.size() != got.values.size()) return rep;
  for (const auto& col : got.vectors) {
    bool all_zero = true;
    for (const auto& x : col)
      if (!x.is_zero()) {
        all_zero = false;
        break;
      }
    if (all_zero) return rep;
  }

  auto sim = cosine_similarity(ref.vectors, got.vectors);
  rep.permutation = assign_max_similarity(sim);
  rep.signs.assign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (rep.permutation[i] >= m) return rep;
    SignAnchor a = anchors ? (*anchors)[i] : make_anchor(ref.vectors[i]);
    const auto& q = got.vectors[rep.permutation[i]];
    if (a.index < q.size() && !q[a.index].is_zero())
      rep.signs[i] = ((q[a.index].sign() < 0) == (a.sign < 0)) ? 1 : -1;
  }

  const std::size_t k = std::min(count, m);
  Real vdiff(0.0), vref(0.0);
  for (std::size_t i = 0; i < k; ++i) {
    Real d = got.values[rep.permutation[i]] - ref.values[i];
    vdiff = vdiff + d * d;
    vref = vref + ref.values[i] * ref.values[i];
  }
  rep.eigenvalue_abs_error = sqrt(vdiff);

  Real qdiff(0.0), qref(0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& r = ref.vectors[i];
    const auto& q = got.vectors[rep.permutation[i]];
    const Real s(static_cast<double>(rep.signs[i]));
    for (std::size_t row = 0; row < r.size(); ++row) {
      Real qv = row < q.size() ? s * q[row] : Real(0.0);
      Real d = qv - r[row];
      qdiff = qdiff + d * d;
      qref = qref + r[row] * r[row];
    }
  }
  rep.eigenvector_abs_error = sqrt(qdiff);

  auto rel = [](const Real& num, const Real& den2) {
    if (den2.is_zero()) return num.is_zero() ? Real(0.0) : Real::inf(1);
    return num / sqrt(den2);
  };
  rep.eigenvalue_rel_error = rel(rep.eigenvalue_abs_error, vref);
  rep.eigenvector_rel_error = rel(rep.eigenvector_abs_error, qref);
  rep.ok = true;
  return rep;
}

}  // namespace eigenfmt
