#pragma once

// Small dense matrices in a target scalar type, plus a real Schur
// decomposition (Givens Hessenberg reduction followed by explicitly
// shifted Hessenberg QR with Wilkinson shifts). Every operation rounds in
// the target format; callers detect failure through the return flag.

#include <cstddef>
#include <vector>

#include "../formats/registry.hpp"

namespace eigenfmt {

template <class S>
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<S> a;

  Dense() = default;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  S& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Dense identity(std::size_t m) {
    Dense d(m, m);
    for (std::size_t i = 0; i < m; ++i) d(i, i) = ScalarTraits<S>::from_real(Real(1.0));
    return d;
  }

  bool any_bad() const {
    for (const auto& v : a)
      if (ScalarTraits<S>::is_bad(v)) return true;
    return false;
  }
};

namespace detail {

template <class S>
struct GivensRotation {
  S c, s;  // [c s; -s c] acting on (x, y)
};

// Rotation sending (x, y) to (r, 0), built with max-scaling so the interim
// squares cannot overflow.
template <class S>
GivensRotation<S> make_givens(const S& x, const S& y) {
  using T = ScalarTraits<S>;
  const S one = T::from_real(Real(1.0));
  const S zero = T::zero();
  if (T::is_zero(y)) return {one, zero};
  if (T::is_zero(x)) return {zero, one};
  S ax = abs(x), ay = abs(y);
  S m = ax >= ay ? ax : ay;
  S xs = x / m, ys = y / m;
  S h = sqrt(xs * xs + ys * ys);
  return {xs / h, ys / h};
}

// Frobenius norm with max-abs scaling.
template <class S>
S frobenius(const Dense<S>& m) {
  using T = ScalarTraits<S>;
  S mx = T::zero();
  for (const auto& v : m.a) {
    S av = abs(v);
    if (av > mx) mx = av;
  }
  if (T::is_zero(mx)) return mx;
  S s = T::zero();
  for (const auto& v : m.a) {
    S t = v / mx;
    s += t * t;
  }
  return mx * sqrt(s);
}

// Reduces H (m x m) to upper Hessenberg by Givens similarity transforms,
// accumulating them into U (right-multiplied).
template <class S>
void hessenberg_reduce(Dense<S>& h, Dense<S>& u) {
  const std::size_t m = h.rows;
  for (std::size_t j = 0; j + 2 < m; ++j) {
    for (std::size_t i = m - 1; i >= j + 2; --i) {
      if (ScalarTraits<S>::is_zero(h(i, j))) continue;
      auto g = make_givens(h(i - 1, j), h(i, j));
      for (std::size_t k = j; k < m; ++k) {
        S x = h(i - 1, k), y = h(i, k);
        h(i - 1, k) = g.c * x + g.s * y;
        h(i, k) = g.c * y - g.s * x;
      }
      for (std::size_t k = 0; k < m; ++k) {
        S x = h(k, i - 1), y = h(k, i);
        h(k, i - 1) = g.c * x + g.s * y;
        h(k, i) = g.c * y - g.s * x;
      }
      for (std::size_t k = 0; k < m; ++k) {
        S x = u(k, i - 1), y = u(k, i);
        u(k, i - 1) = g.c * x + g.s * y;
        u(k, i) = g.c * y - g.s * x;
      }
    }
  }
}

template <class S>
S wilkinson_shift(const Dense<S>& h, std::size_t hi) {
  using T = ScalarTraits<S>;
  const S a = h(hi - 2, hi - 2), b = h(hi - 2, hi - 1);
  const S c = h(hi - 1, hi - 2), d = h(hi - 1, hi - 1);
  const S two = T::from_real(Real(2.0));
  S delta = (a - d) / two;
  S bc = b * c;
  S disc = delta * delta + bc;
  const S zero = T::zero();
  if (T::is_bad(disc) || disc < zero) return d;
  S root = sqrt(disc);
  S denom = abs(delta) + root;
  if (T::is_zero(denom)) return d;
  S mu = bc / denom;
  if (delta < zero) mu = -mu;
  return d - mu;
}

// One explicit shifted QR sweep on the window [lo, hi).
template <class S>
void qr_sweep(Dense<S>& h, Dense<S>& u, std::size_t lo, std::size_t hi, const S& mu) {
  const std::size_t m = h.rows;
  for (std::size_t i = lo; i < hi; ++i) h(i, i) -= mu;
  std::vector<GivensRotation<S>> rots;
  rots.reserve(hi - lo - 1);
  for (std::size_t k = lo; k + 1 < hi; ++k) {
    auto g = make_givens(h(k, k), h(k + 1, k));
    rots.push_back(g);
    for (std::size_t j = k; j < m; ++j) {
      S x = h(k, j), y = h(k + 1, j);
      h(k, j) = g.c * x + g.s * y;
      h(k + 1, j) = g.c * y - g.s * x;
    }
  }
  for (std::size_t k = lo; k + 1 < hi; ++k) {
    const auto& g = rots[k - lo];
    const std::size_t rmax = std::min(k + 2, m - 1);
    for (std::size_t i = 0; i <= rmax; ++i) {
      S x = h(i, k), y = h(i, k + 1);
      h(i, k) = g.c * x + g.s * y;
      h(i, k + 1) = g.c * y - g.s * x;
    }
    for (std::size_t i = 0; i < m; ++i) {
      S x = u(i, k), y = u(i, k + 1);
      u(i, k) = g.c * x + g.s * y;
      u(i, k + 1) = g.c * y - g.s * x;
    }
  }
  for (std::size_t i = lo; i < hi; ++i) h(i, i) += mu;
}

// Schur form of a general small matrix with (numerically) real spectrum.
// On success h is upper triangular up to the deflation tolerance and u
// holds the accumulated orthogonal transform (h_in = u h u^T). Returns
// false when the iteration budget (30 m) is exhausted or values go
// non-finite, which callers treat as a numerical failure of the run.
template <class S>
bool schur_real(Dense<S>& h, Dense<S>& u) {
  using T = ScalarTraits<S>;
  const std::size_t m = h.rows;
  if (m == 0) return true;
  u = Dense<S>::identity(m);
  if (m == 1) return !h.any_bad();
  hessenberg_reduce(h, u);
  if (h.any_bad()) return false;

  const S eps = T::from_real(ScalarTraits<S>::epsilon());
  const S fnorm = frobenius(h);
  const S zero = T::zero();
  // The relative test alone cannot deflate eigenvalue clusters at zero,
  // where diagonal and subdiagonal entries are both roundoff; the
  // eps*||H|| floor resolves those at backward-stable accuracy.
  const S floor_bound = eps * fnorm;
  auto negligible = [&](std::size_t i) {
    S bound = eps * (abs(h(i - 1, i - 1)) + abs(h(i, i)));
    if (bound < floor_bound) bound = floor_bound;
    return !(abs(h(i, i - 1)) > bound);
  };

  std::size_t budget = 30 * m;
  std::size_t hi = m;
  while (hi > 1) {
    for (std::size_t i = hi - 1; i >= 1; --i)
      if (negligible(i)) h(i, i - 1) = zero;
    if (T::is_zero(h(hi - 1, hi - 2))) {
      --hi;
      continue;
    }
    std::size_t lo = hi - 1;
    while (lo > 0 && !T::is_zero(h(lo, lo - 1))) --lo;
    if (budget == 0) return false;
    --budget;
    S mu = wilkinson_shift(h, hi);
    if (T::is_bad(mu)) return false;
    qr_sweep(h, u, lo, hi, mu);
    if (h.any_bad()) return false;
  }
  return !h.any_bad() && !u.any_bad();
}

}  // namespace detail
}  // namespace eigenfmt
