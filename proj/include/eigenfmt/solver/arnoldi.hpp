#pragma once

// Restarted Arnoldi (Krylov-Schur) partial eigensolver carried out
// entirely in a target scalar type. Only the convergence decisions are
// made in reference arithmetic; every stored vector, projection entry and
// rotation is rounded by the format under test.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "../formats/registry.hpp"
#include "../real.hpp"
#include "../util/rng.hpp"
#include "dense.hpp"

namespace eigenfmt {

enum class SolverStatus {
  ok,                 // requested pairs converged
  not_converged,      // restart budget exhausted
  numerical_failure,  // non-finite values or small Schur solve failed
  breakdown_limit,    // three consecutive basis replacements failed
  bad_start,          // starting vector unusable after rounding
};

inline const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::ok: return "ok";
    case SolverStatus::not_converged: return "not_converged";
    case SolverStatus::numerical_failure: return "numerical_failure";
    case SolverStatus::breakdown_limit: return "breakdown_limit";
    case SolverStatus::bad_start: return "bad_start";
  }
  return "?";
}

template <class S>
struct FactorizationView {
  const std::vector<std::vector<S>>& basis;  // width+1 columns
  const Dense<S>& projected;                 // leading width x width block
  const std::vector<S>& coupling;            // length width
  std::size_t width;
};

template <class S>
struct ArnoldiConfig {
  std::size_t want = 10;       // eigenpairs requested
  std::size_t min_dim = 0;     // 0 -> max(2*want, 20)
  std::size_t max_dim = 0;     // 0 -> max(3*want, 30)
  std::size_t max_restarts = 1000;
  Real tol = Real(0.0);        // relative residual tolerance
  std::uint64_t seed = 1;
  std::function<void(const FactorizationView<S>&)> observer;  // after each expansion
};

template <class S>
struct PartialSchurResult {
  Dense<S> Q;                   // n x k, orthonormal columns
  Dense<S> R;                   // k x k, diagonal by construction
  std::vector<Real> residuals;  // coupling magnitude per pair
  SolverStatus status = SolverStatus::not_converged;
  bool converged = false;
  std::size_t restarts = 0;
  std::size_t matvecs = 0;
};

namespace detail {

template <class S>
S vec_dot(const std::vector<S>& x, const std::vector<S>& y) {
  S acc = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

template <class S>
S vec_norm(const std::vector<S>& x) {
  using T = ScalarTraits<S>;
  S mx = T::zero();
  for (const auto& v : x) {
    S av = abs(v);
    if (av > mx) mx = av;
  }
  if (T::is_zero(mx) || T::is_bad(mx)) return mx;
  S s = T::zero();
  for (const auto& v : x) {
    S t = v / mx;
    s += t * t;
  }
  return mx * sqrt(s);
}

template <class S>
bool vec_bad(const std::vector<S>& x) {
  for (const auto& v : x)
    if (ScalarTraits<S>::is_bad(v)) return true;
  return false;
}

template <class S, class Op>
class KrylovSchur {
  using T = ScalarTraits<S>;

 public:
  KrylovSchur(Op& op, std::size_t n, const ArnoldiConfig<S>& cfg)
      : op_(op), n_(n), cfg_(cfg), rng_(cfg.seed) {
    want_ = std::min(cfg.want, n_);
    min_dim_ = cfg.min_dim ? cfg.min_dim : std::max(2 * want_, std::size_t{20});
    max_dim_ = cfg.max_dim ? cfg.max_dim : std::max(3 * want_, std::size_t{30});
    max_dim_ = std::min(max_dim_, n_);
    if (max_dim_ < want_) max_dim_ = want_;
    min_dim_ = std::clamp(min_dim_, want_, max_dim_);
    if (min_dim_ == max_dim_ && max_dim_ > want_) min_dim_ = max_dim_ - 1;
  }

  PartialSchurResult<S> run() {
    PartialSchurResult<S> out;
    if (n_ == 0 || want_ == 0) {
      out.status = SolverStatus::ok;
      out.converged = true;
      return out;
    }
    proj_ = Dense<S>(max_dim_, max_dim_);
    basis_.reserve(max_dim_ + 1);
    if (!start_vector()) {
      out.status = SolverStatus::bad_start;
      return out;
    }
    for (;;) {
      SolverStatus st = expand();
      if (st != SolverStatus::ok) {
        out.status = st;
        out.restarts = restarts_;
        out.matvecs = matvecs_;
        return out;
      }
      bool done = false;
      st = process(out, done);
      if (st != SolverStatus::ok) {
        out.status = st;
        out.restarts = restarts_;
        out.matvecs = matvecs_;
        return out;
      }
      if (done) return out;
    }
  }

 private:
  // ---- starting vector -------------------------------------------------
  bool start_vector() {
    std::vector<Real> raw(n_);
    for (std::size_t i = 0; i < n_; ++i) raw[i] = Real(rng_.symmetric());
    Real s(0.0);
    for (const auto& v : raw) s = s + v * v;
    if (s.is_zero()) return false;
    Real nrm = sqrt(s);
    std::vector<S> v0(n_);
    for (std::size_t i = 0; i < n_; ++i) v0[i] = T::from_real(raw[i] / nrm);
    if (vec_bad(v0)) return false;
    S b = vec_norm(v0);
    if (T::is_bad(b) || T::is_zero(b)) return false;
    for (auto& x : v0) x = x / b;
    if (vec_bad(v0)) return false;
    basis_.push_back(std::move(v0));
    return true;
  }

  // Deterministic replacement direction, orthonormalized against the
  // current basis in target arithmetic. Empty on failure.
  std::vector<S> fresh_direction() {
    std::vector<S> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = T::from_real(Real(rng_.symmetric()));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& v : basis_) {
        S h = vec_dot(v, d);
        for (std::size_t i = 0; i < n_; ++i) d[i] = d[i] - h * v[i];
      }
    }
    if (vec_bad(d)) return {};
    S b = vec_norm(d);
    if (T::is_bad(b) || T::is_zero(b)) return {};
    for (auto& x : d) x = x / b;
    if (vec_bad(d)) return {};
    return d;
  }

  // ---- expansion to max_dim --------------------------------------------
  SolverStatus expand() {
    const S sqrt2 = T::from_real(sqrt(Real(2.0)));
    while (width_ < max_dim_) {
      const std::size_t j = width_;
      std::vector<S> w(n_);
      op_(basis_[j], w);
      ++matvecs_;
      if (vec_bad(w)) return SolverStatus::numerical_failure;

      std::vector<S> h(j + 1, T::zero());
      auto orth_pass = [&] {
        for (std::size_t i = 0; i <= j; ++i) {
          S hi = vec_dot(basis_[i], w);
          h[i] += hi;
          for (std::size_t r = 0; r < n_; ++r) w[r] = w[r] - hi * basis_[i][r];
        }
      };
      orth_pass();
      S eta1 = vec_norm(w);
      orth_pass();
      S eta2 = vec_norm(w);
      if (T::is_bad(eta1) || T::is_bad(eta2) || vec_bad(h)) return SolverStatus::numerical_failure;
      bool dependent = false;
      if (!T::is_zero(eta2) && eta2 * sqrt2 < eta1) {
        orth_pass();
        S eta3 = vec_norm(w);
        if (T::is_bad(eta3) || vec_bad(h)) return SolverStatus::numerical_failure;
        // still shrinking after a third pass: numerically dependent direction
        if (T::is_zero(eta3) || eta3 * sqrt2 < eta2) dependent = true;
        eta2 = eta3;
      }
      if (vec_bad(w)) return SolverStatus::numerical_failure;
      const S beta = dependent ? T::zero() : eta2;

      for (std::size_t i = 0; i <= j; ++i) proj_(i, j) = h[i];
      for (std::size_t i = 0; i < j; ++i) proj_(j, i) = coupling_[i];

      coupling_.assign(j + 1, T::zero());
      if (T::is_zero(beta)) {
        if (j + 1 == n_) {
          // exact invariant subspace spanning the whole space; the residual
          // direction is immaterial because the coupling row is zero
          basis_.push_back(std::vector<S>(n_, T::zero()));
          width_ = j + 1;
          notify();
          return SolverStatus::ok;
        }
        std::vector<S> d;
        for (int attempt = 0; attempt < 3 && d.empty(); ++attempt) d = fresh_direction();
        if (d.empty()) return SolverStatus::breakdown_limit;
        basis_.push_back(std::move(d));
      } else {
        for (auto& x : w) x = x / beta;
        if (vec_bad(w)) return SolverStatus::numerical_failure;
        coupling_[j] = beta;
        basis_.push_back(std::move(w));
      }
      width_ = j + 1;
      notify();
    }
    return SolverStatus::ok;
  }

  void notify() {
    if (cfg_.observer)
      cfg_.observer(FactorizationView<S>{basis_, proj_, coupling_, width_});
  }

  // ---- convergence check, locking, truncation ----------------------------
  SolverStatus process(PartialSchurResult<S>& out, bool& done) {
    const std::size_t ma = width_ - locked_;
    Dense<S> blk(ma, ma);
    for (std::size_t i = 0; i < ma; ++i)
      for (std::size_t j = 0; j < ma; ++j) blk(i, j) = proj_(locked_ + i, locked_ + j);
    Dense<S> u;
    if (!schur_real(blk, u)) return SolverStatus::numerical_failure;

    std::vector<S> theta(ma);
    for (std::size_t i = 0; i < ma; ++i) theta[i] = blk(i, i);
    if (vec_bad(theta)) return SolverStatus::numerical_failure;

    std::vector<std::size_t> idx(ma);
    for (std::size_t i = 0; i < ma; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return abs(theta[b]) < abs(theta[a]);
    });

    // coupling transformed through the Schur basis, in rank order
    std::vector<S> g(ma);
    for (std::size_t r = 0; r < ma; ++r) {
      S acc = T::zero();
      for (std::size_t k = 0; k < ma; ++k) acc += coupling_[locked_ + k] * u(k, idx[r]);
      g[r] = acc;
    }
    if (vec_bad(g)) return SolverStatus::numerical_failure;

    Real fnorm(0.0);
    for (std::size_t i = 0; i < width_; ++i)
      for (std::size_t j = 0; j < width_; ++j) {
        Real e = T::to_real(proj_(i, j));
        fnorm = fnorm + e * e;
      }
    const Real floor = ScalarTraits<S>::epsilon() * sqrt(fnorm);

    std::size_t nc = 0;
    while (nc < ma) {
      Real gr = abs(T::to_real(g[nc]));
      Real thr = cfg_.tol * abs(T::to_real(theta[idx[nc]]));
      if (thr < floor) thr = floor;
      if (!(gr <= thr)) break;
      ++nc;
    }
    const std::size_t new_locked = std::min(locked_ + nc, width_);

    if (new_locked >= want_) {
      assemble(out, theta, idx, g, u);
      out.status = SolverStatus::ok;
      out.converged = true;
      out.restarts = restarts_;
      out.matvecs = matvecs_;
      done = true;
      return SolverStatus::ok;
    }
    if (restarts_ >= cfg_.max_restarts) {
      assemble(out, theta, idx, g, u);
      out.status = SolverStatus::not_converged;
      out.converged = false;
      out.restarts = restarts_;
      out.matvecs = matvecs_;
      done = true;
      return SolverStatus::ok;
    }

    // truncate back to min_dim, keeping the locked prefix
    const std::size_t k = std::max(std::min(min_dim_, width_), new_locked);
    const std::size_t keep = k - locked_;
    std::vector<std::vector<S>> fresh_cols(keep);
    for (std::size_t r = 0; r < keep; ++r) {
      std::vector<S> col(n_, T::zero());
      for (std::size_t kk = 0; kk < ma; ++kk) {
        const S& w = u(kk, idx[r]);
        if (T::is_zero(w)) continue;
        const auto& src = basis_[locked_ + kk];
        for (std::size_t row = 0; row < n_; ++row) col[row] += src[row] * w;
      }
      if (vec_bad(col)) return SolverStatus::numerical_failure;
      fresh_cols[r] = std::move(col);
    }
    for (std::size_t r = 0; r < keep; ++r) basis_[locked_ + r] = std::move(fresh_cols[r]);
    if (k != width_) basis_[k] = std::move(basis_[width_]);
    basis_.resize(k + 1);

    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j && (i >= locked_ || j >= locked_)) proj_(i, j) = T::zero();
    for (std::size_t r = 0; r < keep; ++r) proj_(locked_ + r, locked_ + r) = theta[idx[r]];

    coupling_.assign(k, T::zero());
    for (std::size_t r = nc; r < keep; ++r) coupling_[locked_ + r] = g[r];

    locked_ = new_locked;
    width_ = k;
    ++restarts_;
    return SolverStatus::ok;
  }

  struct Pick {
    S value;
    Real resid;
    bool from_locked;
    std::size_t pos;  // basis column (locked) or rank in idx (active)
  };

  void assemble(PartialSchurResult<S>& out, const std::vector<S>& theta,
                const std::vector<std::size_t>& idx, const std::vector<S>& g,
                const Dense<S>& u) {
    const std::size_t ma = width_ - locked_;
    std::vector<Pick> all;
    all.reserve(width_);
    for (std::size_t i = 0; i < locked_; ++i)
      all.push_back({proj_(i, i), Real(0.0), true, i});
    for (std::size_t r = 0; r < ma; ++r)
      all.push_back({theta[idx[r]], abs(ScalarTraits<S>::to_real(g[r])), false, r});
    std::stable_sort(all.begin(), all.end(),
                     [](const Pick& a, const Pick& b) { return abs(b.value) < abs(a.value); });

    const std::size_t k = std::min(want_, all.size());
    out.Q = Dense<S>(n_, k);
    out.R = Dense<S>(k, k);
    out.residuals.assign(k, Real(0.0));
    for (std::size_t c = 0; c < k; ++c) {
      const Pick& p = all[c];
      out.R(c, c) = p.value;
      out.residuals[c] = p.resid;
      if (p.from_locked) {
        for (std::size_t row = 0; row < n_; ++row) out.Q(row, c) = basis_[p.pos][row];
      } else {
        for (std::size_t row = 0; row < n_; ++row) {
          S acc = T::zero();
          for (std::size_t kk = 0; kk < ma; ++kk)
            acc += basis_[locked_ + kk][row] * u(kk, idx[p.pos]);
          out.Q(row, c) = acc;
        }
      }
    }
  }

  Op& op_;
  std::size_t n_;
  ArnoldiConfig<S> cfg_;
  SplitMix64 rng_;
  std::size_t want_ = 0, min_dim_ = 0, max_dim_ = 0;
  std::vector<std::vector<S>> basis_;
  Dense<S> proj_;
  std::vector<S> coupling_;
  std::size_t width_ = 0, locked_ = 0;
  std::size_t restarts_ = 0, matvecs_ = 0;
};

}  // namespace detail

// op(x, y) must write y = M x using only target-format operations.
template <class S, class Op>
PartialSchurResult<S> partial_schur(Op&& op, std::size_t n, const ArnoldiConfig<S>& cfg) {
  detail::KrylovSchur<S, std::remove_reference_t<Op>> solver(op, n, cfg);
  return solver.run();
}

}  // namespace eigenfmt
