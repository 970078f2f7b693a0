#pragma once

// One benchmark experiment: convert a prepared matrix into the target
// format, run the partial eigensolver at the width's tolerance, align the
// results against the reference, and classify the outcome.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "../align/alignment.hpp"
#include "../formats/registry.hpp"
#include "../real.hpp"
#include "../solver/arnoldi.hpp"
#include "../solver/operator.hpp"
#include "../sparse/archive.hpp"
#include "reference.hpp"
#include "tolerance.hpp"

namespace eigenfmt {

enum class OutcomeStatus {
  ok,
  nonconvergence,  // solver failed or did not converge
  dynamic_range,   // matrix entries not storable in the format
  prep_error,      // no usable reference solution
};

inline const char* to_string(OutcomeStatus s) {
  switch (s) {
    case OutcomeStatus::ok: return "ok";
    case OutcomeStatus::nonconvergence: return "nonconvergence";
    case OutcomeStatus::dynamic_range: return "dynamic_range";
    case OutcomeStatus::prep_error: return "prep_error";
  }
  return "?";
}

struct RunConfig {
  std::size_t count = 10;   // reported eigenpairs
  std::size_t buffer = 2;   // extra pairs solved and matched
  std::vector<std::string> formats;  // empty selects every known format
  std::vector<std::string> classes;  // empty selects every class
  std::vector<int> bits;             // empty selects every width
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::string out = "out";
  ToleranceSchedule tol;
};

struct ExperimentOutcome {
  std::string matrix;
  std::string class_name;
  std::string format;
  int bits = 0;
  OutcomeStatus status = OutcomeStatus::prep_error;
  Real eigenvalue_rel_error{0.0};
  Real eigenvalue_abs_error{0.0};
  Real eigenvector_rel_error{0.0};
  Real eigenvector_abs_error{0.0};
  std::size_t matvecs = 0;
  std::size_t restarts = 0;
};

namespace detail {

template <class S>
OutcomeStatus run_in_format(const TestMatrix& m, const ReferenceEntry& ref,
                            const RunConfig& cfg, const Real& tol, ExperimentOutcome& out) {
  auto op = SparseOperator<S>::from_matrix(m.matrix);
  if (op.degraded) return OutcomeStatus::dynamic_range;

  ArnoldiConfig<S> acfg;
  acfg.want = cfg.count + cfg.buffer;
  acfg.tol = tol;
  acfg.seed = cfg.seed;
  auto res = partial_schur<S>(op, op.n, acfg);
  out.matvecs = res.matvecs;
  out.restarts = res.restarts;
  if (res.status != SolverStatus::ok || !res.converged) return OutcomeStatus::nonconvergence;

  EigenPairs got;
  got.values.reserve(res.Q.cols);
  got.vectors.reserve(res.Q.cols);
  for (std::size_t c = 0; c < res.Q.cols; ++c) {
    got.values.push_back(ScalarTraits<S>::to_real(res.R(c, c)));
    std::vector<Real> col(op.n);
    for (std::size_t r = 0; r < op.n; ++r) col[r] = ScalarTraits<S>::to_real(res.Q(r, c));
    got.vectors.push_back(std::move(col));
  }

  auto rep = align_and_measure(ref.pairs, got, cfg.count, &ref.anchors);
  if (!rep.ok) return OutcomeStatus::nonconvergence;
  out.eigenvalue_rel_error = rep.eigenvalue_rel_error;
  out.eigenvalue_abs_error = rep.eigenvalue_abs_error;
  out.eigenvector_rel_error = rep.eigenvector_rel_error;
  out.eigenvector_abs_error = rep.eigenvector_abs_error;
  return OutcomeStatus::ok;
}

}  // namespace detail

inline ExperimentOutcome run_experiment(const TestMatrix& m, const std::string& format,
                                        const ReferenceEntry* ref, const RunConfig& cfg) {
  ExperimentOutcome out;
  out.matrix = m.name;
  out.class_name = m.class_name;
  out.format = format;
  const FormatInfo* info = find_format(format);
  out.bits = info ? info->bits : 0;
  if (!ref || !ref->ok) {
    out.status = OutcomeStatus::prep_error;
    return out;
  }
  const Real tol = cfg.tol.for_bits(out.bits);
  dispatch_format(format, [&](auto tag) {
    using S = typename decltype(tag)::type;
    out.status = detail::run_in_format<S>(m, *ref, cfg, tol, out);
  });
  return out;
}

}  // namespace eigenfmt
