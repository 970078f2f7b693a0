// Release gate: one self-contained check per shipped guarantee, each printed
// as a single PASS/FAIL line. Exits with the number of failed checks.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <eigenfmt/align/alignment.hpp>
#include <eigenfmt/align/hungarian.hpp>
#include <eigenfmt/bench/experiment.hpp>
#include <eigenfmt/bench/reference.hpp>
#include <eigenfmt/bench/report.hpp>
#include <eigenfmt/bench/sweep.hpp>
#include <eigenfmt/bench/tolerance.hpp>
#include <eigenfmt/formats/registry.hpp>
#include <eigenfmt/graph/laplacian.hpp>
#include <eigenfmt/solver/arnoldi.hpp>
#include <eigenfmt/solver/operator.hpp>

#include "../support/dense_eig.hpp"
#include "../support/format_oracle.hpp"
#include "../support/generators.hpp"

namespace fs = std::filesystem;
using namespace eigenfmt;
using oracle::Cls;
using oracle::Op;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    ok = false;
    if (detail.empty()) detail = why;
  }
};

// ---- 1. exhaustive 8-bit conformance --------------------------------------

template <class S>
void conformance_exhaustive(const std::string& name, Check& c) {
  const auto& t = oracle::table_for(name);
  for (std::uint64_t code = 0; code < 256 && c.ok; ++code) {
    oracle::Decoded d = oracle::decode(t.def, code);
    Real v = S::from_bits(code).to_real();
    if (d.cls == Cls::nan) {
      if (!v.is_nan()) c.fail(name + ": code " + std::to_string(code) + " should be NaN");
      continue;
    }
    if (S::from_real(v).bits() != code)
      c.fail(name + ": code " + std::to_string(code) + " does not round-trip");
  }
  for (std::uint64_t a = 0; a < 256 && c.ok; ++a) {
    S sa = S::from_bits(a);
    for (std::uint64_t b = 0; b < 256; ++b) {
      S sb = S::from_bits(b);
      bool good = (sa + sb).bits() == oracle::ref_op(t, Op::add, a, b) &&
                  (sa - sb).bits() == oracle::ref_op(t, Op::add, a, t.negate(b)) &&
                  (sa * sb).bits() == oracle::ref_op(t, Op::mul, a, b) &&
                  (sa / sb).bits() == oracle::ref_op(t, Op::div, a, b);
      if (!good) {
        c.fail(name + ": operand pair (" + std::to_string(a) + ", " + std::to_string(b) +
               ") disagrees with the rounding model");
        break;
      }
    }
  }
}

Check check_1(double& elapsed) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  conformance_exhaustive<Float8_4>("Float8_4", c);
  conformance_exhaustive<Float8_5>("Float8_5", c);
  conformance_exhaustive<Posit8>("Posit8", c);
  conformance_exhaustive<LinearTakum8>("LinearTakum8", c);
  elapsed = seconds_since(t0);
  if (elapsed >= 10.0) c.fail("runtime budget of 10 s exceeded");
  return c;
}

// ---- 2. sampled 16-bit conformance ----------------------------------------

template <class S>
void conformance_sampled(const std::string& name, const std::vector<std::uint64_t>& specials,
                         std::size_t pairs, std::uint64_t seed, Check& c) {
  const auto& t = oracle::table_for(name);
  auto check_pair = [&](std::uint64_t a, std::uint64_t b) {
    S sa = S::from_bits(a), sb = S::from_bits(b);
    bool good = (sa + sb).bits() == oracle::ref_op(t, Op::add, a, b) &&
                (sa - sb).bits() == oracle::ref_op(t, Op::add, a, t.negate(b)) &&
                (sa * sb).bits() == oracle::ref_op(t, Op::mul, a, b) &&
                (sa / sb).bits() == oracle::ref_op(t, Op::div, a, b);
    if (good) return true;
    c.fail(name + ": operand pair (" + std::to_string(a) + ", " + std::to_string(b) +
           ") disagrees with the rounding model");
    return false;
  };
  testsupport::Rng rng(seed);
  for (std::size_t i = 0; i < pairs && c.ok; ++i)
    check_pair(rng.next() & 0xFFFF, rng.next() & 0xFFFF);
  for (std::uint64_t a : specials)
    for (std::uint64_t b : specials)
      if (!check_pair(a, b)) return;
}

Check check_2(double& elapsed) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t pairs = 1000000;
  // zeros, extreme finites, infinities/NaN (IEEE-style) or NaR (tapered)
  const std::vector<std::uint64_t> ieee_bf16 = {0x0000, 0x8000, 0x0001, 0x8001, 0x0080, 0x3F80,
                                                0x7F7F, 0xFF7F, 0x7F80, 0xFF80, 0x7FC0};
  const std::vector<std::uint64_t> ieee_f16 = {0x0000, 0x8000, 0x0001, 0x8001, 0x0400, 0x3C00,
                                               0x7BFF, 0xFBFF, 0x7C00, 0xFC00, 0x7E00};
  const std::vector<std::uint64_t> tapered = {0x0000, 0x8000, 0x0001, 0xFFFF,
                                              0x7FFF, 0x8001, 0x4000, 0xC000};
  conformance_sampled<BFloat16>("BFloat16", ieee_bf16, pairs, 101, c);
  conformance_sampled<Float16>("Float16", ieee_f16, pairs, 102, c);
  conformance_sampled<Posit16>("Posit16", tapered, pairs, 103, c);
  conformance_sampled<LinearTakum16>("LinearTakum16", tapered, pairs, 104, c);
  elapsed = seconds_since(t0);
  if (elapsed >= 60.0) c.fail("runtime budget of 60 s exceeded");
  return c;
}

// ---- 3. closed-form tridiagonal spectrum -----------------------------------

SparseMatrix tridiagonal(std::size_t n) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, Real(2.0)});
    if (i + 1 < n) {
      t.push_back({i, i + 1, Real(-1.0)});
      t.push_back({i + 1, i, Real(-1.0)});
    }
  }
  return SparseMatrix::from_triplets(n, n, std::move(t));
}

Check check_3(double& elapsed) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = 1000;
  auto op = SparseOperator<Float64>::from_matrix(tridiagonal(n));
  ArnoldiConfig<Float64> cfg;
  cfg.want = 10;
  cfg.tol = Real::parse("1e-12");
  auto res = partial_schur<Float64>(op, n, cfg);
  if (res.status != SolverStatus::ok) {
    c.fail(std::string("solver status ") + to_string(res.status));
  } else {
    const Real two(2.0);
    const Real denom(static_cast<double>(n + 1));
    const Real bound = Real::parse("1e-10");
    for (std::size_t i = 0; i < 10; ++i) {
      // i-th largest eigenvalue of tridiag(-1,2,-1): 2 - 2 cos(k pi/(n+1))
      const Real k(static_cast<double>(n - i));
      const Real target = two - two * cos(k * Real::pi() / denom);
      const Real got = res.R(i, i).to_real();
      if (!(abs(got - target) / abs(target) <= bound)) {
        c.fail("eigenvalue " + std::to_string(i) + " off: got " + got.to_decimal() +
               " want " + target.to_decimal());
        break;
      }
    }
  }
  elapsed = seconds_since(t0);
  if (elapsed >= 5.0) c.fail("runtime budget of 5 s exceeded");
  return c;
}

// ---- 4. assignment optimality ----------------------------------------------

Check check_4(double&) {
  Check c;
  testsupport::Rng rng(2024);
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    const std::size_t m = rng.range(1, 7);
    std::vector<std::vector<Real>> sim(m, std::vector<Real>(m));
    for (auto& row : sim)
      for (auto& v : row) v = Real(rng.uniform());

    const auto got = assign_max_similarity(sim);
    Real total;
    for (std::size_t i = 0; i < m; ++i) total += sim[i][got[i]];

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Real best = total;
    do {
      Real s;
      for (std::size_t i = 0; i < m; ++i) s += sim[i][perm[i]];
      if (s > best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (!(abs(best - total) <= Real::parse("1e-9")))
      c.fail("suboptimal assignment at trial " + std::to_string(trial) + ": got " +
             total.to_decimal() + " best " + best.to_decimal());
  }
  return c;
}

// ---- 5. alignment recovery --------------------------------------------------

Check check_5(double&) {
  Check c;
  const std::size_t n = 50, m = 12;
  testsupport::Rng rng(77);

  EigenPairs ref;
  ref.vectors.assign(m, std::vector<Real>(n));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) ref.vectors[j][i] = Real(2.0 * rng.uniform() - 1.0);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        Real dot;
        for (std::size_t i = 0; i < n; ++i) dot += ref.vectors[j][i] * ref.vectors[k][i];
        for (std::size_t i = 0; i < n; ++i) ref.vectors[j][i] -= dot * ref.vectors[k][i];
      }
    Real norm;
    for (std::size_t i = 0; i < n; ++i) norm += ref.vectors[j][i] * ref.vectors[j][i];
    norm = sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) ref.vectors[j][i] /= norm;
    ref.values.push_back(Real(2.0) - Real(0.1) * Real(static_cast<double>(j)));
  }

  std::vector<std::size_t> place(m);
  std::iota(place.begin(), place.end(), std::size_t{0});
  for (std::size_t i = m; i > 1; --i) std::swap(place[i - 1], place[rng.range(0, i - 1)]);
  std::vector<int> flip(m);
  for (auto& f : flip) f = rng.next() & 1 ? -1 : 1;

  EigenPairs got;
  got.values.assign(m, Real());
  got.vectors.assign(m, std::vector<Real>(n));
  const Real eta = Real::parse("1e-6");
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t col = place[i];
    got.values[col] = ref.values[i];
    for (std::size_t r = 0; r < n; ++r)
      got.vectors[col][r] = Real(flip[i]) * ref.vectors[i][r] +
                            eta * Real(2.0 * rng.uniform() - 1.0);
  }

  auto rep = align_and_measure(ref, got, m);
  if (!rep.ok) c.fail("alignment reported failure");
  for (std::size_t i = 0; i < m && c.ok; ++i) {
    if (rep.permutation[i] != place[i]) c.fail("permutation not recovered");
    else if (rep.signs[i] != flip[i]) c.fail("sign not recovered");
  }
  if (c.ok && !(rep.eigenvector_rel_error <= Real::parse("1e-4")))
    c.fail("eigenvector relative error " + rep.eigenvector_rel_error.to_decimal());
  return c;
}

// ---- 6. normalized Laplacian properties --------------------------------------

Check check_6(double&) {
  Check c;
  testsupport::Rng rng(4242);
  const Real low = -Real::parse("1e-12");
  const Real high = Real(2.0) + Real::parse("1e-12");
  for (int g = 0; g < 100 && c.ok; ++g) {
    const std::size_t n = rng.range(2, 60);
    const std::size_t isolated = (g % 4 == 0) ? rng.range(1, 2) : 0;
    const double p = 0.05 + 0.4 * rng.uniform();
    auto adj = testsupport::random_graph(rng, n, p, isolated);
    auto lap = normalized_laplacian(adj);

    std::vector<Real> deg = weighted_degrees(adj);
    std::vector<std::vector<Real>> dense(n, std::vector<Real>(n));
    for (const auto& e : lap.entries()) dense[e.row][e.col] = e.value;

    for (std::size_t i = 0; i < n && c.ok; ++i) {
      if (deg[i].is_zero()) {
        for (std::size_t j = 0; j < n; ++j)
          if (!dense[i][j].is_zero()) c.fail("isolated vertex row not zero");
      } else if (!(dense[i][i] == Real(1.0))) {
        c.fail("diagonal not exactly one on a connected vertex");
      }
    }
    if (!c.ok) break;

    auto eig = testsupport::jacobi_symmetric(dense);
    for (const auto& v : eig.values)
      if (!(v >= low) || !(v <= high)) {
        c.fail("eigenvalue " + v.to_decimal() + " outside [0, 2] on graph " + std::to_string(g));
        break;
      }
  }
  return c;
}

// ---- 7. dynamic-range sentinels ----------------------------------------------

Check check_7(double&) {
  Check c;
  const fs::path dir = fs::temp_directory_path() / "eigenfmt_acceptance_range";
  fs::remove_all(dir);
  ReferenceCache cache(dir / "reference");
  RunConfig cfg;
  cfg.count = 6;
  cfg.buffer = 2;

  for (int k = 0; k < 20 && c.ok; ++k) {
    // diagonal spectra spanning past the 8-bit minifloat ceiling of 448
    const std::size_t n = 8;
    const double base = 4.0 + 0.25 * k;
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i)
      t.push_back({i, i, Real(base) * Real::pow2(static_cast<int>(i))});
    TestMatrix m{"span" + std::to_string(k), "general", "suitesparse",
                 SparseMatrix::from_triplets(n, n, std::move(t))};

    const auto& ref = cache.obtain(m, cfg.count + cfg.buffer, cfg.tol.reference, cfg.seed);
    if (!ref.ok) {
      c.fail("reference solve failed for " + m.name);
      break;
    }
    auto minifloat = run_experiment(m, "Float8_4", &ref, cfg);
    if (minifloat.status != OutcomeStatus::dynamic_range &&
        minifloat.status != OutcomeStatus::nonconvergence)
      c.fail(m.name + ": Float8_4 produced " + to_string(minifloat.status) +
             " instead of a failure sentinel");
    for (const char* fmt : {"Posit8", "LinearTakum8"}) {
      auto out = run_experiment(m, fmt, &ref, cfg);
      if (out.status != OutcomeStatus::ok)
        c.fail(m.name + ": " + fmt + " failed with " + to_string(out.status));
      else if (out.eigenvalue_rel_error.is_nan() || out.eigenvalue_rel_error.is_inf())
        c.fail(m.name + ": " + fmt + " error not finite");
    }
  }
  fs::remove_all(dir);
  return c;
}

// ---- 8. precision monotonicity -----------------------------------------------

Check check_8(double&) {
  Check c;
  const fs::path dir = fs::temp_directory_path() / "eigenfmt_acceptance_mono";
  fs::remove_all(dir);
  ReferenceCache cache(dir / "reference");
  RunConfig cfg;

  const std::vector<std::size_t> sizes = {48, 64, 96};
  std::vector<TestMatrix> ms;
  for (std::size_t n : sizes)
    ms.push_back({"tri" + std::to_string(n), "general", "suitesparse", tridiagonal(n)});

  const std::vector<std::vector<std::string>> families = {
      {"Float16", "Float32", "Float64"},
      {"Posit16", "Posit32", "Posit64"},
      {"LinearTakum16", "LinearTakum32", "LinearTakum64"},
  };

  std::map<std::string, Real> median_err;
  for (const auto& fam : families) {
    for (const auto& fmt : fam) {
      std::vector<Real> errs;
      for (const auto& m : ms) {
        const auto& ref = cache.obtain(m, cfg.count + cfg.buffer, cfg.tol.reference, cfg.seed);
        auto out = run_experiment(m, fmt, &ref, cfg);
        if (out.status != OutcomeStatus::ok) {
          c.fail(fmt + " on " + m.name + ": " + to_string(out.status));
          break;
        }
        errs.push_back(out.eigenvalue_rel_error);
      }
      if (!c.ok) break;
      std::sort(errs.begin(), errs.end());
      median_err[fmt] = errs[errs.size() / 2];
    }
    if (!c.ok) break;
  }

  if (c.ok) {
    const Real hundredth = Real::parse("1e-2");
    for (const auto& fam : families) {
      const Real e16 = median_err[fam[0]], e32 = median_err[fam[1]], e64 = median_err[fam[2]];
      if (!(e32 < e16) || !(e64 < e32)) {
        c.fail(fam[0] + " family not monotone: " + e16.to_decimal() + " -> " +
               e32.to_decimal() + " -> " + e64.to_decimal());
        break;
      }
      if (fam[0] == "Float16" && (!(e32 <= e16 * hundredth) || !(e64 <= e32 * hundredth))) {
        c.fail("float family steps smaller than two orders of magnitude: " + e16.to_decimal() +
               " -> " + e32.to_decimal() + " -> " + e64.to_decimal());
        break;
      }
    }
  }
  fs::remove_all(dir);
  return c;
}

// ---- 9. determinism across worker counts --------------------------------------

std::map<std::string, std::string> slurp_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    files[fs::relative(e.path(), root).string()] = os.str();
  }
  return files;
}

Check check_9(double&) {
  Check c;
  const fs::path dir = fs::temp_directory_path() / "eigenfmt_acceptance_det";
  fs::remove_all(dir);

  testsupport::Rng rng(31337);
  const std::vector<std::string> classes = {"biological", "infrastructure", "social",
                                            "miscellaneous", "general"};
  std::vector<TestMatrix> ms;
  for (int g = 0; g < 6; ++g) {
    const std::size_t n = rng.range(12, 24);
    auto lap = normalized_laplacian(testsupport::random_graph(rng, n, 0.3));
    ms.push_back({"fix" + std::to_string(g), classes[g % classes.size()], "fixture", lap});
  }

  auto sweep_to = [&](const fs::path& out, unsigned workers) {
    ReferenceCache cache(out / "reference");
    RunConfig cfg;
    cfg.workers = workers;
    auto outcomes = run_sweep(ms, cache, cfg);
    emit_reports(outcomes, out / "reports");
  };
  sweep_to(dir / "serial", 1);
  sweep_to(dir / "parallel", 3);

  const auto a = slurp_tree(dir / "serial" / "reports");
  const auto b = slurp_tree(dir / "parallel" / "reports");
  if (a.empty()) c.fail("no report files produced");
  if (a != b) c.fail("report trees differ between worker counts");
  fs::remove_all(dir);
  return c;
}

// ---- 10. tolerance schedule ----------------------------------------------------

Check check_10(double&) {
  Check c;
  ToleranceSchedule tol;
  if (!(tol.for_bits(8) == Real::parse("1e-2"))) c.fail("8-bit tolerance");
  if (!(tol.for_bits(16) == Real::parse("1e-4"))) c.fail("16-bit tolerance");
  if (!(tol.for_bits(32) == Real::parse("1e-8"))) c.fail("32-bit tolerance");
  if (!(tol.for_bits(64) == Real::parse("1e-12"))) c.fail("64-bit tolerance");
  if (!(tol.for_bits(0) == Real::parse("1e-20"))) c.fail("reference tolerance");
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Check (*fn)(double&);
  };
  const Entry entries[] = {
      {"8-bit formats: exhaustive round-trip and arithmetic vs. rounding model", check_1},
      {"16-bit formats: sampled arithmetic and special values vs. rounding model", check_2},
      {"closed-form tridiagonal spectrum, 10 largest eigenvalues at 64-bit", check_3},
      {"assignment matches exhaustive search on 1000 random problems", check_4},
      {"alignment recovers permutation, signs, and error under 1e-6 noise", check_5},
      {"Laplacian spectra in [0,2], zero isolated rows, exact unit diagonals", check_6},
      {"8-bit dynamic range: minifloat fails, tapered formats stay finite", check_7},
      {"median eigenvalue error decreases 16 -> 32 -> 64 bits per family", check_8},
      {"byte-identical CSV reports for 1 and 3 worker threads", check_9},
      {"residual tolerance schedule resolves per bit width", check_10},
  };

  int failures = 0;
  int idx = 0;
  for (const auto& e : entries) {
    ++idx;
    double elapsed = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    Check c = e.fn(elapsed);
    if (elapsed == 0.0) elapsed = seconds_since(t0);
    std::printf("[%s] %2d. %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", idx, e.label, elapsed,
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  return failures;
}
