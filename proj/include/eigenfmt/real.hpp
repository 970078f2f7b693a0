#pragma once

// Arbitrary-range reference scalar backed by MPFR at fixed 192-bit precision.
// Every operation is correctly rounded to nearest, so results are
// deterministic across platforms. 192 bits gives ~57 decimal digits and an
// exponent range far beyond anything the tapered 64-bit formats can produce.

#include <cstdint>
#include <stdint.h>
#define MPFR_USE_INTMAX_T 1
#include <mpfr.h>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eigenfmt {

class Real {
public:
  static constexpr mpfr_prec_t precision = 192;

  Real() {
    mpfr_init2(v_, precision);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, precision);
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, precision);
    mpfr_swap(v_, o.v_);
  }
  explicit Real(double d) {
    mpfr_init2(v_, precision);
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  explicit Real(long i) {
    mpfr_init2(v_, precision);
    mpfr_set_si(v_, i, MPFR_RNDN);
  }
  explicit Real(int i) : Real(static_cast<long>(i)) {}
  ~Real() { mpfr_clear(v_); }

  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }

  // Parses decimal ("1.5e-3") or hex ("0x1.8p+1") literals.
  static Real parse(const std::string& s) {
    Real r;
    int base = 10;
    std::string_view sv(s);
    std::string_view body = sv;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) body.remove_prefix(1);
    if (body.size() > 1 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) base = 16;
    if (mpfr_set_str(r.v_, s.c_str(), base, MPFR_RNDN) != 0)
      throw std::invalid_argument("Real::parse: bad literal: " + s);
    return r;
  }

  static Real nan() {
    Real r;
    mpfr_set_nan(r.v_);
    return r;
  }
  static Real inf(int sign) {
    Real r;
    mpfr_set_inf(r.v_, sign);
    return r;
  }
  // 2^k, exact.
  static Real pow2(long k) {
    Real r;
    mpfr_set_ui_2exp(r.v_, 1, k, MPFR_RNDN);
    return r;
  }
  // m * 2^k with integer m, exact for |m| < 2^63.
  static Real scaled(std::int64_t m, long k) {
    Real r;
    mpfr_set_sj_2exp(r.v_, m, k, MPFR_RNDN);
    return r;
  }
  // m * 2^k with unsigned m, exact.
  static Real scaled_u(std::uint64_t m, long k) {
    Real r;
    mpfr_set_uj_2exp(r.v_, m, k, MPFR_RNDN);
    return r;
  }
  Real ldexp(long k) const {
    Real r;
    mpfr_mul_2si(r.v_, v_, k, MPFR_RNDN);
    return r;
  }
  static Real from_uint(std::uint64_t u) {
    Real r;
    mpfr_set_uj(r.v_, u, MPFR_RNDN);
    return r;
  }

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  // -1, 0, +1 (sign of NaN is meaningless; callers check is_nan first).
  int sign() const { return mpfr_sgn(v_); }

  friend Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  Real operator-() const {
    Real r;
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  friend Real sqrt(const Real& a) {
    Real r;
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real abs(const Real& a) {
    Real r;
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real cos(const Real& a) {
    Real r;
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  static Real pi() {
    Real r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  // Comparisons are false whenever either side is NaN, as for doubles.
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) {
    return !a.is_nan() && !b.is_nan() && mpfr_equal_p(a.v_, b.v_) == 0;
  }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) {
    return mpfr_greaterequal_p(a.v_, b.v_) != 0;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Exact hexadecimal form, round-trippable through parse().
  std::string to_hex() const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%Ra", v_) < 0) throw std::runtime_error("Real::to_hex: mpfr_asprintf");
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }
  // Decimal with enough digits to identify the value to ~1e-40.
  std::string to_decimal() const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.40Re", v_) < 0)
      throw std::runtime_error("Real::to_decimal: mpfr_asprintf");
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Real& r) {
    return os << r.to_decimal();
  }

  // Normalized decomposition of a finite nonzero value:
  // |x| = sig * 2^(exp - 63) with sig in [2^63, 2^64); sticky marks bits
  // beyond the top 64. Used when rounding a reference value into a format.
  struct Parts {
    bool neg = false;
    long exp = 0;
    std::uint64_t sig = 0;
    bool sticky = false;
  };
  Parts decompose() const {
    Parts p;
    p.neg = mpfr_signbit(v_) != 0;
    mpfr_exp_t e = mpfr_get_exp(v_);  // |x| in [2^(e-1), 2^e)
    p.exp = static_cast<long>(e) - 1;
    mpfr_t t;
    mpfr_init2(t, precision);
    mpfr_abs(t, v_, MPFR_RNDN);
    mpfr_mul_2si(t, t, 64 - static_cast<long>(e), MPFR_RNDN);  // exact scaling
    p.sig = static_cast<std::uint64_t>(mpfr_get_uj(t, MPFR_RNDZ));
    p.sticky = mpfr_integer_p(t) == 0;
    mpfr_clear(t);
    return p;
  }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

private:
  mpfr_t v_;
};

inline Real fmax_abs(const Real& a, const Real& b) { return abs(a) >= abs(b) ? abs(a) : abs(b); }

}  // namespace eigenfmt
