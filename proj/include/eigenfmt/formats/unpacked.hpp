#pragma once

// Shared exact arithmetic core for the software-rounded formats.
//
// A finite nonzero value is held as (-1)^neg * sig * 2^(exp - 63) with
// sig normalized to [2^63, 2^64). Inputs to the arithmetic routines are
// exact (sticky = false); each routine computes the mathematically exact
// result, truncated to 64 significand bits plus a sticky flag covering
// everything below. Rounding to a concrete format happens once, in the
// per-family pack functions, so every operation rounds exactly once.

#include <cstdint>
#include <bit>

namespace eigenfmt::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

enum class Kind : std::uint8_t { zero, finite, inf, nan };

struct Unpacked {
  Kind kind = Kind::zero;
  bool neg = false;
  std::int32_t exp = 0;
  u64 sig = 0;  // top bit set when kind == finite
  bool sticky = false;

  static Unpacked make_zero(bool neg) { return {Kind::zero, neg, 0, 0, false}; }
  static Unpacked make_inf(bool neg) { return {Kind::inf, neg, 0, 0, false}; }
  static Unpacked make_nan() { return {Kind::nan, false, 0, 0, false}; }
  bool is_finite() const { return kind == Kind::finite || kind == Kind::zero; }
};

inline int clz128(u128 x) {
  u64 hi = static_cast<u64>(x >> 64);
  if (hi) return std::countl_zero(hi);
  return 64 + std::countl_zero(static_cast<u64>(x));
}

// Normalizes a nonzero 128-bit magnitude with binary point such that the
// value equals frame * 2^(exp - 126), producing a 64-bit significand.
inline Unpacked from_frame(bool neg, std::int32_t exp, u128 frame, bool sticky) {
  int top = 127 - clz128(frame);  // position of leading 1
  Unpacked r;
  r.kind = Kind::finite;
  r.neg = neg;
  r.exp = exp + (top - 126);
  if (top >= 63) {
    r.sig = static_cast<u64>(frame >> (top - 63));
    if (top > 63) sticky = sticky || (frame & ((u128(1) << (top - 63)) - 1)) != 0;
  } else {
    r.sig = static_cast<u64>(frame) << (63 - top);
  }
  r.sticky = sticky;
  return r;
}

// Magnitude comparison of finite nonzero values.
inline int cmp_mag(const Unpacked& a, const Unpacked& b) {
  if (a.exp != b.exp) return a.exp < b.exp ? -1 : 1;
  if (a.sig != b.sig) return a.sig < b.sig ? -1 : 1;
  return 0;
}

// a + b for finite inputs (either may be zero). IEEE sign conventions:
// exact cancellation yields +0.
inline Unpacked add_finite(const Unpacked& a, const Unpacked& b) {
  if (a.kind == Kind::zero && b.kind == Kind::zero)
    return Unpacked::make_zero(a.neg && b.neg);
  if (a.kind == Kind::zero) return b;
  if (b.kind == Kind::zero) return a;

  const Unpacked* hi = &a;
  const Unpacked* lo = &b;
  if (cmp_mag(a, b) < 0) {
    hi = &b;
    lo = &a;
  }
  std::int32_t d = hi->exp - lo->exp;  // >= 0
  u128 H = u128(hi->sig) << 63;        // leading one at bit 126
  if (hi->neg == lo->neg) {
    // Magnitude addition.
    u128 L;
    bool sticky = false;
    if (d <= 63) {
      L = u128(lo->sig) << (63 - d);
    } else if (d <= 127) {
      L = u128(lo->sig) >> (d - 64) >> 1;
      sticky = (lo->sig & ((d - 63 >= 64) ? ~u64(0) : ((u64(1) << (d - 63)) - 1))) != 0;
    } else {
      L = 0;
      sticky = true;
    }
    return from_frame(hi->neg, hi->exp, H + L, sticky);
  }
  // Magnitude subtraction: |hi| >= |lo|.
  if (d == 0) {
    if (hi->sig == lo->sig) return Unpacked::make_zero(false);
    return from_frame(hi->neg, hi->exp, H - (u128(lo->sig) << 63), false);
  }
  if (d <= 63) {
    return from_frame(hi->neg, hi->exp, H - (u128(lo->sig) << (63 - d)), false);
  }
  // Low operand contributes bits beyond the 128-bit frame. The true result
  // lies strictly between S and S+1 where S = H - floor(L) - 1, so sticky
  // captures it exactly.
  u128 Lhi;
  bool rem;
  if (d <= 127) {
    Lhi = u128(lo->sig) >> (d - 64) >> 1;
    rem = (lo->sig & ((d - 63 >= 64) ? ~u64(0) : ((u64(1) << (d - 63)) - 1))) != 0;
  } else {
    Lhi = 0;
    rem = true;
  }
  if (!rem) return from_frame(hi->neg, hi->exp, H - Lhi, false);
  return from_frame(hi->neg, hi->exp, H - Lhi - 1, true);
}

inline Unpacked mul_finite(const Unpacked& a, const Unpacked& b) {
  if (a.kind == Kind::zero || b.kind == Kind::zero)
    return Unpacked::make_zero(a.neg != b.neg);
  u128 p = u128(a.sig) * b.sig;  // in [2^126, 2^128)
  return from_frame(a.neg != b.neg, a.exp + b.exp, p, false);
}

inline Unpacked div_finite(const Unpacked& a, const Unpacked& b) {
  // b nonzero; a may be zero.
  if (a.kind == Kind::zero) return Unpacked::make_zero(a.neg != b.neg);
  // sig_a/sig_b in (1/2, 2); scale numerator so quotient has >= 64 bits.
  u128 n = u128(a.sig) << 64;
  u128 q = n / b.sig;
  u128 r = n % b.sig;
  // value = q * 2^(exp_a - exp_b - 64 + 63 - 63) ... track exact frame:
  // a.sig*2^64 = q*b.sig + r, so a/b = (q + r/b.sig) * 2^(expa-expb-64) * 2^63/2^63.
  // Use from_frame with frame = q at exponent exp_a - exp_b + (127 - 64)
  // minus adjustment; simpler: q in [2^63+1, 2^66), binary point such that
  // value = q * 2^(exp_a - exp_b - 64).
  // from_frame expects frame * 2^(exp - 126): choose exp = exp_a - exp_b + 62.
  return from_frame(a.neg != b.neg, a.exp - b.exp + 62, q, r != 0);
}

inline u64 isqrt_u128(u128 n) {
  if (n == 0) return 0;
  // Initial estimate from hardware sqrt, then fixed-point Newton, then an
  // exact correction loop (the estimate is within a few ulps already).
  long double approx = static_cast<long double>(n);
  u128 x = static_cast<u128>(__builtin_sqrtl(approx));
  if (x == 0) x = 1;
  for (int i = 0; i < 4; ++i) x = (x + n / x) >> 1;
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return static_cast<u64>(x);
}

// Round-to-nearest-even on an MSB-aligned 128-bit code assembly: keeps the
// top (128 - drop) bits as an integer code, rounding on the dropped part.
// Used by the tapered formats, where rounding acts on the code integer.
inline u64 round_code_u128(u128 enc, int drop, bool sticky) {
  u64 code = static_cast<u64>(enc >> drop);
  u64 round = static_cast<u64>(enc >> (drop - 1)) & 1;
  bool rest = sticky || (enc & ((u128(1) << (drop - 1)) - 1)) != 0;
  if (round && (rest || (code & 1))) code += 1;
  return code;
}

// Square root of a nonnegative finite value. Negative inputs are the
// caller's responsibility (they map to NaN/NaR before reaching here).
inline Unpacked sqrt_finite(const Unpacked& a) {
  if (a.kind == Kind::zero) return a;  // sqrt(+-0) = +-0
  // value = sig * 2^(exp - 63) = n * 2^t with n = sig << s, t = exp - 63 - s.
  // Pick s in {62, 63} to make t even; n lands in [2^125, 2^127).
  int s = ((a.exp - 63) & 1) ? 63 : 62;
  u128 n = u128(a.sig) << s;
  std::int32_t t = a.exp - 63 - s;
  u64 root = isqrt_u128(n);
  bool sticky = u128(root) * root != n;
  // true sqrt = (root + theta) * 2^(t/2), theta in [0,1)
  return from_frame(false, t / 2 + 126, u128(root), sticky);
}

}  // namespace eigenfmt::detail
