#pragma once

// IEEE-754-style binary interchange codecs, parameterized by exponent and
// fraction widths. Two variants:
//   - has_inf = true: standard layout, top exponent field reserved for
//     infinity (fraction 0) and NaN (fraction != 0).
//   - has_inf = false: "finite" layout (as in the 8-bit E4M3 format): the
//     top exponent field is an ordinary binade except that the single code
//     with fraction all-ones is NaN; there are no infinities and overflow
//     produces NaN.

#include <cstdint>

#include "unpacked.hpp"

namespace eigenfmt::detail {

struct IeeeLayout {
  int bits;
  int exp_bits;
  int frac_bits;
  bool has_inf;

  constexpr int bias() const { return (1 << (exp_bits - 1)) - 1; }
  constexpr int emin() const { return 1 - bias(); }  // smallest normal exponent
  constexpr int emax() const { return has_inf ? bias() : bias() + 1; }
  constexpr u64 sign_mask() const { return u64(1) << (bits - 1); }
  constexpr u64 exp_field_mask() const { return (u64(1) << exp_bits) - 1; }
  constexpr u64 frac_mask() const { return (u64(1) << frac_bits) - 1; }
  constexpr u64 code_mask() const { return bits == 64 ? ~u64(0) : (u64(1) << bits) - 1; }
  // Canonical quiet NaN produced by arithmetic and conversions.
  constexpr u64 canonical_nan() const {
    if (has_inf) return (exp_field_mask() << frac_bits) | (u64(1) << (frac_bits - 1));
    return (exp_field_mask() << frac_bits) | frac_mask();
  }
  constexpr u64 inf_code(bool neg) const {
    return (neg ? sign_mask() : 0) | (exp_field_mask() << frac_bits);
  }
};

inline Unpacked ieee_unpack(const IeeeLayout& L, u64 code) {
  bool neg = (code & L.sign_mask()) != 0;
  u64 ef = (code >> L.frac_bits) & L.exp_field_mask();
  u64 frac = code & L.frac_mask();
  if (L.has_inf && ef == L.exp_field_mask()) {
    if (frac == 0) return Unpacked::make_inf(neg);
    return Unpacked::make_nan();
  }
  if (!L.has_inf && ef == L.exp_field_mask() && frac == L.frac_mask())
    return Unpacked::make_nan();
  if (ef == 0) {
    if (frac == 0) return Unpacked::make_zero(neg);
    // subnormal: frac * 2^(emin - frac_bits)
    int top = 63 - std::countl_zero(frac);
    Unpacked r;
    r.kind = Kind::finite;
    r.neg = neg;
    r.sig = frac << (63 - top);
    r.exp = L.emin() - L.frac_bits + top;
    return r;
  }
  Unpacked r;
  r.kind = Kind::finite;
  r.neg = neg;
  r.sig = (frac | (u64(1) << L.frac_bits)) << (63 - L.frac_bits);
  r.exp = static_cast<std::int32_t>(ef) - L.bias();
  return r;
}

// Round-to-nearest-even of sig/2^sh given extra sticky bits below.
inline u64 rne_shift_u64(u64 sig, int sh, bool sticky) {
  if (sh <= 0) return sig;
  if (sh > 64) return 0;
  u64 kept = sh == 64 ? 0 : sig >> sh;
  u64 round = (sig >> (sh - 1)) & 1;
  bool rest = sticky || (sh > 1 && (sig & ((u64(1) << (sh - 1)) - 1)) != 0);
  if (round && (rest || (kept & 1))) kept += 1;
  return kept;
}

inline u64 ieee_pack(const IeeeLayout& L, const Unpacked& u) {
  const u64 sign = u.neg ? L.sign_mask() : 0;
  switch (u.kind) {
    case Kind::nan:
      return L.canonical_nan();
    case Kind::inf:
      return L.has_inf ? L.inf_code(u.neg) : L.canonical_nan();
    case Kind::zero:
      return sign;
    case Kind::finite:
      break;
  }
  const int F = L.frac_bits;
  if (u.exp < L.emin()) {
    // Subnormal range: round to a multiple of 2^(emin - F). A result of
    // 2^F is exactly the smallest normal and its encoding follows from the
    // same bit pattern.
    int sh = 63 - (u.exp - L.emin() + F);
    u64 M = rne_shift_u64(u.sig, sh, u.sticky);
    return sign | M;
  }
  std::int32_t e = u.exp;
  u64 M = rne_shift_u64(u.sig, 63 - F, u.sticky);  // in [2^F, 2^(F+1)]
  if (M == (u64(1) << (F + 1))) {
    M >>= 1;
    e += 1;
  }
  if (e > L.emax() || (!L.has_inf && e == L.emax() && M == ((u64(1) << (F + 1)) - 1)))
    return L.has_inf ? L.inf_code(u.neg) : L.canonical_nan();
  return sign | (u64(e + L.bias()) << F) | (M & L.frac_mask());
}

}  // namespace eigenfmt::detail
