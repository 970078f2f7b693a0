#pragma once

// Takum codecs, linear variant: value = (1 + f) * 2^c. Fields after the
// sign bit: direction D, 3-bit regime R, characteristic bits C (r of them),
// mantissa. r = R when D = 1, else 7 - R; c = 2^r - 1 + C when D = 1, else
// -2^(r+1) + 1 + C. The characteristic always spans [-255, 254]. Codes
// shorter than 12 bits are zero-extended on the right when decoding.
// Negative values are two's complements; rounding works on the unbounded
// code string with ties to the even code, saturating at maxpos/minpos.

#include <cstdint>

#include "unpacked.hpp"

namespace eigenfmt::detail {

struct TakumLayout {
  int bits;

  constexpr u64 code_mask() const { return bits == 64 ? ~u64(0) : (u64(1) << bits) - 1; }
  constexpr u64 nar_code() const { return u64(1) << (bits - 1); }
  constexpr u64 maxpos_code() const { return nar_code() - 1; }
};

inline Unpacked takum_unpack(const TakumLayout& L, u64 code) {
  code &= L.code_mask();
  if (code == 0) return Unpacked::make_zero(false);
  if (code == L.nar_code()) return Unpacked::make_nan();
  bool neg = (code & L.nar_code()) != 0;
  if (neg) code = (~code + 1) & L.code_mask();
  // Bits after the sign, aligned at the top of a 64-bit word; bits past the
  // logical width read as zero (right zero-extension for short codes).
  u64 body = code << (65 - L.bits);
  int d = static_cast<int>(body >> 63);
  int regime = static_cast<int>((body >> 60) & 7);
  int r = d ? regime : 7 - regime;
  u64 cfield = r == 0 ? 0 : (body << 4) >> (64 - r);
  std::int32_t c = d ? (std::int32_t(1) << r) - 1 + static_cast<std::int32_t>(cfield)
                     : -(std::int32_t(1) << (r + 1)) + 1 + static_cast<std::int32_t>(cfield);
  u64 mant = (body << 4) << r;  // r <= 7, total shift <= 11
  Unpacked out;
  out.kind = Kind::finite;
  out.neg = neg;
  out.exp = c;
  out.sig = (u64(1) << 63) | (mant >> 1);
  return out;
}

inline u64 takum_pack(const TakumLayout& L, const Unpacked& u) {
  switch (u.kind) {
    case Kind::nan:
      return L.nar_code();
    case Kind::inf:
      return L.nar_code();  // no infinities: non-real result
    case Kind::zero:
      return 0;
    case Kind::finite:
      break;
  }
  u64 mag;
  if (u.exp > 254) {
    mag = L.maxpos_code();
  } else if (u.exp < -255) {
    mag = 1;
  } else {
    std::int32_t c = u.exp;
    int d = c >= 0 ? 1 : 0;
    int r;
    u64 cfield;
    if (d) {
      r = 63 - std::countl_zero(static_cast<u64>(c) + 1);
      cfield = static_cast<u64>(c) - ((u64(1) << r) - 1);
    } else {
      r = 63 - std::countl_zero(static_cast<u64>(-c));
      cfield = static_cast<u64>(c + (std::int32_t(1) << (r + 1)) - 1);
    }
    u128 enc = 0;
    int pos = 127;
    bool lost = false;
    auto put = [&](u64 field, int width) {
      for (int i = width - 1; i >= 0; --i) {
        int b = static_cast<int>((field >> i) & 1);
        pos -= 1;
        if (pos < 0) {
          lost = lost || b != 0;
        } else if (b) {
          enc |= u128(1) << pos;
        }
      }
    };
    put(static_cast<u64>(d), 1);
    put(static_cast<u64>(d ? r : 7 - r), 3);
    put(cfield, r);
    put(u.sig & ((u64(1) << 63) - 1), 63);
    mag = round_code_u128(enc, 128 - L.bits, u.sticky || lost);
    if (mag == 0) mag = 1;  // saturate below minpos, never produce zero
    if (mag >= L.nar_code()) mag = L.maxpos_code();
  }
  if (u.neg) return (~mag + 1) & L.code_mask();
  return mag;
}

}  // namespace eigenfmt::detail
