#pragma once

// Posit codecs (two exponent bits, per the 2022 standard). A code is read
// as sign bit, regime run, two exponent bits, fraction; negative values are
// the two's complement of their magnitude's code. Rounding assembles the
// unbounded bit string and applies round-to-nearest-even on the code
// integer itself, with saturation: no real input ever rounds to zero or to
// NaR.

#include <cstdint>

#include "unpacked.hpp"

namespace eigenfmt::detail {

struct PositLayout {
  int bits;

  constexpr u64 code_mask() const { return bits == 64 ? ~u64(0) : (u64(1) << bits) - 1; }
  constexpr u64 nar_code() const { return u64(1) << (bits - 1); }
  constexpr u64 maxpos_code() const { return nar_code() - 1; }
  constexpr int max_exp() const { return 4 * (bits - 2); }  // maxpos = 2^max_exp
};

inline Unpacked posit_unpack(const PositLayout& L, u64 code) {
  code &= L.code_mask();
  if (code == 0) return Unpacked::make_zero(false);
  if (code == L.nar_code()) return Unpacked::make_nan();
  bool neg = (code & L.nar_code()) != 0;
  if (neg) code = (~code + 1) & L.code_mask();
  // Align the bits after the sign at the top of a 64-bit word; bits past
  // the logical width read as zero.
  u64 body = code << (65 - L.bits);
  int r0 = static_cast<int>(body >> 63);
  int run = r0 ? std::countl_one(body) : std::countl_zero(body);
  if (run > L.bits - 1) run = L.bits - 1;
  std::int32_t k = r0 ? run - 1 : -run;
  int consumed = run + 1;  // regime plus terminator
  body = consumed >= 64 ? 0 : body << consumed;
  std::int32_t es = static_cast<std::int32_t>(body >> 62);
  body <<= 2;
  Unpacked r;
  r.kind = Kind::finite;
  r.neg = neg;
  r.exp = 4 * k + es;
  r.sig = (u64(1) << 63) | (body >> 1);
  return r;
}

inline u64 posit_pack(const PositLayout& L, const Unpacked& u) {
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
  if (u.exp >= L.max_exp()) {
    mag = L.maxpos_code();
  } else if (u.exp < -L.max_exp()) {
    mag = 1;  // below minpos: saturate, never round to zero
  } else {
    std::int32_t k = u.exp >= 0 ? u.exp / 4 : -((-u.exp + 3) / 4);
    std::int32_t es = u.exp - 4 * k;
    u128 enc = 0;
    int pos = 127;  // sign bit at 127 stays 0
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
    if (k >= 0) {
      put((u64(1) << (k + 2)) - 2, k + 2);  // k+1 ones, then 0
    } else {
      put(1, -k + 1);  // -k zeros, then 1
    }
    put(static_cast<u64>(es), 2);
    put(u.sig & ((u64(1) << 63) - 1), 63);
    mag = round_code_u128(enc, 128 - L.bits, u.sticky || lost);
    if (mag == 0) mag = 1;
    if (mag >= L.nar_code()) mag = L.maxpos_code();
  }
  if (u.neg) return (~mag + 1) & L.code_mask();
  return mag;
}

}  // namespace eigenfmt::detail
