#pragma once

// Software-rounded machine number types. Each format is a thin value type
// over its bit pattern; arithmetic goes unpack -> exact core -> pack, so
// every operation rounds exactly once with ties to even.

#include <cstdint>
#include <string_view>

#include "../real.hpp"
#include "ieee.hpp"
#include "posit.hpp"
#include "takum.hpp"

namespace eigenfmt {

namespace detail {

template <IeeeLayout Lay>
struct IeeeCodec {
  static constexpr bool tapered = false;
  static constexpr IeeeLayout layout = Lay;
  static constexpr int bits = Lay.bits;
  static Unpacked unpack(u64 c) { return ieee_unpack(Lay, c); }
  static u64 pack(const Unpacked& u) { return ieee_pack(Lay, u); }
  static u64 nan_code() { return Lay.canonical_nan(); }
  // Precision at 1.0 is frac_bits + 1; epsilon is the unit roundoff.
  static constexpr int precision_at_one = Lay.frac_bits + 1;
};

template <int N>
struct PositCodec {
  static constexpr bool tapered = true;
  static constexpr PositLayout layout{N};
  static constexpr int bits = N;
  static Unpacked unpack(u64 c) { return posit_unpack(layout, c); }
  static u64 pack(const Unpacked& u) { return posit_pack(layout, u); }
  static u64 nan_code() { return layout.nar_code(); }
  // Fraction bits at 1.0: N - 1 (sign) - 2 (regime "10") - 2 (exponent).
  static constexpr int precision_at_one = N - 4;
};

template <int N>
struct TakumCodec {
  static constexpr bool tapered = true;
  static constexpr TakumLayout layout{N};
  static constexpr int bits = N;
  static Unpacked unpack(u64 c) { return takum_unpack(layout, c); }
  static u64 pack(const Unpacked& u) { return takum_pack(layout, u); }
  static u64 nan_code() { return layout.nar_code(); }
  // Fraction bits at 1.0: N - 5 header bits (sign, direction, regime).
  static constexpr int precision_at_one = N - 4;
};

// -2 unordered, else -1/0/1. Signed zeros compare equal.
inline int cmp_values(const Unpacked& a, const Unpacked& b) {
  if (a.kind == Kind::nan || b.kind == Kind::nan) return -2;
  int sa = a.kind == Kind::zero ? 0 : (a.neg ? -1 : 1);
  int sb = b.kind == Kind::zero ? 0 : (b.neg ? -1 : 1);
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  if (a.kind == Kind::inf || b.kind == Kind::inf) {
    if (a.kind == b.kind) return 0;
    return (a.kind == Kind::inf) == (sa > 0) ? 1 : -1;
  }
  int m = cmp_mag(a, b);
  return sa > 0 ? m : -m;
}

}  // namespace detail

template <class Codec>
class SoftScalar {
public:
  using codec = Codec;
  static constexpr int format_bits = Codec::bits;

  SoftScalar() = default;
  static SoftScalar from_bits(std::uint64_t code) {
    SoftScalar s;
    s.code_ = code & mask();
    return s;
  }
  std::uint64_t bits() const { return code_; }

  static SoftScalar from_real(const Real& x) {
    using namespace detail;
    if (x.is_nan()) return from_bits(Codec::nan_code());
    if (x.is_inf()) {
      if constexpr (Codec::tapered)
        return from_bits(Codec::nan_code());
      else
        return from_bits(Codec::layout.has_inf ? Codec::layout.inf_code(x.sign() < 0)
                                               : Codec::nan_code());
    }
    if (x.is_zero()) {
      if constexpr (Codec::tapered)
        return from_bits(0);
      else
        return from_bits(mpfr_signbit(x.raw()) ? Codec::layout.sign_mask() : 0);
    }
    Real::Parts p = x.decompose();
    Unpacked u;
    u.kind = Kind::finite;
    u.neg = p.neg;
    u.sig = p.sig;
    u.sticky = p.sticky;
    // Exponent clamp: beyond any representable magnitude the pack routines
    // only need the sign of the excess.
    long e = p.exp;
    if (e > (1 << 24)) e = 1 << 24;
    if (e < -(1 << 24)) e = -(1 << 24);
    u.exp = static_cast<std::int32_t>(e);
    return from_bits(Codec::pack(u));
  }

  Real to_real() const {
    using namespace detail;
    Unpacked u = Codec::unpack(code_);
    switch (u.kind) {
      case Kind::nan:
        return Real::nan();
      case Kind::inf:
        return Real::inf(u.neg ? -1 : 1);
      case Kind::zero:
        return u.neg ? -Real(0L) : Real(0L);
      case Kind::finite:
        break;
    }
    Real m = Real::scaled_u(u.sig, 0).ldexp(u.exp - 63);
    return u.neg ? -m : m;
  }

  bool is_bad() const {
    using namespace detail;
    Kind k = Codec::unpack(code_).kind;
    return k == Kind::nan || k == Kind::inf;
  }
  bool is_zero() const { return detail::Kind::zero == Codec::unpack(code_).kind; }

  friend SoftScalar operator+(SoftScalar a, SoftScalar b) {
    return from_bits(op_add(a.code_, b.code_));
  }
  friend SoftScalar operator-(SoftScalar a, SoftScalar b) { return a + (-b); }
  friend SoftScalar operator*(SoftScalar a, SoftScalar b) {
    return from_bits(op_mul(a.code_, b.code_));
  }
  friend SoftScalar operator/(SoftScalar a, SoftScalar b) {
    return from_bits(op_div(a.code_, b.code_));
  }
  SoftScalar operator-() const {
    using namespace detail;
    if constexpr (Codec::tapered) {
      // Negation is exact: two's complement of the code.
      if (code_ == 0 || code_ == Codec::nan_code()) return *this;
      return from_bits((~code_ + 1) & mask());
    } else {
      Unpacked u = Codec::unpack(code_);
      if (u.kind == Kind::nan) return *this;
      return from_bits(code_ ^ Codec::layout.sign_mask());
    }
  }
  SoftScalar& operator+=(SoftScalar o) { return *this = *this + o; }
  SoftScalar& operator-=(SoftScalar o) { return *this = *this - o; }
  SoftScalar& operator*=(SoftScalar o) { return *this = *this * o; }
  SoftScalar& operator/=(SoftScalar o) { return *this = *this / o; }

  friend SoftScalar sqrt(SoftScalar a) { return from_bits(op_sqrt(a.code_)); }
  friend SoftScalar abs(SoftScalar a) {
    using namespace detail;
    Unpacked u = Codec::unpack(a.code_);
    if (u.kind == Kind::nan || !u.neg) return a;
    return -a;
  }

  friend bool operator==(SoftScalar a, SoftScalar b) { return cmp(a, b) == 0; }
  friend bool operator!=(SoftScalar a, SoftScalar b) {
    int c = cmp(a, b);
    return c != 0 && c != -2;
  }
  friend bool operator<(SoftScalar a, SoftScalar b) { return cmp(a, b) == -1; }
  friend bool operator>(SoftScalar a, SoftScalar b) { return cmp(a, b) == 1; }
  friend bool operator<=(SoftScalar a, SoftScalar b) {
    int c = cmp(a, b);
    return c == -1 || c == 0;
  }
  friend bool operator>=(SoftScalar a, SoftScalar b) {
    int c = cmp(a, b);
    return c == 1 || c == 0;
  }

private:
  std::uint64_t code_ = 0;

  static constexpr std::uint64_t mask() {
    return format_bits == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << format_bits) - 1;
  }

  static int cmp(SoftScalar a, SoftScalar b) {
    return detail::cmp_values(Codec::unpack(a.code_), Codec::unpack(b.code_));
  }

  static std::uint64_t op_add(std::uint64_t a, std::uint64_t b) {
    using namespace detail;
    Unpacked ua = Codec::unpack(a), ub = Codec::unpack(b);
    if (ua.kind == Kind::nan || ub.kind == Kind::nan) return Codec::nan_code();
    if constexpr (!Codec::tapered) {
      if (ua.kind == Kind::inf && ub.kind == Kind::inf)
        return ua.neg == ub.neg ? a : Codec::nan_code();
      if (ua.kind == Kind::inf) return a;
      if (ub.kind == Kind::inf) return b;
    }
    return Codec::pack(add_finite(ua, ub));
  }

  static std::uint64_t op_mul(std::uint64_t a, std::uint64_t b) {
    using namespace detail;
    Unpacked ua = Codec::unpack(a), ub = Codec::unpack(b);
    if (ua.kind == Kind::nan || ub.kind == Kind::nan) return Codec::nan_code();
    if constexpr (!Codec::tapered) {
      if (ua.kind == Kind::inf || ub.kind == Kind::inf) {
        if (ua.kind == Kind::zero || ub.kind == Kind::zero) return Codec::nan_code();
        return Codec::pack(Unpacked::make_inf(ua.neg != ub.neg));
      }
    }
    return Codec::pack(mul_finite(ua, ub));
  }

  static std::uint64_t op_div(std::uint64_t a, std::uint64_t b) {
    using namespace detail;
    Unpacked ua = Codec::unpack(a), ub = Codec::unpack(b);
    if (ua.kind == Kind::nan || ub.kind == Kind::nan) return Codec::nan_code();
    if constexpr (Codec::tapered) {
      if (ub.kind == Kind::zero) return Codec::nan_code();
    } else {
      if (ua.kind == Kind::inf) {
        if (ub.kind == Kind::inf) return Codec::nan_code();
        return Codec::pack(Unpacked::make_inf(ua.neg != ub.neg));
      }
      if (ub.kind == Kind::inf) return Codec::pack(Unpacked::make_zero(ua.neg != ub.neg));
      if (ub.kind == Kind::zero) {
        if (ua.kind == Kind::zero) return Codec::nan_code();
        return Codec::pack(Unpacked::make_inf(ua.neg != ub.neg));
      }
    }
    return Codec::pack(div_finite(ua, ub));
  }

  static std::uint64_t op_sqrt(std::uint64_t a) {
    using namespace detail;
    Unpacked ua = Codec::unpack(a);
    if (ua.kind == Kind::nan) return Codec::nan_code();
    if (ua.kind == Kind::zero) return a;  // sqrt(+-0) = +-0
    if (ua.neg) return Codec::nan_code();
    if constexpr (!Codec::tapered) {
      if (ua.kind == Kind::inf) return a;
    }
    return Codec::pack(sqrt_finite(ua));
  }
};

}  // namespace eigenfmt
