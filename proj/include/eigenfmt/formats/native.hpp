#pragma once

// Hardware binary32/binary64 wrappers. On this target (SSE2 scalar math,
// contraction disabled) the native operations are exactly the IEEE
// round-to-nearest-even results, bit for bit, so the 32- and 64-bit runs
// use them directly. The software codecs for the same layouts remain
// available and the test suite cross-checks the two.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "../real.hpp"

namespace eigenfmt {

template <class T>
class NativeScalar {
  static_assert(std::is_same_v<T, float> || std::is_same_v<T, double>);

public:
  using value_type = T;
  static constexpr int format_bits = sizeof(T) * 8;

  NativeScalar() = default;
  explicit NativeScalar(T v) : v_(v) {}
  T value() const { return v_; }

  using bits_type = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  static NativeScalar from_bits(std::uint64_t code) {
    return NativeScalar(std::bit_cast<T>(static_cast<bits_type>(code)));
  }
  std::uint64_t bits() const { return std::bit_cast<bits_type>(v_); }

  static NativeScalar from_real(const Real& x) {
    if constexpr (sizeof(T) == 4)
      return NativeScalar(mpfr_get_flt(x.raw(), MPFR_RNDN));
    else
      return NativeScalar(mpfr_get_d(x.raw(), MPFR_RNDN));
  }
  Real to_real() const {
    Real r;
    if constexpr (sizeof(T) == 4)
      mpfr_set_flt(r.raw(), v_, MPFR_RNDN);
    else
      mpfr_set_d(r.raw(), v_, MPFR_RNDN);
    return r;
  }

  bool is_bad() const { return !std::isfinite(v_); }
  bool is_zero() const { return v_ == T(0); }

  friend NativeScalar operator+(NativeScalar a, NativeScalar b) {
    return NativeScalar(a.v_ + b.v_);
  }
  friend NativeScalar operator-(NativeScalar a, NativeScalar b) {
    return NativeScalar(a.v_ - b.v_);
  }
  friend NativeScalar operator*(NativeScalar a, NativeScalar b) {
    return NativeScalar(a.v_ * b.v_);
  }
  friend NativeScalar operator/(NativeScalar a, NativeScalar b) {
    return NativeScalar(a.v_ / b.v_);
  }
  NativeScalar operator-() const { return NativeScalar(-v_); }
  NativeScalar& operator+=(NativeScalar o) {
    v_ += o.v_;
    return *this;
  }
  NativeScalar& operator-=(NativeScalar o) {
    v_ -= o.v_;
    return *this;
  }
  NativeScalar& operator*=(NativeScalar o) {
    v_ *= o.v_;
    return *this;
  }
  NativeScalar& operator/=(NativeScalar o) {
    v_ /= o.v_;
    return *this;
  }

  friend NativeScalar sqrt(NativeScalar a) { return NativeScalar(std::sqrt(a.v_)); }
  friend NativeScalar abs(NativeScalar a) { return NativeScalar(std::fabs(a.v_)); }

  friend bool operator==(NativeScalar a, NativeScalar b) { return a.v_ == b.v_; }
  friend bool operator!=(NativeScalar a, NativeScalar b) { return a.v_ != b.v_; }
  friend bool operator<(NativeScalar a, NativeScalar b) { return a.v_ < b.v_; }
  friend bool operator>(NativeScalar a, NativeScalar b) { return a.v_ > b.v_; }
  friend bool operator<=(NativeScalar a, NativeScalar b) { return a.v_ <= b.v_; }
  friend bool operator>=(NativeScalar a, NativeScalar b) { return a.v_ >= b.v_; }

private:
  T v_ = 0;
};

using Float32Scalar = NativeScalar<float>;
using Float64Scalar = NativeScalar<double>;

}  // namespace eigenfmt
