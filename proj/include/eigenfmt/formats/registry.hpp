#pragma once

// Format registry: canonical names, per-format traits, and dynamic
// dispatch from a format name to the concrete scalar type.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "../real.hpp"
#include "native.hpp"
#include "soft_scalar.hpp"

namespace eigenfmt {

using Float8_4 = SoftScalar<detail::IeeeCodec<detail::IeeeLayout{8, 4, 3, false}>>;
using Float8_5 = SoftScalar<detail::IeeeCodec<detail::IeeeLayout{8, 5, 2, true}>>;
using BFloat16 = SoftScalar<detail::IeeeCodec<detail::IeeeLayout{16, 8, 7, true}>>;
using Float16 = SoftScalar<detail::IeeeCodec<detail::IeeeLayout{16, 5, 10, true}>>;
// Software images of the hardware formats, used for cross-checking.
using SoftFloat32 = SoftScalar<detail::IeeeCodec<detail::IeeeLayout{32, 8, 23, true}>>;
using SoftFloat64 = SoftScalar<detail::IeeeCodec<detail::IeeeLayout{64, 11, 52, true}>>;
using Float32 = Float32Scalar;
using Float64 = Float64Scalar;
using Posit8 = SoftScalar<detail::PositCodec<8>>;
using Posit16 = SoftScalar<detail::PositCodec<16>>;
using Posit32 = SoftScalar<detail::PositCodec<32>>;
using Posit64 = SoftScalar<detail::PositCodec<64>>;
using LinearTakum8 = SoftScalar<detail::TakumCodec<8>>;
using LinearTakum16 = SoftScalar<detail::TakumCodec<16>>;
using LinearTakum32 = SoftScalar<detail::TakumCodec<32>>;
using LinearTakum64 = SoftScalar<detail::TakumCodec<64>>;

template <class S>
struct ScalarTraits;

template <class Codec>
struct ScalarTraits<SoftScalar<Codec>> {
  static constexpr int bits = Codec::bits;
  static Real epsilon() { return Real::pow2(-Codec::precision_at_one); }
  static SoftScalar<Codec> from_real(const Real& x) { return SoftScalar<Codec>::from_real(x); }
  static Real to_real(SoftScalar<Codec> v) { return v.to_real(); }
  static bool is_bad(SoftScalar<Codec> v) { return v.is_bad(); }
  static bool is_zero(SoftScalar<Codec> v) { return v.is_zero(); }
  static SoftScalar<Codec> zero() { return {}; }
};

template <class T>
struct ScalarTraits<NativeScalar<T>> {
  static constexpr int bits = sizeof(T) * 8;
  static Real epsilon() { return Real::pow2(sizeof(T) == 4 ? -24 : -53); }
  static NativeScalar<T> from_real(const Real& x) { return NativeScalar<T>::from_real(x); }
  static Real to_real(NativeScalar<T> v) { return v.to_real(); }
  static bool is_bad(NativeScalar<T> v) { return v.is_bad(); }
  static bool is_zero(NativeScalar<T> v) { return v.is_zero(); }
  static NativeScalar<T> zero() { return {}; }
};

template <>
struct ScalarTraits<Real> {
  static constexpr int bits = 0;  // reference: outside the bit-width groups
  static Real epsilon() { return Real::pow2(-Real::precision); }
  static Real from_real(const Real& x) { return x; }
  static Real to_real(const Real& v) { return v; }
  static bool is_bad(const Real& v) { return !v.is_finite(); }
  static bool is_zero(const Real& v) { return v.is_zero(); }
  static Real zero() { return Real(); }
};

template <class S>
struct Tag {
  using type = S;
};

struct FormatInfo {
  std::string_view name;
  int bits;
  std::string_view family;
};

inline const std::vector<FormatInfo>& all_formats() {
  static const std::vector<FormatInfo> table = {
      {"Float8_4", 8, "float"},        {"Float8_5", 8, "float"},
      {"BFloat16", 16, "float"},       {"Float16", 16, "float"},
      {"Float32", 32, "float"},        {"Float64", 64, "float"},
      {"Posit8", 8, "posit"},          {"Posit16", 16, "posit"},
      {"Posit32", 32, "posit"},        {"Posit64", 64, "posit"},
      {"LinearTakum8", 8, "takum"},    {"LinearTakum16", 16, "takum"},
      {"LinearTakum32", 32, "takum"},  {"LinearTakum64", 64, "takum"},
      {"Reference", 0, "reference"},
  };
  return table;
}

inline const FormatInfo* find_format(std::string_view name) {
  for (const auto& f : all_formats())
    if (f.name == name) return &f;
  return nullptr;
}

// Calls fn(Tag<S>{}) for the scalar type registered under `name`.
// Returns false if the name is unknown.
template <class Fn>
bool dispatch_format(std::string_view name, Fn&& fn) {
  if (name == "Float8_4") return fn(Tag<Float8_4>{}), true;
  if (name == "Float8_5") return fn(Tag<Float8_5>{}), true;
  if (name == "BFloat16") return fn(Tag<BFloat16>{}), true;
  if (name == "Float16") return fn(Tag<Float16>{}), true;
  if (name == "Float32") return fn(Tag<Float32>{}), true;
  if (name == "Float64") return fn(Tag<Float64>{}), true;
  if (name == "Posit8") return fn(Tag<Posit8>{}), true;
  if (name == "Posit16") return fn(Tag<Posit16>{}), true;
  if (name == "Posit32") return fn(Tag<Posit32>{}), true;
  if (name == "Posit64") return fn(Tag<Posit64>{}), true;
  if (name == "LinearTakum8") return fn(Tag<LinearTakum8>{}), true;
  if (name == "LinearTakum16") return fn(Tag<LinearTakum16>{}), true;
  if (name == "LinearTakum32") return fn(Tag<LinearTakum32>{}), true;
  if (name == "LinearTakum64") return fn(Tag<LinearTakum64>{}), true;
  if (name == "Reference") return fn(Tag<Real>{}), true;
  return false;
}

}  // namespace eigenfmt
