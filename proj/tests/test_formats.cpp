#include "eigenfmt/formats/registry.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "support/format_oracle.hpp"

using namespace eigenfmt;
using oracle::Cls;

namespace {

template <class S>
void check_code_value(std::uint64_t code, const char* value) {
  S s = S::from_bits(code);
  REQUIRE(s.to_real() == Real::parse(value));
  REQUIRE(S::from_real(Real::parse(value)).bits() == code);
}

template <class S>
void roundtrip_all(const std::string& name) {
  const auto& t = oracle::table_for(name);
  const std::uint64_t count = std::uint64_t(1) << S::format_bits;
  for (std::uint64_t code = 0; code < count; ++code) {
    oracle::Decoded d = oracle::decode(t.def, code);
    S s = S::from_bits(code);
    Real v = s.to_real();
    switch (d.cls) {
      case Cls::nan:
        REQUIRE(v.is_nan());
        break;
      case Cls::inf:
        REQUIRE(v.is_inf());
        REQUIRE((v.sign() < 0) == d.neg);
        break;
      case Cls::zero:
        REQUIRE(v.is_zero());
        break;
      case Cls::finite:
        REQUIRE(v == d.value);
        break;
    }
    if (d.cls != Cls::nan) {
      INFO(name << " code " << code);
      REQUIRE(S::from_real(v).bits() == code);
    }
  }
}

}  // namespace

TEST_CASE("pinned encodings for the 8-bit float formats") {
  // E4M3-style: 4 exponent bits, no infinities, NaN at 0x7F/0xFF.
  check_code_value<Float8_4>(0x38, "1.0");
  REQUIRE(Float8_4::from_bits(0x7F).to_real().is_nan());
  REQUIRE(Float8_4::from_bits(0xFF).to_real().is_nan());
  check_code_value<Float8_4>(0x7E, "448");
  // Values round toward the 448 cap until past the halfway point 464.
  REQUIRE(Float8_4::from_real(Real::parse("464")).bits() == 0x7E);
  REQUIRE(Float8_4::from_real(Real::parse("464.000001")).bits() == 0x7F);
  REQUIRE(Float8_4::from_real(Real::parse("-464")).bits() == 0xFE);
  REQUIRE(Float8_4::from_real(Real::parse("-465")).bits() == 0x7F);  // NaN has no sign
  REQUIRE(Float8_4::from_real(Real::inf(1)).bits() == 0x7F);
  // No infinity exists: every non-NaN code decodes to a finite value.
  for (std::uint64_t c = 0; c < 256; ++c) {
    if (c == 0x7F || c == 0xFF) continue;
    REQUIRE(Float8_4::from_bits(c).to_real().is_finite());
  }

  // E5M2-style: max finite 57344, overflow at 61440.
  check_code_value<Float8_5>(0x7B, "57344");
  REQUIRE(Float8_5::from_real(Real::parse("61439.999")).bits() == 0x7B);
  REQUIRE(Float8_5::from_real(Real::parse("61440")).bits() == 0x7C);  // +inf
  REQUIRE(Float8_5::from_bits(0x7C).to_real().is_inf());
  REQUIRE(Float8_5::from_real(Real::parse("-61440")).bits() == 0xFC);
}

TEST_CASE("pinned encodings for 16-bit floats") {
  check_code_value<BFloat16>(0x3F80, "1.0");
  check_code_value<Float16>(0x3C00, "1.0");
  check_code_value<Float16>(0x0001, "5.9604644775390625e-8");  // smallest subnormal
  REQUIRE(Float16::from_bits(0x7C00).to_real().is_inf());
}

TEST_CASE("pinned encodings for posits") {
  check_code_value<Posit8>(0x40, "1.0");
  check_code_value<Posit8>(0x01, "0x1p-24");
  check_code_value<Posit8>(0x7F, "0x1p+24");
  REQUIRE(Posit8::from_bits(0x80).to_real().is_nan());
  REQUIRE(Posit8::from_real(-Real(1.0)).bits() == 0xC0);
  check_code_value<Posit16>(0x4000, "1.0");
  check_code_value<Posit16>(0x0001, "0x1p-56");
  check_code_value<Posit16>(0x7FFF, "0x1p+56");
  // Saturation: out-of-range reals never round to zero or NaR.
  REQUIRE(Posit8::from_real(Real::parse("1e30")).bits() == 0x7F);
  REQUIRE(Posit8::from_real(Real::parse("1e-30")).bits() == 0x01);
  REQUIRE(Posit8::from_real(Real::parse("-1e30")).bits() == 0x81);
  REQUIRE(Posit16::from_real(Real::parse("1e300")).bits() == 0x7FFF);
}

TEST_CASE("pinned encodings for takums") {
  check_code_value<LinearTakum8>(0x40, "1.0");
  check_code_value<LinearTakum16>(0x4000, "1.0");
  check_code_value<LinearTakum8>(0x01, "0x1p-239");
  check_code_value<LinearTakum8>(0x7F, "0x1p+239");
  check_code_value<LinearTakum16>(0x0001, "0x1.1p-255");
  check_code_value<LinearTakum16>(0x7FFF, "0x1.fp+254");
  REQUIRE(LinearTakum8::from_bits(0x80).to_real().is_nan());
  REQUIRE(LinearTakum16::from_bits(0x8000).to_real().is_nan());
  REQUIRE(LinearTakum8::from_real(Real::parse("1e-100")).bits() == 0x01);
  REQUIRE(LinearTakum8::from_real(Real::parse("1e100")).bits() == 0x7F);
  REQUIRE(LinearTakum16::from_real(Real::parse("1e-100")).bits() != 0);
  REQUIRE(LinearTakum8::from_real(-Real(1.0)).bits() == 0xC0);
}

TEST_CASE("machine epsilon is the unit roundoff") {
  REQUIRE(ScalarTraits<Float8_4>::epsilon() == Real::pow2(-4));
  REQUIRE(ScalarTraits<Float8_5>::epsilon() == Real::pow2(-3));
  REQUIRE(ScalarTraits<BFloat16>::epsilon() == Real::pow2(-8));
  REQUIRE(ScalarTraits<Float16>::epsilon() == Real::pow2(-11));
  REQUIRE(ScalarTraits<Float32>::epsilon() == Real::pow2(-24));
  REQUIRE(ScalarTraits<Float64>::epsilon() == Real::pow2(-53));
  REQUIRE(ScalarTraits<Posit8>::epsilon() == Real::pow2(-4));
  REQUIRE(ScalarTraits<Posit16>::epsilon() == Real::pow2(-12));
  REQUIRE(ScalarTraits<LinearTakum8>::epsilon() == Real::pow2(-4));
  REQUIRE(ScalarTraits<LinearTakum16>::epsilon() == Real::pow2(-12));
  REQUIRE(ScalarTraits<Real>::epsilon() == Real::pow2(-192));
}

TEST_CASE("decode and round-trip agree with the independent model, 8-bit") {
  roundtrip_all<Float8_4>("Float8_4");
  roundtrip_all<Float8_5>("Float8_5");
  roundtrip_all<Posit8>("Posit8");
  roundtrip_all<LinearTakum8>("LinearTakum8");
}

TEST_CASE("decode and round-trip agree with the independent model, 16-bit") {
  roundtrip_all<BFloat16>("BFloat16");
  roundtrip_all<Float16>("Float16");
  roundtrip_all<Posit16>("Posit16");
  roundtrip_all<LinearTakum16>("LinearTakum16");
}

namespace {

template <class S>
void ops_match_oracle_sampled(const std::string& name, int pairs, std::uint64_t seed) {
  const auto& t = oracle::table_for(name);
  const std::uint64_t m = (std::uint64_t(1) << S::format_bits) - 1;
  std::uint64_t state = seed;
  auto next = [&state]() {
    state += 0x9E3779B97f4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  int bad = 0;
  for (int i = 0; i < pairs; ++i) {
    std::uint64_t a = next() & m;
    std::uint64_t b = next() & m;
    S sa = S::from_bits(a), sb = S::from_bits(b);
    if ((sa + sb).bits() != oracle::ref_op(t, oracle::Op::add, a, b)) ++bad;
    if ((sa * sb).bits() != oracle::ref_op(t, oracle::Op::mul, a, b)) ++bad;
    if ((sa / sb).bits() != oracle::ref_op(t, oracle::Op::div, a, b)) ++bad;
    if (sqrt(sa).bits() != oracle::ref_op(t, oracle::Op::sqrt_op, a, 0)) ++bad;
  }
  INFO(name);
  REQUIRE(bad == 0);
}

}  // namespace

TEST_CASE("sampled operations match the independent model") {
  ops_match_oracle_sampled<Float8_4>("Float8_4", 4000, 11);
  ops_match_oracle_sampled<Float8_5>("Float8_5", 4000, 22);
  ops_match_oracle_sampled<Posit8>("Posit8", 4000, 33);
  ops_match_oracle_sampled<LinearTakum8>("LinearTakum8", 4000, 44);
  ops_match_oracle_sampled<BFloat16>("BFloat16", 4000, 55);
  ops_match_oracle_sampled<Float16>("Float16", 4000, 66);
  ops_match_oracle_sampled<Posit16>("Posit16", 4000, 77);
  ops_match_oracle_sampled<LinearTakum16>("LinearTakum16", 4000, 88);
}

TEST_CASE("negation and absolute value are exact") {
  for (std::uint64_t c = 0; c < 256; ++c) {
    Posit8 p = Posit8::from_bits(c);
    REQUIRE((-(-p)).bits() == c);
    if (!p.is_bad()) REQUIRE((p + (-p)).is_zero());
    LinearTakum8 t = LinearTakum8::from_bits(c);
    if (!t.is_bad()) REQUIRE((t + (-t)).is_zero());
    Float8_5 f = Float8_5::from_bits(c);
    if (!f.is_bad()) REQUIRE((f + (-f)).is_zero());
  }
  REQUIRE(abs(Posit8::from_real(-Real(2.0))) == Posit8::from_real(Real(2.0)));
}

TEST_CASE("native and software binary32/binary64 agree") {
  std::uint64_t state = 99;
  auto next = [&state]() {
    state += 0x9E3779B97f4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  for (int i = 0; i < 20000; ++i) {
    std::uint32_t a32 = static_cast<std::uint32_t>(next());
    std::uint32_t b32 = static_cast<std::uint32_t>(next());
    Float32 na = Float32::from_bits(a32), nb = Float32::from_bits(b32);
    SoftFloat32 sa = SoftFloat32::from_bits(a32), sb = SoftFloat32::from_bits(b32);
    auto check32 = [&](Float32 n, SoftFloat32 s) {
      if (std::isnan(n.value())) {
        REQUIRE(s.to_real().is_nan());
      } else {
        REQUIRE(n.bits() == s.bits());
      }
    };
    check32(na + nb, sa + sb);
    check32(na * nb, sa * sb);
    check32(na / nb, sa / sb);
    check32(sqrt(na), sqrt(sa));

    std::uint64_t a64 = next(), b64 = next();
    Float64 ma = Float64::from_bits(a64), mb = Float64::from_bits(b64);
    SoftFloat64 ta = SoftFloat64::from_bits(a64), tb = SoftFloat64::from_bits(b64);
    auto check64 = [&](Float64 n, SoftFloat64 s) {
      if (std::isnan(n.value())) {
        REQUIRE(s.to_real().is_nan());
      } else {
        REQUIRE(n.bits() == s.bits());
      }
    };
    check64(ma + mb, ta + tb);
    check64(ma * mb, ta * tb);
    check64(ma / mb, ta / tb);
    check64(sqrt(ma), sqrt(ta));
  }
}

TEST_CASE("native conversions round-trip through the reference scalar") {
  REQUIRE(Float64::from_real(Real::parse("0.1")).value() == 0.1);
  REQUIRE(Float32::from_real(Real::parse("0.1")).value() == 0.1f);
  REQUIRE(Float64::from_bits(0x3FF0000000000001ull).to_real() ==
          Real(1.0) + Real::pow2(-52));
  REQUIRE(Float64::from_real(Real::parse("1e400")).is_bad());
  REQUIRE(Float32::from_real(Real::parse("1e39")).is_bad());
}
