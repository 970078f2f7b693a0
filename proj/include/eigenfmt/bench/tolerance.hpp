#pragma once

// Residual tolerance per storage width. Defaults follow the benchmark
// protocol; any width can be overridden from the command line or config.

#include <stdexcept>

#include "../real.hpp"

namespace eigenfmt {

struct ToleranceSchedule {
  Real bits8 = Real::parse("1e-2");
  Real bits16 = Real::parse("1e-4");
  Real bits32 = Real::parse("1e-8");
  Real bits64 = Real::parse("1e-12");
  Real reference = Real::parse("1e-20");

  // width 0 selects the reference tolerance
  Real for_bits(int bits) const {
    switch (bits) {
      case 0: return reference;
      case 8: return bits8;
      case 16: return bits16;
      case 32: return bits32;
      case 64: return bits64;
    }
    throw std::invalid_argument("no tolerance for this bit width");
  }

  void set(int bits, const Real& v) {
    switch (bits) {
      case 0: reference = v; return;
      case 8: bits8 = v; return;
      case 16: bits16 = v; return;
      case 32: bits32 = v; return;
      case 64: bits64 = v; return;
    }
    throw std::invalid_argument("no tolerance for this bit width");
  }
};

}  // namespace eigenfmt
