#pragma once

#include <cstdint>
#include <vector>

namespace codesign::lowprec {

enum class SpecialEncoding {
  IEEE_LIKE,    // top exponent reserved for inf/NaN (E5M2 style)
  FINITE_ONLY,  // only the all-ones code is NaN, no infinities (E4M3 style)
};

// Parametric minifloat descriptor. Codewords are right-aligned in a uint32_t:
// [sign | exponent_bits | mantissa_bits].
struct FloatFormat {
  int exponent_bits = 0;
  int mantissa_bits = 0;
  int bias = 0;
  double max_finite = 0.0;
  SpecialEncoding special = SpecialEncoding::IEEE_LIKE;

  int total_bits() const { return 1 + exponent_bits + mantissa_bits; }
  std::uint32_t code_count() const { return 1u << total_bits(); }
  std::uint32_t sign_mask() const { return 1u << (exponent_bits + mantissa_bits); }

  // Throws Error(INVALID_ARGUMENT) if the descriptor is malformed or
  // max_finite does not match the bit layout.
  void validate() const;
};

// OCP FP8 conventions: E4M3 is finite-only with max 448; E5M2 is IEEE-like
// with max 57344.
FloatFormat e4m3();
FloatFormat e5m2();

// Largest finite magnitude implied by the bit layout.
double format_max_finite(int exponent_bits, int mantissa_bits, int bias,
                         SpecialEncoding special);

// Round-to-nearest-even encode. Total function: NaN maps to the canonical NaN
// code; overflow saturates to +/-max_finite for FINITE_ONLY and becomes
// +/-infinity for IEEE_LIKE. Subnormals are supported.
std::uint32_t fp_encode(double x, const FloatFormat& fmt);

// Exact value of a codeword.
double fp_decode(std::uint32_t code, const FloatFormat& fmt);

// All distinct finite values of the format, ascending. Handy as an exhaustive
// oracle for nearest-code searches.
std::vector<double> finite_values(const FloatFormat& fmt);

}  // namespace codesign::lowprec
