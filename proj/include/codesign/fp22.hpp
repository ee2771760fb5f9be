#pragma once

#include <cstdint>
#include <span>

namespace codesign::lowprec {

// Exponent e such that |x| is in [2^(e-1), 2^e), i.e. frexp's convention.
int frexp_exponent(double x);

// Truncated-accumulator register: 1 sign bit, 8 exponent bits, 13 mantissa
// bits. IEEE-style layout with bias 127; encoding truncates (never rounds)
// the significand.
struct Fp22State {
  std::uint8_t sign = 0;       // 1 bit
  std::uint16_t exponent = 0;  // 8 bits
  std::uint16_t mantissa = 0;  // 13 bits

  static Fp22State from_double(double x);
  double value() const;

  bool operator==(const Fp22State&) const = default;
};

// Nearest FP22 value toward zero. Equivalent to
// Fp22State::from_double(x).value().
double fp22_truncate(double x);

// One Tensor-Core accumulation group: align all 32 products to the quantum
// 2^(e_max - 13) where e_max is the frexp exponent of the largest-magnitude
// product, truncate each toward zero, sum exactly, then truncate the sum into
// FP22. The alignment window keeps 13 fraction bits below the leading bit of
// the max product, so anything smaller than the quantum vanishes.
Fp22State fp22_accumulate_group(std::span<const double> products);

// Running FP22 register: every added delta is folded in with a truncating
// store, matching how group results accumulate between promotions.
class Fp22Accumulator {
 public:
  void add(double delta) { state_ = Fp22State::from_double(state_.value() + delta); }
  double value() const { return state_.value(); }
  const Fp22State& state() const { return state_; }
  void reset() { state_ = Fp22State{}; }

 private:
  Fp22State state_;
};

}  // namespace codesign::lowprec
