#include "codesign/fp22.hpp"

#include <cmath>
#include <limits>

#include "codesign/error.hpp"

namespace codesign::lowprec {

namespace {
constexpr int kMantissaBits = 13;
constexpr int kBias = 127;
constexpr int kMinNormalExp = 1 - kBias;  // -126, significand-in-[1,2) terms
}  // namespace

int frexp_exponent(double x) {
  int e = 0;
  (void)std::frexp(x, &e);
  return e;
}

Fp22State Fp22State::from_double(double x) {
  Fp22State s;
  if (x == 0.0 || std::isnan(x)) {
    s.sign = std::signbit(x) ? 1 : 0;
    return s;  // NaN input is out of scope for the simulated paths; store 0
  }
  s.sign = std::signbit(x) ? 1 : 0;
  double a = std::fabs(x);

  const int exp = frexp_exponent(a) - 1;  // significand-in-[1,2) exponent
  if (exp > 127) {                        // saturate, unreachable in practice
    s.exponent = 254;
    s.mantissa = (1u << kMantissaBits) - 1;
    return s;
  }
  if (exp < kMinNormalExp) {
    const double quantum = std::ldexp(1.0, kMinNormalExp - kMantissaBits);
    s.exponent = 0;
    s.mantissa = static_cast<std::uint16_t>(std::trunc(a / quantum));
    return s;
  }
  const double quantum = std::ldexp(1.0, exp - kMantissaBits);
  const auto k = static_cast<std::uint64_t>(std::trunc(a / quantum));
  s.exponent = static_cast<std::uint16_t>(exp + kBias);
  s.mantissa = static_cast<std::uint16_t>(k - (1ull << kMantissaBits));
  return s;
}

double Fp22State::value() const {
  const double frac =
      static_cast<double>(mantissa) / static_cast<double>(1u << kMantissaBits);
  double mag;
  if (exponent == 0) {
    mag = std::ldexp(frac, kMinNormalExp);
  } else {
    mag = std::ldexp(1.0 + frac, static_cast<int>(exponent) - kBias);
  }
  return sign ? -mag : mag;
}

double fp22_truncate(double x) { return Fp22State::from_double(x).value(); }

Fp22State fp22_accumulate_group(std::span<const double> products) {
  if (products.size() != 32) {
    throw Error(ErrorCode::LENGTH_MISMATCH, "accumulation group must hold 32 products");
  }
  int e_max = std::numeric_limits<int>::min();
  for (double p : products) {
    if (p != 0.0) e_max = std::max(e_max, frexp_exponent(p));
  }
  if (e_max == std::numeric_limits<int>::min()) return Fp22State{};  // all zero

  const double quantum = std::ldexp(1.0, e_max - 13);
  double sum = 0.0;
  for (double p : products) {
    sum += std::trunc(p / quantum);  // integer-valued, exact in double
  }
  return Fp22State::from_double(sum * quantum);
}

}  // namespace codesign::lowprec
