#include "codesign/floatfmt.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <limits>

#include "codesign/error.hpp"

namespace codesign::lowprec {

namespace {

std::uint32_t canonical_nan(const FloatFormat& fmt) {
  const std::uint32_t e_all = (1u << fmt.exponent_bits) - 1;
  if (fmt.special == SpecialEncoding::FINITE_ONLY) {
    // all ones (positive sign)
    return (e_all << fmt.mantissa_bits) | ((1u << fmt.mantissa_bits) - 1);
  }
  // quiet bit set
  return (e_all << fmt.mantissa_bits) | (1u << (fmt.mantissa_bits - 1));
}

std::uint32_t infinity_code(const FloatFormat& fmt, bool negative) {
  const std::uint32_t e_all = (1u << fmt.exponent_bits) - 1;
  std::uint32_t code = e_all << fmt.mantissa_bits;
  if (negative) code |= fmt.sign_mask();
  return code;
}

std::uint32_t max_finite_code(const FloatFormat& fmt, bool negative) {
  std::uint32_t e_field, m_field;
  if (fmt.special == SpecialEncoding::FINITE_ONLY) {
    e_field = (1u << fmt.exponent_bits) - 1;
    m_field = (1u << fmt.mantissa_bits) - 2;  // all-ones mantissa is NaN
  } else {
    e_field = (1u << fmt.exponent_bits) - 2;
    m_field = (1u << fmt.mantissa_bits) - 1;
  }
  std::uint32_t code = (e_field << fmt.mantissa_bits) | m_field;
  if (negative) code |= fmt.sign_mask();
  return code;
}

}  // namespace

double format_max_finite(int exponent_bits, int mantissa_bits, int bias,
                         SpecialEncoding special) {
  const int e_top = (1 << exponent_bits) - 1;
  if (special == SpecialEncoding::FINITE_ONLY) {
    // top binade keeps all mantissas but the NaN slot
    const double sig =
        mantissa_bits > 0
            ? 1.0 + static_cast<double>((1 << mantissa_bits) - 2) /
                        static_cast<double>(1 << mantissa_bits)
            : 1.0;
    return std::ldexp(sig, e_top - bias);
  }
  const double sig = 2.0 - std::ldexp(1.0, -mantissa_bits);
  return std::ldexp(sig, e_top - 1 - bias);
}

void FloatFormat::validate() const {
  if (exponent_bits < 2 || mantissa_bits < 0 || total_bits() > 32) {
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "FloatFormat bit layout out of range");
  }
  if (exponent_bits > 10) {
    // double-precision emulation cannot represent wider exponent ranges
    throw Error(ErrorCode::INVALID_ARGUMENT, "exponent_bits > 10 unsupported");
  }
  if (special == SpecialEncoding::IEEE_LIKE && mantissa_bits < 1) {
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "IEEE_LIKE needs at least one mantissa bit for NaN");
  }
  const double expect =
      format_max_finite(exponent_bits, mantissa_bits, bias, special);
  if (expect != max_finite) {
    throw Error(ErrorCode::INVALID_ARGUMENT,
                "max_finite inconsistent with bit layout");
  }
}

FloatFormat e4m3() {
  FloatFormat f;
  f.exponent_bits = 4;
  f.mantissa_bits = 3;
  f.bias = 7;
  f.max_finite = 448.0;
  f.special = SpecialEncoding::FINITE_ONLY;
  return f;
}

FloatFormat e5m2() {
  FloatFormat f;
  f.exponent_bits = 5;
  f.mantissa_bits = 2;
  f.bias = 15;
  f.max_finite = 57344.0;
  f.special = SpecialEncoding::IEEE_LIKE;
  return f;
}

std::uint32_t fp_encode(double x, const FloatFormat& fmt) {
  if (std::isnan(x)) return canonical_nan(fmt);

  const bool negative = std::signbit(x);
  const std::uint32_t sign = negative ? fmt.sign_mask() : 0u;
  double a = std::fabs(x);

  if (a == 0.0) return sign;  // signed zero

  if (std::isinf(x)) {
    return fmt.special == SpecialEncoding::FINITE_ONLY
               ? max_finite_code(fmt, negative)
               : infinity_code(fmt, negative);
  }

  // a = f * 2^e with f in [0.5, 1); significand-in-[1,2) exponent is e - 1.
  int e;
  (void)std::frexp(a, &e);
  const int exp = e - 1;
  const int min_normal_exp = 1 - fmt.bias;

  std::uint32_t e_field, m_field;
  if (exp < min_normal_exp) {
    // subnormal quantum; nearbyint gives round-half-even in the default mode
    const double quantum = std::ldexp(1.0, min_normal_exp - fmt.mantissa_bits);
    const auto k = static_cast<std::uint64_t>(std::nearbyint(a / quantum));
    if (k >= (1ull << fmt.mantissa_bits)) {
      e_field = 1;  // rounded up into the smallest normal
      m_field = 0;
    } else {
      e_field = 0;
      m_field = static_cast<std::uint32_t>(k);
    }
  } else {
    const double quantum = std::ldexp(1.0, exp - fmt.mantissa_bits);
    auto k = static_cast<std::uint64_t>(std::nearbyint(a / quantum));
    int ee = exp;
    if (k == (2ull << fmt.mantissa_bits)) {  // rounded into the next binade
      k >>= 1;
      ++ee;
    }
    const std::uint32_t e_max_field = (1u << fmt.exponent_bits) - 1;
    e_field = static_cast<std::uint32_t>(ee + fmt.bias);
    m_field = static_cast<std::uint32_t>(k - (1ull << fmt.mantissa_bits));
    const bool overflow =
        fmt.special == SpecialEncoding::FINITE_ONLY
            ? (e_field > e_max_field ||
               (e_field == e_max_field && m_field >= (1u << fmt.mantissa_bits) - 1))
            : (e_field >= e_max_field);
    if (overflow || ee + fmt.bias > static_cast<int>(e_max_field)) {
      return fmt.special == SpecialEncoding::FINITE_ONLY
                 ? max_finite_code(fmt, negative)
                 : infinity_code(fmt, negative);
    }
  }
  return sign | (e_field << fmt.mantissa_bits) | m_field;
}

double fp_decode(std::uint32_t code, const FloatFormat& fmt) {
  const bool negative = (code & fmt.sign_mask()) != 0;
  const std::uint32_t e_field = (code >> fmt.mantissa_bits) &
                                ((1u << fmt.exponent_bits) - 1);
  const std::uint32_t m_field = code & ((1u << fmt.mantissa_bits) - 1);
  const std::uint32_t e_all = (1u << fmt.exponent_bits) - 1;

  if (fmt.special == SpecialEncoding::FINITE_ONLY) {
    if (e_field == e_all && m_field == (1u << fmt.mantissa_bits) - 1) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  } else if (e_field == e_all) {
    if (m_field == 0) {
      return negative ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

  double mag;
  const double frac =
      static_cast<double>(m_field) / static_cast<double>(1u << fmt.mantissa_bits);
  if (e_field == 0) {
    mag = std::ldexp(frac, 1 - fmt.bias);
  } else {
    mag = std::ldexp(1.0 + frac, static_cast<int>(e_field) - fmt.bias);
  }
  return negative ? -mag : mag;
}

std::vector<double> finite_values(const FloatFormat& fmt) {
  std::vector<double> out;
  out.reserve(fmt.code_count());
  for (std::uint32_t c = 0; c < fmt.code_count(); ++c) {
    const double v = fp_decode(c, fmt);
    if (std::isfinite(v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace codesign::lowprec
