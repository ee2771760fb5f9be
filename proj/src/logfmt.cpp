#include "codesign/logfmt.hpp"

#include <cmath>

#include "codesign/error.hpp"

namespace codesign::lowprec {

double LogFmtBlock::grid_value(int k) const {
  const int levels = magnitude_levels();
  if (step == 0.0 || levels == 1 || min_mag == max_mag) return min_mag;
  const double t = static_cast<double>(k - 1) / static_cast<double>(levels - 1);
  return std::pow(min_mag, 1.0 - t) * std::pow(max_mag, t);
}

namespace {

// Largest K in [1, L] with grid(K) <= a, or 0 when a < grid(1).
int floor_code(const LogFmtBlock& b, double a, double k_estimate) {
  const int levels = b.magnitude_levels();
  int k = static_cast<int>(k_estimate);
  if (k < 1) k = 1;
  if (k > levels) k = levels;
  while (k < levels && b.grid_value(k + 1) <= a) ++k;
  while (k >= 1 && b.grid_value(k) > a) --k;
  return k;
}

int nearest_code(const LogFmtBlock& b, double a, double k_estimate) {
  const int levels = b.magnitude_levels();
  const int kf = floor_code(b, a, k_estimate);
  if (kf < 1) return 1;        // below the clamped minimum
  if (kf >= levels) return levels;
  const double lo = b.grid_value(kf);
  const double hi = b.grid_value(kf + 1);
  // arithmetic-midpoint threshold, tie to the lower code
  return (a - lo <= hi - a) ? kf : kf + 1;
}

int stochastic_code(const LogFmtBlock& b, double a, double k_estimate,
                    StreamRng& rng) {
  const int levels = b.magnitude_levels();
  const int kf = floor_code(b, a, k_estimate);
  if (kf < 1) return 1;
  if (kf >= levels) return levels;
  const double lo = b.grid_value(kf);
  if (lo == a) return kf;
  const double hi = b.grid_value(kf + 1);
  const double p_up = (a - lo) / (hi - lo);
  return rng.next_uniform() < p_up ? kf + 1 : kf;
}

}  // namespace

LogFmtBlock logfmt_encode(std::span<const double> values, int n_bits,
                          LogFmtRounding rounding, StreamRng* rng) {
  if (values.empty()) throw Error(ErrorCode::EMPTY_BLOCK, "empty LogFMT block");
  if (n_bits < 2 || n_bits > 16) {
    throw Error(ErrorCode::INVALID_ARGUMENT, "n_bits must be in [2, 16]");
  }
  if (rounding == LogFmtRounding::STOCHASTIC_LINEAR && rng == nullptr) {
    throw Error(ErrorCode::INVALID_ARGUMENT, "stochastic rounding needs an rng");
  }

  LogFmtBlock block;
  block.n_bits = n_bits;
  block.codes.reserve(values.size());

  double min_nz = 0.0, max_nz = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::INVALID_ARGUMENT, "non-finite block element");
    }
    const double a = std::fabs(v);
    if (a == 0.0) continue;
    if (max_nz == 0.0) {
      min_nz = max_nz = a;
    } else {
      min_nz = std::min(min_nz, a);
      max_nz = std::max(max_nz, a);
    }
  }

  const std::uint16_t sign_bit = static_cast<std::uint16_t>(1u << (n_bits - 1));

  if (max_nz == 0.0) {  // degenerate all-zero block: step 0, sentinel min_log
    for (double v : values) {
      block.codes.push_back(std::signbit(v) ? sign_bit : 0);
    }
    return block;
  }

  // clamp the range to 2^32; ldexp keeps the clamped anchor an exact double
  const double clamped_min = std::max(min_nz, std::ldexp(max_nz, -32));
  block.min_mag = clamped_min;
  block.max_mag = max_nz;
  block.min_log = std::log(clamped_min);

  const int levels = block.magnitude_levels();
  if (levels > 1 && clamped_min < max_nz) {
    block.step = (std::log(max_nz) - block.min_log) / (levels - 1);
  }

  const double inv_step = block.step > 0.0 ? 1.0 / block.step : 0.0;
  for (double v : values) {
    const double a = std::fabs(v);
    std::uint16_t code = std::signbit(v) ? sign_bit : 0;
    if (a != 0.0) {
      int k = 1;
      if (block.step > 0.0) {
        const double k_est = (std::log(a) - block.min_log) * inv_step + 1.0;
        k = rounding == LogFmtRounding::NEAREST_LINEAR
                ? nearest_code(block, a, k_est)
                : stochastic_code(block, a, k_est, *rng);
      }
      code |= static_cast<std::uint16_t>(k);
    }
    block.codes.push_back(code);
  }
  return block;
}

std::vector<double> logfmt_decode(const LogFmtBlock& block) {
  const std::uint16_t sign_bit = static_cast<std::uint16_t>(1u << (block.n_bits - 1));
  const std::uint16_t mag_mask = static_cast<std::uint16_t>(sign_bit - 1);

  std::vector<double> out;
  out.reserve(block.codes.size());
  for (std::uint16_t c : block.codes) {
    const double sign = (c & sign_bit) ? -1.0 : 1.0;
    const int k = c & mag_mask;
    out.push_back(k == 0 ? sign * 0.0 : sign * block.grid_value(k));
  }
  return out;
}

}  // namespace codesign::lowprec
