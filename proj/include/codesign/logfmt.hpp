#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "codesign/rng.hpp"

namespace codesign::lowprec {

enum class LogFmtRounding {
  NEAREST_LINEAR,     // deterministic round-to-nearest in linear space,
                      // thresholds at arithmetic midpoints, ties to lower code
  STOCHASTIC_LINEAR,  // round up with probability proportional to the
                      // linear-space distance from the lower grid point
};

// One encoded logarithmic block. A codeword is n_bits wide: the leading bit
// is the sign, the remaining n_bits-1 bits are the magnitude code. Magnitude
// code 0 is exact zero; codes K = 1 .. 2^(n-1)-1 decode to
// exp(min_log + step*(K-1)).
//
// min_mag/max_mag cache the linear grid endpoints (exp(min_log) and
// exp(max_log)). The decoded grid is evaluated as
// min_mag^(1-t) * max_mag^t with t = (K-1)/(L-1), which is the same value in
// exact arithmetic but keeps both endpoints, and any regenerated grid,
// bit-exact in doubles.
struct LogFmtBlock {
  int n_bits = 8;
  double min_log = 0.0;
  double step = 0.0;
  double min_mag = 0.0;
  double max_mag = 0.0;
  std::vector<std::uint16_t> codes;

  int magnitude_levels() const { return (1 << (n_bits - 1)) - 1; }
  double max_log() const { return min_log + step * (magnitude_levels() - 1); }

  // Decoded magnitude of code K in [1, magnitude_levels()].
  double grid_value(int k) const;

  bool operator==(const LogFmtBlock&) const = default;
};

// Encode one block. The dynamic range is clamped so that
// min_log >= max_log - 32*ln(2); magnitudes below the clamped minimum
// quantize to the lowest grid point. All-zero blocks degenerate to step 0
// with every codeword S.00...00. STOCHASTIC_LINEAR requires an rng.
// Throws EMPTY_BLOCK / INVALID_ARGUMENT.
LogFmtBlock logfmt_encode(std::span<const double> values, int n_bits,
                          LogFmtRounding rounding = LogFmtRounding::NEAREST_LINEAR,
                          StreamRng* rng = nullptr);

std::vector<double> logfmt_decode(const LogFmtBlock& block);

}  // namespace codesign::lowprec
