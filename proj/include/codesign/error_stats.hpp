#pragma once

#include <cstdint>
#include <string>

#include "codesign/logfmt.hpp"

namespace codesign::lowprec {

enum class Codec {
  E4M3_TILE,  // 1x128 scaled FP8 quantization
  E5M2_TILE,
  LOGFMT,
};

struct CodecSpec {
  Codec codec = Codec::E4M3_TILE;
  int n_bits = 8;  // LogFMT only
  LogFmtRounding rounding = LogFmtRounding::NEAREST_LINEAR;

  std::string label() const;
};

enum class DistributionKind {
  UNIFORM,               // uniform in [param_a, param_b)
  NORMAL,                // mean param_a, sigma param_b
  LOGNORMAL_SYMMETRIC,   // random sign * lognormal(mu=param_a, sigma=param_b)
};

struct Distribution {
  DistributionKind kind = DistributionKind::LOGNORMAL_SYMMETRIC;
  double param_a = 0.0;
  double param_b = 1.0;

  double sample(StreamRng& rng) const;
};

struct ErrorStats {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t samples = 0;
  double mean_abs_error = 0.0;
  double mean_rel_error = 0.0;  // over nonzero source elements
  double bias = 0.0;            // mean(decoded - source)
  double bias_std_error = 0.0;
};

// Monte-Carlo per-block quantization error statistics. One RNG stream per
// block keyed by (seed, trial), so the result is identical for any thread
// count.
ErrorStats format_error_stats(const Distribution& dist, const CodecSpec& codec,
                              std::uint64_t trials, std::uint64_t seed,
                              int block_size = 128, bool parallel = true);

}  // namespace codesign::lowprec
