#include "codesign/error_stats.hpp"

#include <cmath>
#include <vector>

#include "codesign/error.hpp"
#include "codesign/quant.hpp"

namespace codesign::lowprec {

std::string CodecSpec::label() const {
  switch (codec) {
    case Codec::E4M3_TILE: return "e4m3";
    case Codec::E5M2_TILE: return "e5m2";
    case Codec::LOGFMT:
      return "logfmt" + std::to_string(n_bits) +
             (rounding == LogFmtRounding::STOCHASTIC_LINEAR ? "-sr" : "");
  }
  return "?";
}

double Distribution::sample(StreamRng& rng) const {
  switch (kind) {
    case DistributionKind::UNIFORM:
      return rng.next_uniform(param_a, param_b);
    case DistributionKind::NORMAL:
      return param_a + param_b * rng.next_normal();
    case DistributionKind::LOGNORMAL_SYMMETRIC: {
      const double mag = rng.next_lognormal(param_a, param_b);
      return (rng.next_u64() & 1) ? -mag : mag;
    }
  }
  return 0.0;
}

namespace {

struct Partial {
  double sum_abs = 0.0;
  double sum_rel = 0.0;
  double sum_diff = 0.0;
  double sum_diff_sq = 0.0;
  std::uint64_t n = 0;
  std::uint64_t n_rel = 0;
};

}  // namespace

ErrorStats format_error_stats(const Distribution& dist, const CodecSpec& codec,
                              std::uint64_t trials, std::uint64_t seed,
                              int block_size, bool parallel) {
  if (trials < 1 || block_size < 1) {
    throw Error(ErrorCode::INVALID_ARGUMENT, "trials and block_size must be >= 1");
  }
  const FloatFormat fmt =
      codec.codec == Codec::E5M2_TILE ? e5m2() : e4m3();

  std::vector<Partial> partials(trials);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long long t = 0; t < static_cast<long long>(trials); ++t) {
    StreamRng rng(seed, static_cast<std::uint64_t>(t));
    std::vector<double> block(block_size);
    for (double& v : block) v = dist.sample(rng);

    std::vector<double> decoded;
    if (codec.codec == Codec::LOGFMT) {
      decoded = logfmt_decode(
          logfmt_encode(block, codec.n_bits, codec.rounding, &rng));
    } else {
      decoded =
          tile_dequantize(tile_quantize(block, block.size() == 16384
                                                   ? TileShape::BLOCK_128x128
                                                   : TileShape::TILE_1x128,
                                        fmt),
                          fmt);
    }

    Partial& p = partials[t];
    for (int i = 0; i < block_size; ++i) {
      const double diff = decoded[i] - block[i];
      p.sum_abs += std::fabs(diff);
      p.sum_diff += diff;
      p.sum_diff_sq += diff * diff;
      ++p.n;
      if (block[i] != 0.0) {
        p.sum_rel += std::fabs(diff) / std::fabs(block[i]);
        ++p.n_rel;
      }
    }
  }

  // fixed-order reduction
  Partial total;
  for (const Partial& p : partials) {
    total.sum_abs += p.sum_abs;
    total.sum_rel += p.sum_rel;
    total.sum_diff += p.sum_diff;
    total.sum_diff_sq += p.sum_diff_sq;
    total.n += p.n;
    total.n_rel += p.n_rel;
  }

  ErrorStats s;
  s.seed = seed;
  s.trials = trials;
  s.samples = total.n;
  const double n = static_cast<double>(total.n);
  s.mean_abs_error = total.sum_abs / n;
  s.mean_rel_error = total.n_rel > 0 ? total.sum_rel / static_cast<double>(total.n_rel) : 0.0;
  s.bias = total.sum_diff / n;
  const double var = std::max(0.0, total.sum_diff_sq / n - s.bias * s.bias);
  s.bias_std_error = std::sqrt(var / n);
  return s;
}

}  // namespace codesign::lowprec
