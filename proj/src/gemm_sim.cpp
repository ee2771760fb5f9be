#include "codesign/gemm_sim.hpp"

#include <cmath>

#include "codesign/error.hpp"
#include "codesign/fp22.hpp"

namespace codesign::lowprec {

namespace {

constexpr int kTile = 128;
constexpr int kGroup = 32;

// FP22 store quantum of a nonzero value (13-bit mantissa below the leading 1).
double store_quantum(double x) {
  return x == 0.0 ? 0.0 : std::ldexp(1.0, frexp_exponent(x) - 14);
}

}  // namespace

QuantizedActivations quantize_activations(std::span<const double> values,
                                          int rows, int cols,
                                          const FloatFormat& fmt) {
  if (rows < 1 || cols < 1 || cols % kTile != 0) {
    throw Error(ErrorCode::DIM_NOT_MULTIPLE_OF_128, "activation cols must be a multiple of 128");
  }
  if (values.size() != static_cast<std::size_t>(rows) * cols) {
    throw Error(ErrorCode::LENGTH_MISMATCH, "activation buffer size mismatch");
  }
  QuantizedActivations a;
  a.rows = rows;
  a.cols = cols;
  a.fmt = fmt;
  a.tiles.reserve(static_cast<std::size_t>(rows) * (cols / kTile));
  for (int i = 0; i < rows; ++i) {
    for (int t = 0; t < cols / kTile; ++t) {
      a.tiles.push_back(tile_quantize(
          values.subspan(static_cast<std::size_t>(i) * cols + t * kTile, kTile),
          TileShape::TILE_1x128, fmt));
    }
  }
  return a;
}

QuantizedWeights quantize_weights(std::span<const double> values, int rows,
                                  int cols, const FloatFormat& fmt) {
  if (rows < 1 || cols < 1 || rows % kTile != 0 || cols % kTile != 0) {
    throw Error(ErrorCode::DIM_NOT_MULTIPLE_OF_128, "weight dims must be multiples of 128");
  }
  if (values.size() != static_cast<std::size_t>(rows) * cols) {
    throw Error(ErrorCode::LENGTH_MISMATCH, "weight buffer size mismatch");
  }
  QuantizedWeights w;
  w.rows = rows;
  w.cols = cols;
  w.fmt = fmt;
  const int brows = rows / kTile, bcols = cols / kTile;
  w.blocks.reserve(static_cast<std::size_t>(brows) * bcols);
  std::vector<double> block(kTile * kTile);
  for (int br = 0; br < brows; ++br) {
    for (int bc = 0; bc < bcols; ++bc) {
      for (int r = 0; r < kTile; ++r) {
        for (int c = 0; c < kTile; ++c) {
          block[static_cast<std::size_t>(r) * kTile + c] =
              values[static_cast<std::size_t>(br * kTile + r) * cols +
                     bc * kTile + c];
        }
      }
      w.blocks.push_back(tile_quantize(block, TileShape::BLOCK_128x128, fmt));
    }
  }
  return w;
}

GemmResult simulated_gemm(const QuantizedActivations& a,
                          const QuantizedWeights& b,
                          const GemmOptions& options) {
  if (a.cols != b.rows) {
    throw Error(ErrorCode::LENGTH_MISMATCH, "inner dimensions disagree");
  }
  const int m = a.rows, k = a.cols, n = b.cols;
  const int ktiles = k / kTile, bcols = n / kTile;

  // pre-decode code values (without scales)
  std::vector<double> adec(static_cast<std::size_t>(m) * k);
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < ktiles; ++t) {
      const QuantizedTile& tile = a.tiles[static_cast<std::size_t>(i) * ktiles + t];
      for (int c = 0; c < kTile; ++c) {
        adec[static_cast<std::size_t>(i) * k + t * kTile + c] =
            fp_decode(tile.codes[c], a.fmt);
      }
    }
  }
  std::vector<double> bdec(static_cast<std::size_t>(k) * n);
  for (int br = 0; br < ktiles; ++br) {
    for (int bc = 0; bc < bcols; ++bc) {
      const QuantizedTile& blk = b.blocks[static_cast<std::size_t>(br) * bcols + bc];
      for (int r = 0; r < kTile; ++r) {
        for (int c = 0; c < kTile; ++c) {
          bdec[static_cast<std::size_t>(br * kTile + r) * n + bc * kTile + c] =
              fp_decode(blk.codes[static_cast<std::size_t>(r) * kTile + c], b.fmt);
        }
      }
    }
  }

  GemmResult res;
  res.rows = m;
  res.cols = n;
  res.values.assign(static_cast<std::size_t>(m) * n, 0.0);
  res.exact.assign(static_cast<std::size_t>(m) * n, 0.0);
  std::vector<double> bounds(static_cast<std::size_t>(m) * n, 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (options.parallel)
#endif
  for (int i = 0; i < m; ++i) {
    double prods[kTile];
    for (int j = 0; j < n; ++j) {
      double sim = 0.0, exact = 0.0, bound = 0.0;
      for (int t = 0; t < ktiles; ++t) {
        const double a_scale = a.tiles[static_cast<std::size_t>(i) * ktiles + t].scale;
        const double b_scale =
            b.blocks[static_cast<std::size_t>(t) * bcols + j / kTile].scale;
        for (int c = 0; c < kTile; ++c) {
          prods[c] = adec[static_cast<std::size_t>(i) * k + t * kTile + c] *
                     bdec[static_cast<std::size_t>(t * kTile + c) * n + j];
        }

        Fp22Accumulator acc;
        double chunk_bound = 0.0;
        for (int g = 0; g < kTile / kGroup; ++g) {
          std::span<const double> grp(prods + g * kGroup, kGroup);
          int e_max = 0;
          bool any = false;
          for (double p : grp) {
            if (p != 0.0) {
              const int e = frexp_exponent(p);
              e_max = any ? std::max(e_max, e) : e;
              any = true;
            }
          }
          const Fp22State delta = fp22_accumulate_group(grp);
          if (any) {
            // 31 lossy alignment truncations + the group's FP22 store
            chunk_bound += 31.0 * std::ldexp(1.0, e_max - 13) +
                           store_quantum(delta.value());
          }
          acc.add(delta.value());
          chunk_bound += store_quantum(acc.value());
        }
        // promote and dequantize: multiply scales left-to-right
        sim += acc.value() * a_scale * b_scale;

        double s = 0.0, comp = 0.0;  // Kahan
        for (int c = 0; c < kTile; ++c) {
          const double y = prods[c] - comp;
          const double t2 = s + y;
          comp = (t2 - s) - y;
          s = t2;
        }
        exact += s * a_scale * b_scale;
        bound += chunk_bound * a_scale * b_scale;
      }
      res.values[static_cast<std::size_t>(i) * n + j] = sim;
      res.exact[static_cast<std::size_t>(i) * n + j] = exact;
      bounds[static_cast<std::size_t>(i) * n + j] = bound;
    }
  }

  // serial reduction keeps the report independent of thread count
  double max_err = 0.0, sum_err = 0.0, max_ratio = 0.0;
  double fro_err = 0.0, fro_ref = 0.0;
  for (std::size_t idx = 0; idx < res.values.size(); ++idx) {
    const double err = std::fabs(res.values[idx] - res.exact[idx]);
    max_err = std::max(max_err, err);
    sum_err += err;
    if (err > 0.0 && bounds[idx] > 0.0) {
      max_ratio = std::max(max_ratio, err / bounds[idx]);
    }
    fro_err += err * err;
    fro_ref += res.exact[idx] * res.exact[idx];
  }
  res.report.max_abs_error = max_err;
  res.report.mean_abs_error = sum_err / static_cast<double>(res.values.size());
  res.report.max_bound_ratio = max_ratio;
  res.report.frobenius_rel_error =
      fro_ref > 0.0 ? std::sqrt(fro_err / fro_ref) : 0.0;
  return res;
}

}  // namespace codesign::lowprec
