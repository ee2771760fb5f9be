#pragma once

#include <span>
#include <vector>

#include "codesign/floatfmt.hpp"
#include "codesign/quant.hpp"

namespace codesign::lowprec {

// M x K activation matrix, quantized as 1x128 tiles along K (row-major tiles).
struct QuantizedActivations {
  int rows = 0;
  int cols = 0;
  FloatFormat fmt;
  std::vector<QuantizedTile> tiles;  // rows * (cols/128)
};

// K x N weight matrix, quantized as 128x128 blocks (row-major blocks, codes
// row-major within each block).
struct QuantizedWeights {
  int rows = 0;
  int cols = 0;
  FloatFormat fmt;
  std::vector<QuantizedTile> blocks;  // (rows/128) * (cols/128)
};

QuantizedActivations quantize_activations(std::span<const double> values,
                                          int rows, int cols,
                                          const FloatFormat& fmt);

QuantizedWeights quantize_weights(std::span<const double> values, int rows,
                                  int cols, const FloatFormat& fmt);

struct GemmOptions {
  bool parallel = true;  // OpenMP over output rows; results are identical to
                         // the serial path (per-element work is independent)
};

struct GemmReport {
  double max_abs_error = 0.0;   // vs exact arithmetic on the quantized inputs
  double mean_abs_error = 0.0;
  double max_bound_ratio = 0.0;  // max |error| / per-element rigorous bound
  double frobenius_rel_error = 0.0;
};

struct GemmResult {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // simulated FP8/FP22 result, row-major
  std::vector<double> exact;   // exact-on-quantized reference, row-major
  GemmReport report;
};

// Emulated fine-grained FP8 GEMM: inner products run in groups of 32 through
// the FP22 alignment/truncation model; every 128 elements along K the FP22
// partial sum is promoted to double, multiplied by the A-tile and B-block
// scales, and added to a full-precision accumulator. The report compares the
// simulation against an exact-arithmetic reference on the same quantized
// inputs and against a per-element bound accumulated from every truncation
// event. Throws DIM_NOT_MULTIPLE_OF_128 / LENGTH_MISMATCH.
GemmResult simulated_gemm(const QuantizedActivations& a,
                          const QuantizedWeights& b,
                          const GemmOptions& options = {});

}  // namespace codesign::lowprec
