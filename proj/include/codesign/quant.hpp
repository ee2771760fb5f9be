#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "codesign/floatfmt.hpp"

namespace codesign::lowprec {

enum class TileShape {
  TILE_1x128,     // activation tile, 128 codes
  BLOCK_128x128,  // weight block, 16384 codes
};

std::size_t tile_shape_size(TileShape shape);

// One quantized tile/block: dequantized value of element i is
// scale * fp_decode(codes[i], fmt).
struct QuantizedTile {
  double scale = 1.0;
  TileShape shape = TileShape::TILE_1x128;
  std::vector<std::uint32_t> codes;
};

// Fine-grained scaled quantization: scale = max_abs/fmt.max_finite (1.0 for an
// all-zero input), codes = fp_encode(v/scale). Throws LENGTH_MISMATCH when the
// input length does not match the shape.
QuantizedTile tile_quantize(std::span<const double> values, TileShape shape,
                            const FloatFormat& fmt);

std::vector<double> tile_dequantize(const QuantizedTile& tile,
                                    const FloatFormat& fmt);

}  // namespace codesign::lowprec
