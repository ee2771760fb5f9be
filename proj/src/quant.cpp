#include "codesign/quant.hpp"

#include <cmath>

#include "codesign/error.hpp"

namespace codesign::lowprec {

std::size_t tile_shape_size(TileShape shape) {
  return shape == TileShape::TILE_1x128 ? 128u : 16384u;
}

QuantizedTile tile_quantize(std::span<const double> values, TileShape shape,
                            const FloatFormat& fmt) {
  if (values.size() != tile_shape_size(shape)) {
    throw Error(ErrorCode::LENGTH_MISMATCH, "tile length does not match shape");
  }
  double max_abs = 0.0;
  for (double v : values) max_abs = std::max(max_abs, std::fabs(v));

  QuantizedTile tile;
  tile.shape = shape;
  tile.scale = max_abs > 0.0 ? max_abs / fmt.max_finite : 1.0;
  tile.codes.reserve(values.size());
  for (double v : values) {
    tile.codes.push_back(fp_encode(v / tile.scale, fmt));
  }
  return tile;
}

std::vector<double> tile_dequantize(const QuantizedTile& tile,
                                    const FloatFormat& fmt) {
  std::vector<double> out;
  out.reserve(tile.codes.size());
  for (std::uint32_t c : tile.codes) {
    out.push_back(fp_decode(c, fmt) * tile.scale);
  }
  return out;
}

}  // namespace codesign::lowprec
