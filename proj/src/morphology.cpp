#include "dualfit/morphology.hpp"

#include "dualfit/mask_ops.hpp"

namespace dualfit {

namespace {

// Square-kernel erosion factors into a horizontal and a vertical 1-D min
// pass; each output row depends only on input rows, so rows parallelize
// without changing the result.
void erode_rows(const BinaryMask& in, int radius, BinaryMask& out) {
  const int w = in.width;
  const int h = in.height;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* src = in.bits.data() + static_cast<std::size_t>(y) * w;
    std::uint8_t* dst = out.bits.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      std::uint8_t v = 1;
      if (x - radius < 0 || x + radius >= w) {
        v = 0;
      } else {
        for (int i = -radius; i <= radius; ++i) v &= src[x + i];
      }
      dst[x] = v;
    }
  }
}

void erode_cols(const BinaryMask& in, int radius, BinaryMask& out) {
  const int w = in.width;
  const int h = in.height;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    std::uint8_t* dst = out.bits.data() + static_cast<std::size_t>(y) * w;
    if (y - radius < 0 || y + radius >= h) {
      for (int x = 0; x < w; ++x) dst[x] = 0;
      continue;
    }
    for (int x = 0; x < w; ++x) {
      std::uint8_t v = 1;
      for (int j = -radius; j <= radius; ++j)
        v &= in.bits[static_cast<std::size_t>(y + j) * w + x];
      dst[x] = v;
    }
  }
}

}  // namespace

BinaryMask erode(const BinaryMask& mask, const BandSpec& spec) {
  spec.validate();
  const int radius = (spec.kernel_size - 1) / 2;
  if (spec.iterations == 0 || radius == 0) return mask;

  BinaryMask cur = mask;
  BinaryMask tmp(mask.width, mask.height);
  BinaryMask next(mask.width, mask.height);
  for (int it = 0; it < spec.iterations; ++it) {
    erode_rows(cur, radius, tmp);
    erode_cols(tmp, radius, next);
    std::swap(cur, next);
  }
  return cur;
}

BinaryMask narrow_band(const BinaryMask& mask, const BandSpec& spec) {
  return mask_and_not(mask, erode(mask, spec));
}

}  // namespace dualfit
