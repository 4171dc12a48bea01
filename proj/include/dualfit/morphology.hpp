#pragma once

#include "dualfit/types.hpp"

namespace dualfit {

/// Structuring-element spec for the narrow-band morphology: a square
/// kernel applied for a configurable number of erosion iterations, with
/// out-of-frame neighbors fixed at 0.
struct BandSpec {
  int kernel_size = 3;
  int iterations = 5;

  void validate() const {
    require(kernel_size >= 1 && kernel_size % 2 == 1,
            "band kernel size must be odd and >= 1");
    require(iterations >= 0, "band iterations must be >= 0");
  }
};

/// `spec.iterations` applications of binary erosion with the square
/// kernel: out(p) = min over the kernel neighborhood of p, frame border
/// counting as 0. Parallel per scanline; bit-identical to the serial
/// reference.
BinaryMask erode(const BinaryMask& mask, const BandSpec& spec);

/// Boundary ring of `mask`: mask minus its n-fold erosion.
BinaryMask narrow_band(const BinaryMask& mask, const BandSpec& spec);

}  // namespace dualfit
