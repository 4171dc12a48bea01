#pragma once

#include "dualfit/flow.hpp"
#include "dualfit/morphology.hpp"
#include "dualfit/types.hpp"
#include "dualfit/warp.hpp"

// Serial reference implementations. These are deliberately plain
// brute-force loops, written independently of the parallel kernels in
// the library proper; the tests treat them as oracles and the benchmark
// target compares against them.
namespace dualfit::ref {

BinaryMask erode(const BinaryMask& mask, const BandSpec& spec);

BinaryMask narrow_band(const BinaryMask& mask, const BandSpec& spec);

FlowField upsample_flow(const FlowField& flow, int target_w, int target_h);

WarpedPart apply_flow(const Image& source, const BinaryMask& source_alpha,
                      const FlowField& flow, Label part_id);

AssembledGarment assemble_parts(const std::array<WarpedPart, 3>& parts,
                                const std::array<BinaryMask, 3>& global_parsing);

/// Exact integer-shift warp oracle: out(x,y) = source(x+dx, y+dy) where
/// in-bounds and alpha-set, else zero with coverage cleared.
WarpedPart shift(const Image& source, const BinaryMask& source_alpha, int dx,
                 int dy, Label part_id);

double mse(const Image& a, const Image& b);

double l1(const Image& a, const Image& b);

double ssim(const Image& a, const Image& b);

}  // namespace dualfit::ref
