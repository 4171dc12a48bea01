#pragma once

#include <initializer_list>
#include <optional>

#include "dualfit/types.hpp"

namespace dualfit {

/// Bit set exactly where the parsing label is in `labels`.
BinaryMask mask_from_labels(const ParsingMap& parsing,
                            std::initializer_list<Label> labels);
BinaryMask mask_from_labels(const ParsingMap& parsing,
                            const std::vector<Label>& labels);

/// out(p) = top(p) where alpha(p), else base(p).
Image overlay(const Image& base, const Image& top, const BinaryMask& alpha);

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_and_not(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_not(const BinaryMask& a);

bool masks_disjoint(const BinaryMask& a, const BinaryMask& b);
bool mask_subset(const BinaryMask& inner, const BinaryMask& outer);

struct BoundingBox {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // inclusive
  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
};

/// Tight bounding box of the set bits; nullopt for an empty mask.
std::optional<BoundingBox> mask_bbox(const BinaryMask& mask);

/// Chebyshev (chessboard) distance from each pixel to the nearest pixel
/// outside the mask; 0 outside, and pixels adjacent to the outside get 1.
/// Out-of-frame counts as outside. Exact two-pass chamfer.
std::vector<int> chebyshev_distance_to_complement(const BinaryMask& mask);

/// Max Chebyshev distance (as above, relative to `region`'s complement)
/// over the set bits of `band`; 0 for an empty band.
int measured_band_width(const BinaryMask& band, const BinaryMask& region);

}  // namespace dualfit
