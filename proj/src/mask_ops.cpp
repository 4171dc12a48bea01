#include "dualfit/mask_ops.hpp"

#include <algorithm>
#include <limits>

namespace dualfit {

namespace {

void require_same_shape(const BinaryMask& a, const BinaryMask& b,
                        const char* what) {
  require(a.same_shape(b), std::string(what) + ": mask dimensions differ");
}

}  // namespace

BinaryMask mask_from_labels(const ParsingMap& parsing,
                            std::initializer_list<Label> labels) {
  return mask_from_labels(parsing, std::vector<Label>(labels));
}

BinaryMask mask_from_labels(const ParsingMap& parsing,
                            const std::vector<Label>& labels) {
  bool wanted[kLabelCount] = {};
  for (Label l : labels) wanted[static_cast<std::uint8_t>(l)] = true;

  BinaryMask out(parsing.width, parsing.height);
  for (std::size_t i = 0; i < parsing.labels.size(); ++i)
    out.bits[i] = wanted[parsing.labels[i]] ? 1 : 0;
  return out;
}

Image overlay(const Image& base, const Image& top, const BinaryMask& alpha) {
  require(base.same_shape(top), "overlay: base and top shapes differ");
  require(alpha.width == base.width && alpha.height == base.height,
          "overlay: alpha dimensions differ");

  Image out = base;
  const int c = base.channels;
  for (std::size_t i = 0; i < alpha.bits.size(); ++i) {
    if (!alpha.bits[i]) continue;
    for (int k = 0; k < c; ++k) out.data[i * c + k] = top.data[i * c + k];
  }
  return out;
}

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b, "mask_and");
  BinaryMask out(a.width, a.height);
  for (std::size_t i = 0; i < a.bits.size(); ++i)
    out.bits[i] = a.bits[i] & b.bits[i];
  return out;
}

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b, "mask_or");
  BinaryMask out(a.width, a.height);
  for (std::size_t i = 0; i < a.bits.size(); ++i)
    out.bits[i] = a.bits[i] | b.bits[i];
  return out;
}

BinaryMask mask_and_not(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b, "mask_and_not");
  BinaryMask out(a.width, a.height);
  for (std::size_t i = 0; i < a.bits.size(); ++i)
    out.bits[i] = a.bits[i] & static_cast<std::uint8_t>(1 - b.bits[i]);
  return out;
}

BinaryMask mask_not(const BinaryMask& a) {
  BinaryMask out(a.width, a.height);
  for (std::size_t i = 0; i < a.bits.size(); ++i)
    out.bits[i] = a.bits[i] ? 0 : 1;
  return out;
}

bool masks_disjoint(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b, "masks_disjoint");
  for (std::size_t i = 0; i < a.bits.size(); ++i)
    if (a.bits[i] && b.bits[i]) return false;
  return true;
}

bool mask_subset(const BinaryMask& inner, const BinaryMask& outer) {
  require_same_shape(inner, outer, "mask_subset");
  for (std::size_t i = 0; i < inner.bits.size(); ++i)
    if (inner.bits[i] && !outer.bits[i]) return false;
  return true;
}

std::optional<BoundingBox> mask_bbox(const BinaryMask& mask) {
  BoundingBox box{mask.width, mask.height, -1, -1};
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.get(x, y)) continue;
      box.x0 = std::min(box.x0, x);
      box.y0 = std::min(box.y0, y);
      box.x1 = std::max(box.x1, x);
      box.y1 = std::max(box.y1, y);
    }
  }
  if (box.x1 < 0) return std::nullopt;
  return box;
}

std::vector<int> chebyshev_distance_to_complement(const BinaryMask& mask) {
  const int w = mask.width;
  const int h = mask.height;
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<int> dist(static_cast<std::size_t>(w) * h);

  for (std::size_t i = 0; i < dist.size(); ++i)
    dist[i] = mask.bits[i] ? inf : 0;

  auto d = [&](int x, int y) -> int& {
    return dist[static_cast<std::size_t>(y) * w + x];
  };
  // The virtual frame border is complement, so edge pixels see distance 1.
  auto at = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0;
    return d(x, y);
  };

  // Chebyshev metric is exact with unit weights on the 8-neighborhood.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int best = d(x, y);
      best = std::min(best, at(x - 1, y) + 1);
      best = std::min(best, at(x - 1, y - 1) + 1);
      best = std::min(best, at(x, y - 1) + 1);
      best = std::min(best, at(x + 1, y - 1) + 1);
      d(x, y) = best;
    }
  }
  for (int y = h - 1; y >= 0; --y) {
    for (int x = w - 1; x >= 0; --x) {
      int best = d(x, y);
      best = std::min(best, at(x + 1, y) + 1);
      best = std::min(best, at(x + 1, y + 1) + 1);
      best = std::min(best, at(x, y + 1) + 1);
      best = std::min(best, at(x - 1, y + 1) + 1);
      d(x, y) = best;
    }
  }
  return dist;
}

int measured_band_width(const BinaryMask& band, const BinaryMask& region) {
  require(band.same_shape(region), "measured_band_width: dimensions differ");
  const std::vector<int> dist = chebyshev_distance_to_complement(region);
  int width = 0;
  for (std::size_t i = 0; i < band.bits.size(); ++i)
    if (band.bits[i]) width = std::max(width, dist[i]);
  return width;
}

}  // namespace dualfit
