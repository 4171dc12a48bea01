#include "dualfit/reference.hpp"

#include <cmath>

namespace dualfit::ref {

namespace {

bool mask_at(const BinaryMask& m, int x, int y) {
  if (x < 0 || y < 0 || x >= m.width || y >= m.height) return false;
  return m.get(x, y);
}

}  // namespace

BinaryMask erode(const BinaryMask& mask, const BandSpec& spec) {
  spec.validate();
  const int r = (spec.kernel_size - 1) / 2;
  BinaryMask cur = mask;
  for (int it = 0; it < spec.iterations; ++it) {
    BinaryMask next(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y) {
      for (int x = 0; x < mask.width; ++x) {
        bool v = true;
        for (int j = -r; j <= r && v; ++j)
          for (int i = -r; i <= r && v; ++i) v = mask_at(cur, x + i, y + j);
        next.set(x, y, v);
      }
    }
    cur = next;
  }
  return cur;
}

BinaryMask narrow_band(const BinaryMask& mask, const BandSpec& spec) {
  const BinaryMask eroded = ref::erode(mask, spec);
  BinaryMask band(mask.width, mask.height);
  for (std::size_t i = 0; i < mask.bits.size(); ++i)
    band.bits[i] = mask.bits[i] && !eroded.bits[i] ? 1 : 0;
  return band;
}

FlowField upsample_flow(const FlowField& flow, int target_w, int target_h) {
  require(target_w >= flow.width && target_h >= flow.height,
          "ref::upsample_flow: downscaling requested");
  FlowField out(target_w, target_h);
  const double scale_u = static_cast<double>(target_w) / flow.width;
  const double scale_v = static_cast<double>(target_h) / flow.height;
  for (int y = 0; y < target_h; ++y) {
    for (int x = 0; x < target_w; ++x) {
      double sx = (x + 0.5) * flow.width / target_w - 0.5;
      double sy = (y + 0.5) * flow.height / target_h - 0.5;
      sx = std::min(std::max(sx, 0.0), static_cast<double>(flow.width - 1));
      sy = std::min(std::max(sy, 0.0), static_cast<double>(flow.height - 1));
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const int x1 = std::min(x0 + 1, flow.width - 1);
      const int y1 = std::min(y0 + 1, flow.height - 1);
      const double fx = sx - x0;
      const double fy = sy - y0;
      const double w00 = (1.0 - fx) * (1.0 - fy);
      const double w10 = fx * (1.0 - fy);
      const double w01 = (1.0 - fx) * fy;
      const double w11 = fx * fy;
      const double u = w00 * flow.u(x0, y0) + w10 * flow.u(x1, y0) +
                       w01 * flow.u(x0, y1) + w11 * flow.u(x1, y1);
      const double v = w00 * flow.v(x0, y0) + w10 * flow.v(x1, y0) +
                       w01 * flow.v(x0, y1) + w11 * flow.v(x1, y1);
      out.set(x, y, static_cast<float>(u * scale_u),
              static_cast<float>(v * scale_v));
    }
  }
  return out;
}

WarpedPart apply_flow(const Image& source, const BinaryMask& source_alpha,
                      const FlowField& flow, Label part_id) {
  WarpedPart part;
  part.part_id = part_id;
  part.image = Image(flow.width, flow.height, source.channels, 0.0f);
  part.coverage = BinaryMask(flow.width, flow.height);

  const double rx = static_cast<double>(source.width) / flow.width;
  const double ry = static_cast<double>(source.height) / flow.height;
  const bool scaled = source.width != flow.width || source.height != flow.height;

  for (int y = 0; y < flow.height; ++y) {
    for (int x = 0; x < flow.width; ++x) {
      double px = x + static_cast<double>(flow.u(x, y));
      double py = y + static_cast<double>(flow.v(x, y));
      if (scaled) {
        px *= rx;
        py *= ry;
      }
      if (!(px >= 0.0 && py >= 0.0 && px < source.width && py < source.height))
        continue;
      const int x0 = static_cast<int>(std::floor(px));
      const int y0 = static_cast<int>(std::floor(py));
      const double fx = px - x0;
      const double fy = py - y0;
      const int x1 = fx > 0.0 ? x0 + 1 : x0;
      const int y1 = fy > 0.0 ? y0 + 1 : y0;
      if (x1 >= source.width || y1 >= source.height) continue;

      const double w00 = (1.0 - fx) * (1.0 - fy);
      const double w10 = fx * (1.0 - fy);
      const double w01 = (1.0 - fx) * fy;
      const double w11 = fx * fy;
      const auto alpha = [&](int ax, int ay) {
        return source_alpha.get(ax, ay) ? 1.0 : 0.0;
      };
      const double a = w00 * alpha(x0, y0) + w10 * alpha(x1, y0) +
                       w01 * alpha(x0, y1) + w11 * alpha(x1, y1);
      if (a < 0.5) continue;

      part.coverage.set(x, y, true);
      for (int c = 0; c < source.channels; ++c) {
        const double v =
            w00 * source.at(x0, y0, c) + w10 * source.at(x1, y0, c) +
            w01 * source.at(x0, y1, c) + w11 * source.at(x1, y1, c);
        part.image.at(x, y, c) = static_cast<float>(v);
      }
    }
  }
  return part;
}

AssembledGarment assemble_parts(const std::array<WarpedPart, 3>& parts,
                                const std::array<BinaryMask, 3>& global_parsing) {
  const int w = parts[0].image.width;
  const int h = parts[0].image.height;
  const int channels = parts[0].image.channels;

  AssembledGarment out;
  out.image = Image(w, h, channels, 0.0f);
  out.alpha = BinaryMask(w, h);
  out.holes = BinaryMask(w, h);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int assigned = -1;
      for (int k = 0; k < 3; ++k) {
        if (global_parsing[k].get(x, y)) {
          assigned = k;
          break;
        }
      }
      if (assigned < 0) continue;
      if (parts[assigned].coverage.get(x, y)) {
        out.alpha.set(x, y, true);
        for (int c = 0; c < channels; ++c)
          out.image.at(x, y, c) = parts[assigned].image.at(x, y, c);
      } else {
        out.holes.set(x, y, true);
      }
    }
  }
  return out;
}

WarpedPart shift(const Image& source, const BinaryMask& source_alpha, int dx,
                 int dy, Label part_id) {
  WarpedPart part;
  part.part_id = part_id;
  part.image = Image(source.width, source.height, source.channels, 0.0f);
  part.coverage = BinaryMask(source.width, source.height);
  for (int y = 0; y < source.height; ++y) {
    for (int x = 0; x < source.width; ++x) {
      const int sx = x + dx;
      const int sy = y + dy;
      if (!mask_at(source_alpha, sx, sy)) continue;
      part.coverage.set(x, y, true);
      for (int c = 0; c < source.channels; ++c)
        part.image.at(x, y, c) = source.at(sx, sy, c);
    }
  }
  return part;
}

double mse(const Image& a, const Image& b) {
  require(a.same_shape(b), "ref::mse: image shapes differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = static_cast<double>(a.data[i]) - b.data[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.data.size());
}

double l1(const Image& a, const Image& b) {
  require(a.same_shape(b), "ref::l1: image shapes differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    sum += std::abs(static_cast<double>(a.data[i]) - b.data[i]);
  return sum / static_cast<double>(a.data.size());
}

double ssim(const Image& a, const Image& b) {
  require(a.same_shape(b), "ref::ssim: image shapes differ");
  require(a.width >= 11 && a.height >= 11, "ref::ssim: image too small");

  constexpr int win = 11;
  constexpr double sigma = 1.5;
  constexpr double c1 = 0.01 * 0.01;
  constexpr double c2 = 0.03 * 0.03;

  double weights[win * win];
  double wsum = 0.0;
  for (int j = 0; j < win; ++j)
    for (int i = 0; i < win; ++i) {
      const double di = i - win / 2;
      const double dj = j - win / 2;
      weights[j * win + i] = std::exp(-(di * di + dj * dj) / (2 * sigma * sigma));
      wsum += weights[j * win + i];
    }
  for (double& w : weights) w /= wsum;

  double total = 0.0;
  std::size_t windows = 0;
  for (int c = 0; c < a.channels; ++c) {
    for (int y0 = 0; y0 + win <= a.height; ++y0) {
      for (int x0 = 0; x0 + win <= a.width; ++x0) {
        double mu_a = 0.0, mu_b = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
        for (int j = 0; j < win; ++j)
          for (int i = 0; i < win; ++i) {
            const double w = weights[j * win + i];
            const double va = a.at(x0 + i, y0 + j, c);
            const double vb = b.at(x0 + i, y0 + j, c);
            mu_a += w * va;
            mu_b += w * vb;
            saa += w * va * va;
            sbb += w * vb * vb;
            sab += w * va * vb;
          }
        const double var_a = saa - mu_a * mu_a;
        const double var_b = sbb - mu_b * mu_b;
        const double cov = sab - mu_a * mu_b;
        total += ((2 * mu_a * mu_b + c1) * (2 * cov + c2)) /
                 ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
        windows++;
      }
    }
  }
  return total / static_cast<double>(windows);
}

}  // namespace dualfit::ref
