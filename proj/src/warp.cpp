#include "dualfit/warp.hpp"

#include <algorithm>
#include <cmath>

#include "dualfit/mask_ops.hpp"

namespace dualfit {

namespace {

// a + t*(b-a): exact for t=0 and for a==b, which keeps identity warps and
// constant-field upsampling bit-exact. Interpolation runs in double so
// float rounding stays below the oracle tolerances.
inline double lerp(double a, double b, double t) { return a + t * (b - a); }

struct BilinearTap {
  int x0, y0, x1, y1;
  double fx, fy;
  bool in_bounds;
};

inline BilinearTap make_tap(double px, double py, int w, int h) {
  BilinearTap tap{};
  if (!(px >= 0.0 && py >= 0.0 && px < w && py < h)) return tap;
  const double fx0 = std::floor(px);
  const double fy0 = std::floor(py);
  tap.x0 = static_cast<int>(fx0);
  tap.y0 = static_cast<int>(fy0);
  tap.fx = px - fx0;
  tap.fy = py - fy0;
  tap.x1 = tap.fx > 0.0 ? tap.x0 + 1 : tap.x0;
  tap.y1 = tap.fy > 0.0 ? tap.y0 + 1 : tap.y0;
  tap.in_bounds = tap.x1 < w && tap.y1 < h;
  return tap;
}

inline float sample(const Image& img, const BilinearTap& t, int c) {
  const double top = lerp(img.at(t.x0, t.y0, c), img.at(t.x1, t.y0, c), t.fx);
  const double bot = lerp(img.at(t.x0, t.y1, c), img.at(t.x1, t.y1, c), t.fx);
  return static_cast<float>(lerp(top, bot, t.fy));
}

inline double sample_mask(const BinaryMask& m, const BilinearTap& t) {
  const auto v = [&](int x, int y) -> double { return m.get(x, y) ? 1.0 : 0.0; };
  const double top = lerp(v(t.x0, t.y0), v(t.x1, t.y0), t.fx);
  const double bot = lerp(v(t.x0, t.y1), v(t.x1, t.y1), t.fx);
  return lerp(top, bot, t.fy);
}

}  // namespace

FlowField upsample_flow(const FlowField& flow, int target_w, int target_h) {
  require(target_w >= flow.width && target_h >= flow.height,
          "upsample_flow: downscaling requested");

  const double sx = static_cast<double>(flow.width) / target_w;
  const double sy = static_cast<double>(flow.height) / target_h;
  const double scale_u = static_cast<double>(target_w) / flow.width;
  const double scale_v = static_cast<double>(target_h) / flow.height;

  FlowField out(target_w, target_h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < target_h; ++y) {
    const double src_y =
        std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(flow.height - 1));
    const int y0 = static_cast<int>(src_y);
    const int y1 = std::min(y0 + 1, flow.height - 1);
    const double fy = src_y - y0;
    for (int x = 0; x < target_w; ++x) {
      const double src_x =
          std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(flow.width - 1));
      const int x0 = static_cast<int>(src_x);
      const int x1 = std::min(x0 + 1, flow.width - 1);
      const double fx = src_x - x0;

      const double u = lerp(lerp(flow.u(x0, y0), flow.u(x1, y0), fx),
                            lerp(flow.u(x0, y1), flow.u(x1, y1), fx), fy);
      const double v = lerp(lerp(flow.v(x0, y0), flow.v(x1, y0), fx),
                            lerp(flow.v(x0, y1), flow.v(x1, y1), fx), fy);
      out.set(x, y, static_cast<float>(u * scale_u),
              static_cast<float>(v * scale_v));
    }
  }
  return out;
}

WarpedPart apply_flow(const Image& source, const BinaryMask& source_alpha,
                      const FlowField& flow, Label part_id) {
  require(source_alpha.width == source.width &&
              source_alpha.height == source.height,
          "apply_flow: alpha dimensions must match the source");
  for (float c : flow.vectors)
    if (!std::isfinite(c))
      throw ValidationError("apply_flow: non-finite flow component");

  const int out_w = flow.width;
  const int out_h = flow.height;
  // Flow positions live in output coordinates; rescale into the source
  // grid when their resolutions differ.
  const bool scaled = source.width != out_w || source.height != out_h;
  const double rx = static_cast<double>(source.width) / out_w;
  const double ry = static_cast<double>(source.height) / out_h;

  WarpedPart part;
  part.part_id = part_id;
  part.image = Image(out_w, out_h, source.channels, 0.0f);
  part.coverage = BinaryMask(out_w, out_h);

#pragma omp parallel for schedule(static)
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double px = x + static_cast<double>(flow.u(x, y));
      double py = y + static_cast<double>(flow.v(x, y));
      if (scaled) {
        px *= rx;
        py *= ry;
      }
      const BilinearTap tap = make_tap(px, py, source.width, source.height);
      if (!tap.in_bounds) continue;
      if (sample_mask(source_alpha, tap) < 0.5) continue;

      part.coverage.set(x, y, true);
      for (int c = 0; c < source.channels; ++c)
        part.image.at(x, y, c) = sample(source, tap, c);
    }
  }
  return part;
}

AssembledGarment assemble_parts(const std::array<WarpedPart, 3>& parts,
                                const std::array<BinaryMask, 3>& global_parsing) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    require(parts[i].part_id == kGarmentParts[i],
            "assemble_parts: part " + std::to_string(i) + " must be " +
                label_name(kGarmentParts[i]));
    require(parts[i].image.same_shape(parts[0].image),
            "assemble_parts: part image dimensions differ");
    require(global_parsing[i].width == parts[0].image.width &&
                global_parsing[i].height == parts[0].image.height,
            "assemble_parts: global parsing dimensions differ");
  }
  for (std::size_t i = 0; i < global_parsing.size(); ++i)
    for (std::size_t j = i + 1; j < global_parsing.size(); ++j)
      require(masks_disjoint(global_parsing[i], global_parsing[j]),
              "assemble_parts: global parsing masks overlap");

  const int w = parts[0].image.width;
  const int h = parts[0].image.height;
  const int channels = parts[0].image.channels;

  AssembledGarment out;
  out.image = Image(w, h, channels, 0.0f);
  out.alpha = BinaryMask(w, h);
  out.holes = BinaryMask(w, h);

#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (!global_parsing[k].get(x, y)) continue;
        if (parts[k].coverage.get(x, y)) {
          out.alpha.set(x, y, true);
          for (int c = 0; c < channels; ++c)
            out.image.at(x, y, c) = parts[k].image.at(x, y, c);
        } else {
          out.holes.set(x, y, true);
        }
        break;  // masks are disjoint; at most one part claims the pixel
      }
    }
  }
  return out;
}

WearingStyle dgt_classify(const BinaryMask& flat_torso,
                          const BinaryMask& warped_torso, double threshold) {
  const auto flat_box = mask_bbox(flat_torso);
  const auto warped_box = mask_bbox(warped_torso);
  if (!flat_box) throw ValidationError("dgt_classify: flat torso mask is empty");
  if (!warped_box)
    throw ValidationError("dgt_classify: warped torso mask is empty");

  WearingStyle result;
  result.ratio_flat =
      static_cast<double>(flat_box->height()) / flat_box->width();
  result.ratio_warped =
      static_cast<double>(warped_box->height()) / warped_box->width();
  result.disparity =
      std::abs(result.ratio_warped - result.ratio_flat) / result.ratio_flat;
  result.style = result.ratio_warped < result.ratio_flat * (1.0 - threshold)
                     ? WearingStyle::Style::TuckedIn
                     : WearingStyle::Style::TuckedOut;
  return result;
}

BinaryMask truncation_mask(const WearingStyle& style,
                           const BinaryMask& preserved_region) {
  if (style.style == WearingStyle::Style::TuckedIn) return preserved_region;
  return BinaryMask(preserved_region.width, preserved_region.height);
}

}  // namespace dualfit
