#pragma once

#include <array>
#include <filesystem>
#include <variant>

#include "dualfit/types.hpp"

namespace dualfit {

/// Dense displacement field. Vectors are (u,v) pixel displacements at
/// this field's own resolution, stored row-major interleaved.
struct FlowField {
  int width = 0;
  int height = 0;
  std::vector<float> vectors;  // u,v per pixel

  FlowField() = default;
  FlowField(int w, int h);

  float u(int x, int y) const {
    return vectors[(static_cast<std::size_t>(y) * width + x) * 2];
  }
  float v(int x, int y) const {
    return vectors[(static_cast<std::size_t>(y) * width + x) * 2 + 1];
  }
  void set(int x, int y, float u_, float v_) {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 2;
    vectors[i] = u_;
    vectors[i + 1] = v_;
  }

  bool operator==(const FlowField& o) const = default;
};

/// Middlebury-convention flow file: magic "PIEH", little-endian int32
/// width and height, then h*w interleaved little-endian float32 (u,v).
FlowField read_flow(const std::filesystem::path& path);

void write_flow(const FlowField& flow, const std::filesystem::path& path);

// --- synthetic fields ------------------------------------------------

struct IdentityFlow {};

struct TranslateFlow {
  double dx = 0.0;
  double dy = 0.0;
};

/// Row-major 2x3 matrix [a b c; d e f]; the field samples the source at
/// A*p, i.e. flow(p) = A*p - p.
struct AffineFlow {
  std::array<double, 6> m{1, 0, 0, 0, 1, 0};
};

struct TpsControlPoint {
  double src_x = 0.0, src_y = 0.0;
  double dst_x = 0.0, dst_y = 0.0;
};

struct TpsFlow {
  std::vector<TpsControlPoint> points;  // >= 3, non-collinear
  double lambda = 0.0;
};

using SynthFlowSpec =
    std::variant<IdentityFlow, TranslateFlow, AffineFlow, TpsFlow>;

/// Builds the displacement field realizing the named transform under
/// backward warping. TPS interpolates src->dst control pairs with the
/// U(r) = r^2 log r^2 kernel; exact affine data reproduces the affine map.
FlowField synth_flow(const SynthFlowSpec& spec, int width, int height);

/// Parses the CLI/config spec string:
///   identity
///   translate:DX,DY
///   affine:A,B,C,D,E,F
///   tps:LAMBDA:SX,SY->DX,DY;SX,SY->DX,DY;...
SynthFlowSpec parse_synth_flow_spec(const std::string& text);

std::string synth_flow_spec_to_string(const SynthFlowSpec& spec);

}  // namespace dualfit
