#include "dualfit/flow.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace dualfit {

namespace {

constexpr char kFlowMagic[4] = {'P', 'I', 'E', 'H'};
constexpr int kMaxFlowDim = 1 << 16;

}  // namespace

FlowField::FlowField(int w, int h) : width(w), height(h) {
  require(w >= 1 && h >= 1, "flow dimensions must be at least 1x1");
  vectors.assign(static_cast<std::size_t>(w) * h * 2, 0.0f);
}

FlowField read_flow(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open flow file: " + path.string());

  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kFlowMagic, 4) != 0)
    throw IoError("bad flow magic (expected PIEH): " + path.string());

  std::int32_t w = 0, h = 0;
  in.read(reinterpret_cast<char*>(&w), 4);
  in.read(reinterpret_cast<char*>(&h), 4);
  if (!in) throw IoError("truncated flow header: " + path.string());
  if (w < 1 || h < 1 || w > kMaxFlowDim || h > kMaxFlowDim)
    throw IoError("implausible flow dimensions " + std::to_string(w) + "x" +
                  std::to_string(h) + ": " + path.string());

  FlowField flow(w, h);
  const std::streamsize payload =
      static_cast<std::streamsize>(flow.vectors.size() * sizeof(float));
  in.read(reinterpret_cast<char*>(flow.vectors.data()), payload);
  if (in.gcount() != payload)
    throw IoError("truncated flow payload: " + path.string());

  for (float c : flow.vectors)
    if (!std::isfinite(c))
      throw ValidationError("non-finite flow component in " + path.string());
  return flow;
}

void write_flow(const FlowField& flow, const std::filesystem::path& path) {
  require(flow.width >= 1 && flow.height >= 1, "cannot write an empty flow");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open flow file for writing: " + path.string());

  out.write(kFlowMagic, 4);
  const std::int32_t w = flow.width, h = flow.height;
  out.write(reinterpret_cast<const char*>(&w), 4);
  out.write(reinterpret_cast<const char*>(&h), 4);
  out.write(reinterpret_cast<const char*>(flow.vectors.data()),
            static_cast<std::streamsize>(flow.vectors.size() * sizeof(float)));
  if (!out) throw IoError("flow write failed: " + path.string());
}

namespace {

double tps_kernel(double r2) {
  // U(r) = r^2 log r^2, continuously extended with U(0) = 0.
  return r2 > 0.0 ? r2 * std::log(r2) : 0.0;
}

struct TpsSolution {
  std::vector<double> wx, wy;      // kernel weights per control point
  std::array<double, 3> ax, ay;    // affine part: a0 + a1*x + a2*y
};

TpsSolution solve_tps(const TpsFlow& spec) {
  const int n = static_cast<int>(spec.points.size());
  require(n >= 3, "TPS needs at least 3 control points");
  require(spec.lambda >= 0.0, "TPS regularization must be >= 0");
  for (const auto& p : spec.points)
    require(std::isfinite(p.src_x) && std::isfinite(p.src_y) &&
                std::isfinite(p.dst_x) && std::isfinite(p.dst_y),
            "TPS control points must be finite");

  Eigen::MatrixXd system(n + 3, n + 3);
  system.setZero();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double dx = spec.points[i].src_x - spec.points[j].src_x;
      const double dy = spec.points[i].src_y - spec.points[j].src_y;
      system(i, j) = tps_kernel(dx * dx + dy * dy);
    }
    system(i, i) += spec.lambda;
    system(i, n) = system(n, i) = 1.0;
    system(i, n + 1) = system(n + 1, i) = spec.points[i].src_x;
    system(i, n + 2) = system(n + 2, i) = spec.points[i].src_y;
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible())
    throw ValidationError(
        "TPS system is singular (collinear or duplicate control points)");

  Eigen::MatrixXd rhs(n + 3, 2);
  rhs.setZero();
  for (int i = 0; i < n; ++i) {
    rhs(i, 0) = spec.points[i].dst_x;
    rhs(i, 1) = spec.points[i].dst_y;
  }
  const Eigen::MatrixXd coeffs = lu.solve(rhs);

  TpsSolution sol;
  sol.wx.resize(n);
  sol.wy.resize(n);
  for (int i = 0; i < n; ++i) {
    sol.wx[i] = coeffs(i, 0);
    sol.wy[i] = coeffs(i, 1);
  }
  for (int k = 0; k < 3; ++k) {
    sol.ax[k] = coeffs(n + k, 0);
    sol.ay[k] = coeffs(n + k, 1);
  }
  return sol;
}

FlowField tps_field(const TpsFlow& spec, int width, int height) {
  const TpsSolution sol = solve_tps(spec);
  const int n = static_cast<int>(spec.points.size());

  FlowField flow(width, height);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double fx = sol.ax[0] + sol.ax[1] * x + sol.ax[2] * y;
      double fy = sol.ay[0] + sol.ay[1] * x + sol.ay[2] * y;
      for (int i = 0; i < n; ++i) {
        const double dx = x - spec.points[i].src_x;
        const double dy = y - spec.points[i].src_y;
        const double u = tps_kernel(dx * dx + dy * dy);
        fx += sol.wx[i] * u;
        fy += sol.wy[i] * u;
      }
      flow.set(x, y, static_cast<float>(fx - x), static_cast<float>(fy - y));
    }
  }
  return flow;
}

std::vector<double> parse_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad number '" + item + "' in flow spec");
    }
    if (used != item.size())
      throw ValidationError("bad number '" + item + "' in flow spec");
    out.push_back(v);
  }
  return out;
}

}  // namespace

FlowField synth_flow(const SynthFlowSpec& spec, int width, int height) {
  require(width >= 1 && height >= 1, "flow dimensions must be at least 1x1");
  if (std::holds_alternative<IdentityFlow>(spec)) {
    return FlowField(width, height);
  }
  if (const auto* t = std::get_if<TranslateFlow>(&spec)) {
    FlowField flow(width, height);
    const float u = static_cast<float>(t->dx);
    const float v = static_cast<float>(t->dy);
    for (std::size_t i = 0; i < flow.vectors.size(); i += 2) {
      flow.vectors[i] = u;
      flow.vectors[i + 1] = v;
    }
    return flow;
  }
  if (const auto* a = std::get_if<AffineFlow>(&spec)) {
    const auto& m = a->m;
    FlowField flow(width, height);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        flow.set(x, y,
                 static_cast<float>(m[0] * x + m[1] * y + m[2] - x),
                 static_cast<float>(m[3] * x + m[4] * y + m[5] - y));
    return flow;
  }
  return tps_field(std::get<TpsFlow>(spec), width, height);
}

SynthFlowSpec parse_synth_flow_spec(const std::string& text) {
  if (text == "identity") return IdentityFlow{};

  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? std::string() : text.substr(colon + 1);

  if (kind == "translate") {
    const auto nums = parse_numbers(rest, ',');
    if (nums.size() != 2)
      throw ValidationError("translate flow spec needs DX,DY: " + text);
    return TranslateFlow{nums[0], nums[1]};
  }
  if (kind == "affine") {
    const auto nums = parse_numbers(rest, ',');
    if (nums.size() != 6)
      throw ValidationError("affine flow spec needs 6 coefficients: " + text);
    AffineFlow a;
    std::copy(nums.begin(), nums.end(), a.m.begin());
    return a;
  }
  if (kind == "tps") {
    const auto second = rest.find(':');
    if (second == std::string::npos)
      throw ValidationError("tps flow spec needs LAMBDA:PAIRS: " + text);
    TpsFlow tps;
    const auto lam = parse_numbers(rest.substr(0, second), ',');
    if (lam.size() != 1)
      throw ValidationError("bad tps lambda in: " + text);
    tps.lambda = lam[0];

    std::stringstream pairs(rest.substr(second + 1));
    std::string pair;
    while (std::getline(pairs, pair, ';')) {
      const auto arrow = pair.find("->");
      if (arrow == std::string::npos)
        throw ValidationError("tps pair needs SX,SY->DX,DY: " + pair);
      const auto src = parse_numbers(pair.substr(0, arrow), ',');
      const auto dst = parse_numbers(pair.substr(arrow + 2), ',');
      if (src.size() != 2 || dst.size() != 2)
        throw ValidationError("tps pair needs SX,SY->DX,DY: " + pair);
      tps.points.push_back({src[0], src[1], dst[0], dst[1]});
    }
    if (tps.points.size() < 3)
      throw ValidationError("tps flow spec needs at least 3 control points");
    return tps;
  }
  throw ValidationError("unknown synthetic flow kind: " + text);
}

std::string synth_flow_spec_to_string(const SynthFlowSpec& spec) {
  std::ostringstream out;
  if (std::holds_alternative<IdentityFlow>(spec)) {
    out << "identity";
  } else if (const auto* t = std::get_if<TranslateFlow>(&spec)) {
    out << "translate:" << t->dx << "," << t->dy;
  } else if (const auto* a = std::get_if<AffineFlow>(&spec)) {
    out << "affine:";
    for (std::size_t i = 0; i < a->m.size(); ++i)
      out << (i ? "," : "") << a->m[i];
  } else {
    const auto& tps = std::get<TpsFlow>(spec);
    out << "tps:" << tps.lambda << ":";
    for (std::size_t i = 0; i < tps.points.size(); ++i) {
      const auto& p = tps.points[i];
      out << (i ? ";" : "") << p.src_x << "," << p.src_y << "->" << p.dst_x
          << "," << p.dst_y;
    }
  }
  return out.str();
}

}  // namespace dualfit
