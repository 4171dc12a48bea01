#include "dualfit/inpaint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace dualfit {

namespace {

struct Cell {
  std::size_t idx = 0;                 // flat pixel index
  std::array<std::size_t, 4> nbr{};    // in-frame 4-neighbors
  int nbr_count = 0;
  int component = 0;
};

struct ComponentBounds {
  double lo = 0.0;
  double hi = 0.0;
  double mean = 0.0;
};

struct MaskGraph {
  std::vector<Cell> red;    // (x+y) even
  std::vector<Cell> black;  // (x+y) odd
  int component_count = 0;
};

MaskGraph build_mask_graph(const BinaryMask& mask) {
  const int w = mask.width;
  const int h = mask.height;
  const std::size_t n = mask.bits.size();

  std::vector<int> component(n, -1);
  int comp_count = 0;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (!mask.bits[start] || component[start] >= 0) continue;
    const int comp = comp_count++;
    stack.push_back(start);
    component[start] = comp;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      const int x = static_cast<int>(p % w);
      const int y = static_cast<int>(p / w);
      const std::array<std::pair<int, int>, 4> steps{
          {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}}};
      for (const auto& [nx, ny] : steps) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t q = static_cast<std::size_t>(ny) * w + nx;
        if (mask.bits[q] && component[q] < 0) {
          component[q] = comp;
          stack.push_back(q);
        }
      }
    }
  }

  MaskGraph graph;
  graph.component_count = comp_count;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      if (!mask.bits[p]) continue;
      Cell cell;
      cell.idx = p;
      cell.component = component[p];
      const std::array<std::pair<int, int>, 4> steps{
          {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}}};
      for (const auto& [nx, ny] : steps) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        cell.nbr[cell.nbr_count++] = static_cast<std::size_t>(ny) * w + nx;
      }
      ((x + y) % 2 == 0 ? graph.red : graph.black).push_back(cell);
    }
  }
  return graph;
}

// Dirichlet stats per component for one channel. A component without any
// unmasked in-frame neighbor has no boundary data; the system would be
// underdetermined, so it is rejected.
std::vector<ComponentBounds> boundary_bounds(const MaskGraph& graph,
                                             const BinaryMask& mask,
                                             const std::vector<double>& values) {
  struct Acc {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::vector<Acc> acc(graph.component_count);

  auto visit = [&](const Cell& cell) {
    for (int i = 0; i < cell.nbr_count; ++i) {
      const std::size_t q = cell.nbr[i];
      if (mask.bits[q]) continue;
      Acc& a = acc[cell.component];
      a.lo = std::min(a.lo, values[q]);
      a.hi = std::max(a.hi, values[q]);
      a.sum += values[q];
      a.count++;
    }
  };
  for (const Cell& c : graph.red) visit(c);
  for (const Cell& c : graph.black) visit(c);

  std::vector<ComponentBounds> bounds(graph.component_count);
  for (int c = 0; c < graph.component_count; ++c) {
    if (acc[c].count == 0)
      throw ValidationError(
          "harmonic_inpaint: mask component " + std::to_string(c) +
          " has no Dirichlet boundary (mask covers its whole neighborhood)");
    bounds[c].lo = acc[c].lo;
    bounds[c].hi = acc[c].hi;
    bounds[c].mean = acc[c].sum / acc[c].count;
  }
  return bounds;
}

double sweep_color(const std::vector<Cell>& cells, std::vector<double>& buf,
                   const std::vector<ComponentBounds>& bounds) {
  double max_delta = 0.0;
  const std::int64_t n = static_cast<std::int64_t>(cells.size());
#pragma omp parallel for schedule(static) reduction(max : max_delta)
  for (std::int64_t i = 0; i < n; ++i) {
    const Cell& cell = cells[i];
    double sum = 0.0;
    for (int k = 0; k < cell.nbr_count; ++k) sum += buf[cell.nbr[k]];
    double v = sum / cell.nbr_count;
    const ComponentBounds& b = bounds[cell.component];
    v = std::clamp(v, b.lo, b.hi);  // keep iterates inside the boundary hull
    const double delta = std::abs(v - buf[cell.idx]);
    max_delta = std::max(max_delta, delta);
    buf[cell.idx] = v;
  }
  return max_delta;
}

double equation_residual(const MaskGraph& graph, const std::vector<double>& buf) {
  double res = 0.0;
  auto visit = [&](const std::vector<Cell>& cells) {
    const std::int64_t n = static_cast<std::int64_t>(cells.size());
    double local = 0.0;
#pragma omp parallel for schedule(static) reduction(max : local)
    for (std::int64_t i = 0; i < n; ++i) {
      const Cell& cell = cells[i];
      double sum = 0.0;
      for (int k = 0; k < cell.nbr_count; ++k) sum += buf[cell.nbr[k]];
      local = std::max(local, std::abs(buf[cell.idx] - sum / cell.nbr_count));
    }
    res = std::max(res, local);
  };
  visit(graph.red);
  visit(graph.black);
  return res;
}

SolveStats solve_channel(const MaskGraph& graph, const BinaryMask& mask,
                         std::vector<double>& buf, const SolverSpec& spec) {
  const std::vector<ComponentBounds> bounds =
      boundary_bounds(graph, mask, buf);
  for (const Cell& c : graph.red) buf[c.idx] = bounds[c.component].mean;
  for (const Cell& c : graph.black) buf[c.idx] = bounds[c.component].mean;

  SolveStats stats;
  stats.converged = false;

  // A small last update does not mean the iterate is near the solution:
  // Gauss-Seidel contracts geometrically, so the remaining distance is
  // about update * rho/(1-rho). Track the observed decay ratio and stop
  // only once that projection is inside the tolerance as well.
  double prev_update = -1.0;
  std::array<double, 3> ratios{0.0, 0.0, 0.0};
  int sweep = 0;
  for (; sweep < spec.max_iterations; ++sweep) {
    const double u_red = sweep_color(graph.red, buf, bounds);
    const double u_black = sweep_color(graph.black, buf, bounds);
    const double update = std::max(u_red, u_black);

    if (update == 0.0) {
      stats.converged = true;
      ++sweep;
      break;
    }
    ratios[sweep % 3] = prev_update > 0.0 ? update / prev_update : 1.0;
    prev_update = update;
    const double rho =
        std::min(std::max({ratios[0], ratios[1], ratios[2]}), 0.9999);
    const double projected = update * rho / (1.0 - rho);
    if (update <= spec.tolerance && projected <= spec.tolerance &&
        equation_residual(graph, buf) <= spec.tolerance) {
      stats.converged = true;
      ++sweep;
      break;
    }
  }
  stats.iterations = sweep;
  stats.residual = equation_residual(graph, buf);
  return stats;
}

}  // namespace

std::pair<Image, SolveStats> harmonic_inpaint(const Image& image,
                                              const BinaryMask& mask,
                                              const SolverSpec& spec) {
  require(mask.width == image.width && mask.height == image.height,
          "harmonic_inpaint: mask dimensions differ");
  spec.validate();

  Image out = image;
  if (mask.empty()) return {out, SolveStats{}};
  require(mask.area() < mask.bits.size(),
          "harmonic_inpaint: mask covers the full frame (no boundary)");

  const MaskGraph graph = build_mask_graph(mask);

  SolveStats stats;
  std::vector<double> buf(static_cast<std::size_t>(image.width) * image.height);
  for (int c = 0; c < image.channels; ++c) {
    for (std::size_t p = 0; p < buf.size(); ++p)
      buf[p] = image.data[p * image.channels + c];
    const SolveStats ch = solve_channel(graph, mask, buf, spec);
    stats.residual = std::max(stats.residual, ch.residual);
    stats.iterations = std::max(stats.iterations, ch.iterations);
    stats.converged = stats.converged && ch.converged;

    auto writeback = [&](const std::vector<Cell>& cells) {
      for (const Cell& cell : cells)
        out.data[cell.idx * image.channels + c] =
            static_cast<float>(buf[cell.idx]);
    };
    writeback(graph.red);
    writeback(graph.black);
  }
  return {out, stats};
}

std::pair<Image, SolveStats> compose_tryon(const Image& preserved,
                                           const BinaryMask& mask,
                                           const SolverSpec& spec) {
  return harmonic_inpaint(preserved, mask, spec);
}

}  // namespace dualfit
