#pragma once

#include "dualfit/types.hpp"

namespace dualfit {

/// Gauss-Seidel settings for the harmonic fill. `tolerance` bounds both
/// the final per-pixel Laplace residual and the estimated distance to
/// the exact discrete solution, in unit-interval units.
struct SolverSpec {
  double tolerance = 1e-5;
  int max_iterations = 10000;

  void validate() const {
    require(tolerance > 0.0, "solver tolerance must be > 0");
    require(max_iterations >= 1, "solver max_iterations must be >= 1");
  }
};

struct SolveStats {
  double residual = 0.0;  // max |pixel - mean(in-frame neighbors)| at exit
  int iterations = 0;     // red+black sweeps
  bool converged = true;
};

/// Fills the masked pixels with the solution of the discrete Laplace
/// equation under Dirichlet data from the surrounding unmasked pixels,
/// per channel. Unmasked pixels are returned bit-identical; filled values
/// stay inside the min/max of their component's boundary. Checkerboard
/// Gauss-Seidel, parallel within each color, deterministic.
///
/// Fails if the mask covers the whole frame or a mask component has no
/// unmasked 4-neighbor (no boundary data). Hitting max_iterations is not
/// an error: the best iterate is returned with converged=false.
std::pair<Image, SolveStats> harmonic_inpaint(const Image& image,
                                              const BinaryMask& mask,
                                              const SolverSpec& spec);

/// Try-on composition: the preserved input with the inpaint-mask region
/// regenerated harmonically. Pixels outside the mask pass through
/// bit-exactly.
std::pair<Image, SolveStats> compose_tryon(const Image& preserved,
                                           const BinaryMask& mask,
                                           const SolverSpec& spec);

}  // namespace dualfit
