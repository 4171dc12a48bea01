#pragma once

#include <optional>

#include "dualfit/inpaint.hpp"
#include "dualfit/morphology.hpp"
#include "dualfit/types.hpp"

#include <nlohmann/json_fwd.hpp>

namespace dualfit {

/// Mean squared sample difference on the unit interval.
double mse(const Image& a, const Image& b);

/// Mean absolute sample difference.
double l1(const Image& a, const Image& b);

/// Peak signal-to-noise ratio with peak 1.0. Identical inputs have no
/// finite value; that case is carried as a flag instead of an inf float.
struct PsnrValue {
  bool infinite = false;
  double db = 0.0;
};

PsnrValue psnr(const Image& a, const Image& b);

/// Mean local SSIM over an 11x11 Gaussian window (sigma 1.5), K1=0.01,
/// K2=0.03, windows fully inside the frame, channels averaged.
double ssim(const Image& a, const Image& b);

struct PairMetrics {
  std::string id;
  double mse = 0.0;
  PsnrValue psnr;
  double ssim = 0.0;
  double l1 = 0.0;
};

struct MetricAggregate {
  double mse = 0.0;
  PsnrValue psnr;  // infinite when no pair had a finite PSNR
  double ssim = 0.0;
  double l1 = 0.0;
};

struct MetricReport {
  std::vector<PairMetrics> per_pair;             // sorted by id
  std::optional<MetricAggregate> aggregate;      // absent for an empty run
  BandSpec band;
  SolverSpec solver;
};

struct MetricPairInput {
  std::string id;
  const Image* ground_truth = nullptr;
  const Image* output = nullptr;
};

/// Per-pair metrics plus arithmetic-mean aggregates, ordered by id.
/// Infinite PSNR pairs are flagged and excluded from the PSNR mean.
MetricReport evaluate_pairs(const std::vector<MetricPairInput>& pairs,
                            const BandSpec& band, const SolverSpec& solver);

nlohmann::json report_to_json(const MetricReport& report);

}  // namespace dualfit
