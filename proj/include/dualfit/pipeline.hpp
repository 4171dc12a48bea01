#pragma once

#include <filesystem>
#include <map>
#include <optional>

#include "dualfit/inpaint.hpp"
#include "dualfit/morphology.hpp"
#include "dualfit/types.hpp"

#include <nlohmann/json.hpp>

namespace dualfit {

/// Full harness configuration. Values come from a JSON config file,
/// DUALFIT_* environment variables, then CLI flags, in rising precedence.
struct PipelineConfig {
  int flow_width = 384;
  int flow_height = 512;
  int output_width = 768;
  int output_height = 1024;

  BandSpec band;
  SolverSpec solver;
  double dgt_threshold = 0.1;

  struct Paths {
    std::string person;
    std::string parsing;
    std::string garment;
    std::string garment_parsing;
    std::vector<std::string> flows;  // left, right, torso .flo files
    std::string synth_flow;          // alternative to flow files
    std::string ground_truth;        // defaults to person when empty
    std::string densepose;           // optional pass-through
    std::string pose;                // optional; accepted but not consumed
    std::string warped;              // preprocess/inpaint stage inputs;
    std::string warped_alpha;        // default to files under output_dir
    std::string hole_mask;
    std::string preserved;
    std::string inpaint_mask;
    std::string output_dir = "out";
  } paths;

  std::vector<int> ablate_n_values = {2, 5, 10};
  std::string report_path;  // defaults under output_dir when empty

  void validate() const;
};

PipelineConfig load_config(const std::filesystem::path& path);

/// Applies DUALFIT_* environment overrides (between file and flags).
void apply_env_overrides(PipelineConfig& config);

nlohmann::json config_to_json(const PipelineConfig& config);

/// Parses "WxH" into a (width, height) pair.
std::pair<int, int> parse_resolution(const std::string& text);

/// Execution record written beside the stage outputs. Timings are the
/// only non-deterministic content.
struct RunManifest {
  nlohmann::json config_echo;
  std::map<std::string, double> timings_ms;
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
  nlohmann::json stages = nlohmann::json::object();

  nlohmann::json to_json() const;
  void save(const std::filesystem::path& path) const;
};

/// Warping stage: part flows in, assembled warped garment out. Writes
/// warped.png, warped_alpha.png, holes.png and the DGT decision.
RunManifest cmd_warp(const PipelineConfig& config);

/// Try-on preprocessing: writes preserved.png (the upper-body-removed
/// composite) and inpaint_mask.png, and records measured band widths.
RunManifest cmd_preprocess(const PipelineConfig& config);

/// Harmonic regeneration of the masked region; writes tryon.png.
/// Non-convergence is reported as a warning, not a failure.
RunManifest cmd_inpaint(const PipelineConfig& config);

/// Full two-stage pipeline; all intermediates are written.
RunManifest cmd_pipeline(const PipelineConfig& config);

/// Band-thickness sweep: one pipeline run per requested n, metrics
/// against the ground truth, and a table-shaped JSON + CSV report.
RunManifest cmd_ablate_band(const PipelineConfig& config,
                            const std::vector<int>& n_values);

/// Batch metric evaluation over directories of same-named PNGs.
RunManifest cmd_metrics(const PipelineConfig& config,
                        const std::filesystem::path& gt_dir,
                        const std::filesystem::path& out_dir,
                        const std::filesystem::path& report_path);

}  // namespace dualfit
