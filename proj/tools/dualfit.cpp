#include <CLI11.hpp>

#include <iostream>

#include "dualfit/pipeline.hpp"

namespace {

using dualfit::PipelineConfig;

// Flag values land here; only flags the user actually passed override the
// config file and environment (flags > env > file).
struct FlagValues {
  std::string config_file;
  int band_n = 0;
  int kernel = 0;
  double dgt_threshold = 0.0;
  double inpaint_tol = 0.0;
  int inpaint_max_iters = 0;
  std::string flow_res;
  std::string out_res;
  std::string synth_flow;
  std::string report;
  std::string person, parsing, garment, garment_parsing, gt, densepose, pose;
  std::string warped, warped_alpha, hole_mask, preserved, inpaint_mask;
  std::vector<std::string> flows;
  std::string output_dir;
};

void add_common_flags(CLI::App* cmd, FlagValues& flags) {
  cmd->add_option("--config", flags.config_file, "JSON pipeline config");
  cmd->add_option("--band-n", flags.band_n, "narrow-band erosion iterations");
  cmd->add_option("--kernel", flags.kernel, "erosion kernel size (odd)");
  cmd->add_option("--dgt-threshold", flags.dgt_threshold,
                  "wearing-style ratio disparity threshold");
  cmd->add_option("--inpaint-tol", flags.inpaint_tol, "solver tolerance");
  cmd->add_option("--inpaint-max-iters", flags.inpaint_max_iters,
                  "solver sweep limit");
  cmd->add_option("--flow-res", flags.flow_res, "flow resolution WxH");
  cmd->add_option("--out-res", flags.out_res, "output resolution WxH");
  cmd->add_option("--synth-flow", flags.synth_flow,
                  "synthetic flow spec (identity | translate:.. | affine:.. | tps:..)");
  cmd->add_option("--report", flags.report, "report file path");
  cmd->add_option("--person", flags.person, "person image PNG");
  cmd->add_option("--parsing", flags.parsing, "person parsing map PNG");
  cmd->add_option("--garment", flags.garment, "flat garment PNG");
  cmd->add_option("--garment-parsing", flags.garment_parsing,
                  "garment parsing map PNG");
  cmd->add_option("--flows", flags.flows,
                  "three part flow files (left right torso)")
      ->expected(3);
  cmd->add_option("--gt", flags.gt, "ground-truth image PNG");
  cmd->add_option("--densepose", flags.densepose, "densepose PNG (pass-through)");
  cmd->add_option("--pose", flags.pose, "pose heatmap PNG (pass-through)");
  cmd->add_option("--warped", flags.warped, "warped garment PNG");
  cmd->add_option("--warped-alpha", flags.warped_alpha, "warped alpha PNG");
  cmd->add_option("--hole-mask", flags.hole_mask, "assembly hole mask PNG");
  cmd->add_option("--preserved", flags.preserved, "preserved-region PNG");
  cmd->add_option("--inpaint-mask", flags.inpaint_mask, "inpaint mask PNG");
  cmd->add_option("--out", flags.output_dir, "output directory");
}

PipelineConfig resolve_config(const CLI::App* cmd, const FlagValues& flags) {
  PipelineConfig config;
  if (!flags.config_file.empty()) config = dualfit::load_config(flags.config_file);
  dualfit::apply_env_overrides(config);

  const auto given = [&](const char* name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--band-n")) config.band.iterations = flags.band_n;
  if (given("--kernel")) config.band.kernel_size = flags.kernel;
  if (given("--dgt-threshold")) config.dgt_threshold = flags.dgt_threshold;
  if (given("--inpaint-tol")) config.solver.tolerance = flags.inpaint_tol;
  if (given("--inpaint-max-iters"))
    config.solver.max_iterations = flags.inpaint_max_iters;
  if (given("--flow-res")) {
    const auto [w, h] = dualfit::parse_resolution(flags.flow_res);
    config.flow_width = w;
    config.flow_height = h;
  }
  if (given("--out-res")) {
    const auto [w, h] = dualfit::parse_resolution(flags.out_res);
    config.output_width = w;
    config.output_height = h;
  }
  if (given("--synth-flow")) config.paths.synth_flow = flags.synth_flow;
  if (given("--report")) config.report_path = flags.report;
  if (given("--person")) config.paths.person = flags.person;
  if (given("--parsing")) config.paths.parsing = flags.parsing;
  if (given("--garment")) config.paths.garment = flags.garment;
  if (given("--garment-parsing"))
    config.paths.garment_parsing = flags.garment_parsing;
  if (given("--flows")) config.paths.flows = flags.flows;
  if (given("--gt")) config.paths.ground_truth = flags.gt;
  if (given("--densepose")) config.paths.densepose = flags.densepose;
  if (given("--pose")) config.paths.pose = flags.pose;
  if (given("--warped")) config.paths.warped = flags.warped;
  if (given("--warped-alpha")) config.paths.warped_alpha = flags.warped_alpha;
  if (given("--hole-mask")) config.paths.hole_mask = flags.hole_mask;
  if (given("--preserved")) config.paths.preserved = flags.preserved;
  if (given("--inpaint-mask")) config.paths.inpaint_mask = flags.inpaint_mask;
  if (given("--out")) config.paths.output_dir = flags.output_dir;
  return config;
}

void report_run(const dualfit::RunManifest& manifest) {
  for (const auto& warning : manifest.warnings)
    std::cerr << "warning: " << warning << "\n";
  for (const auto& output : manifest.outputs)
    std::cout << "wrote " << output << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flow-warp virtual try-on harness"};
  app.require_subcommand(1);

  FlagValues flags;
  CLI::App* warp = app.add_subcommand("warp", "warp and assemble the garment");
  CLI::App* preprocess = app.add_subcommand(
      "preprocess", "build the preserved input and inpainting mask");
  CLI::App* inpaint =
      app.add_subcommand("inpaint", "regenerate the masked region");
  CLI::App* pipeline =
      app.add_subcommand("pipeline", "run warp, preprocess, and inpaint");
  CLI::App* metrics =
      app.add_subcommand("metrics", "evaluate output images against ground truth");
  CLI::App* ablate = app.add_subcommand(
      "ablate-band", "sweep the narrow-band thickness and report metrics");

  for (CLI::App* cmd : {warp, preprocess, inpaint, pipeline, ablate})
    add_common_flags(cmd, flags);

  std::vector<int> n_values;
  ablate->add_option("--n-values", n_values, "band iteration counts to sweep");

  std::string metrics_gt, metrics_out, metrics_report = "metrics_report.json";
  metrics->add_option("--gt", metrics_gt, "ground-truth directory")->required();
  metrics->add_option("--out", metrics_out, "output image directory")->required();
  metrics->add_option("--report", metrics_report, "report file");
  metrics->add_option("--config", flags.config_file, "JSON pipeline config");
  metrics->add_option("--band-n", flags.band_n, "config echo: band iterations");
  metrics->add_option("--kernel", flags.kernel, "config echo: kernel size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (warp->parsed()) {
      report_run(dualfit::cmd_warp(resolve_config(warp, flags)));
    } else if (preprocess->parsed()) {
      report_run(dualfit::cmd_preprocess(resolve_config(preprocess, flags)));
    } else if (inpaint->parsed()) {
      report_run(dualfit::cmd_inpaint(resolve_config(inpaint, flags)));
    } else if (pipeline->parsed()) {
      report_run(dualfit::cmd_pipeline(resolve_config(pipeline, flags)));
    } else if (ablate->parsed()) {
      report_run(
          dualfit::cmd_ablate_band(resolve_config(ablate, flags), n_values));
    } else if (metrics->parsed()) {
      report_run(dualfit::cmd_metrics(resolve_config(metrics, flags),
                                      metrics_gt, metrics_out, metrics_report));
    }
  } catch (const dualfit::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dualfit::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
