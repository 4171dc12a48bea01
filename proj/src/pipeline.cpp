#include "dualfit/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>

#include "dualfit/mask_ops.hpp"
#include "dualfit/metrics.hpp"
#include "dualfit/png_io.hpp"
#include "dualfit/preprocess.hpp"
#include "dualfit/warp.hpp"

namespace dualfit {

namespace fs = std::filesystem;

namespace {

class StageTimer {
 public:
  StageTimer(RunManifest& manifest, std::string name)
      : manifest_(manifest), name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const auto end = std::chrono::steady_clock::now();
    manifest_.timings_ms[name_] =
        std::chrono::duration<double, std::milli>(end - start_).count();
  }

 private:
  RunManifest& manifest_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

void record_output(RunManifest& manifest, const fs::path& path) {
  manifest.outputs.push_back(path.string());
}

fs::path out_path(const PipelineConfig& config, const char* name) {
  return fs::path(config.paths.output_dir) / name;
}

fs::path stage_input(const std::string& explicit_path,
                     const PipelineConfig& config, const char* fallback) {
  if (!explicit_path.empty()) return explicit_path;
  return out_path(config, fallback);
}

double json_number(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<double>();
}

}  // namespace

void PipelineConfig::validate() const {
  require(flow_width >= 1 && flow_height >= 1, "flow resolution must be >= 1");
  require(output_width >= flow_width && output_height >= flow_height,
          "output resolution must be >= flow resolution");
  require(dgt_threshold >= 0.0, "dgt threshold must be >= 0");
  band.validate();
  solver.validate();
  require(!paths.output_dir.empty(), "output_dir must not be empty");
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad config JSON in " + path.string() + ": " + e.what());
  }

  PipelineConfig config;
  if (j.contains("flow_resolution")) {
    config.flow_width = j["flow_resolution"].at(0).get<int>();
    config.flow_height = j["flow_resolution"].at(1).get<int>();
  }
  if (j.contains("output_resolution")) {
    config.output_width = j["output_resolution"].at(0).get<int>();
    config.output_height = j["output_resolution"].at(1).get<int>();
  }
  if (j.contains("band")) {
    config.band.kernel_size =
        static_cast<int>(json_number(j["band"], "kernel", config.band.kernel_size));
    config.band.iterations = static_cast<int>(
        json_number(j["band"], "iterations", config.band.iterations));
  }
  if (j.contains("solver")) {
    config.solver.tolerance =
        json_number(j["solver"], "tolerance", config.solver.tolerance);
    config.solver.max_iterations = static_cast<int>(json_number(
        j["solver"], "max_iterations", config.solver.max_iterations));
  }
  config.dgt_threshold = json_number(j, "dgt_threshold", config.dgt_threshold);

  if (j.contains("paths")) {
    const auto& p = j["paths"];
    auto str = [&](const char* key) {
      return p.contains(key) ? p.at(key).get<std::string>() : std::string();
    };
    config.paths.person = str("person");
    config.paths.parsing = str("parsing");
    config.paths.garment = str("garment");
    config.paths.garment_parsing = str("garment_parsing");
    config.paths.synth_flow = str("synth_flow");
    config.paths.ground_truth = str("ground_truth");
    config.paths.densepose = str("densepose");
    config.paths.pose = str("pose");
    config.paths.warped = str("warped");
    config.paths.warped_alpha = str("warped_alpha");
    config.paths.hole_mask = str("hole_mask");
    config.paths.preserved = str("preserved");
    config.paths.inpaint_mask = str("inpaint_mask");
    if (p.contains("output_dir"))
      config.paths.output_dir = p.at("output_dir").get<std::string>();
    if (p.contains("flows"))
      config.paths.flows = p.at("flows").get<std::vector<std::string>>();
  }
  if (j.contains("ablate") && j["ablate"].contains("n_values"))
    config.ablate_n_values = j["ablate"]["n_values"].get<std::vector<int>>();
  if (j.contains("report")) config.report_path = j["report"].get<std::string>();
  return config;
}

void apply_env_overrides(PipelineConfig& config) {
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v) return std::nullopt;
    return std::string(v);
  };
  if (auto v = env("DUALFIT_BAND_N")) config.band.iterations = std::stoi(*v);
  if (auto v = env("DUALFIT_KERNEL")) config.band.kernel_size = std::stoi(*v);
  if (auto v = env("DUALFIT_DGT_THRESHOLD"))
    config.dgt_threshold = std::stod(*v);
  if (auto v = env("DUALFIT_INPAINT_TOL")) config.solver.tolerance = std::stod(*v);
  if (auto v = env("DUALFIT_INPAINT_MAX_ITERS"))
    config.solver.max_iterations = std::stoi(*v);
  if (auto v = env("DUALFIT_FLOW_RES")) {
    const auto [w, h] = parse_resolution(*v);
    config.flow_width = w;
    config.flow_height = h;
  }
  if (auto v = env("DUALFIT_OUT_RES")) {
    const auto [w, h] = parse_resolution(*v);
    config.output_width = w;
    config.output_height = h;
  }
  if (auto v = env("DUALFIT_SYNTH_FLOW")) config.paths.synth_flow = *v;
  if (auto v = env("DUALFIT_REPORT")) config.report_path = *v;
}

nlohmann::json config_to_json(const PipelineConfig& config) {
  return {
      {"flow_resolution", {config.flow_width, config.flow_height}},
      {"output_resolution", {config.output_width, config.output_height}},
      {"band",
       {{"kernel", config.band.kernel_size},
        {"iterations", config.band.iterations}}},
      {"solver",
       {{"tolerance", config.solver.tolerance},
        {"max_iterations", config.solver.max_iterations}}},
      {"dgt_threshold", config.dgt_threshold},
      {"paths",
       {{"person", config.paths.person},
        {"parsing", config.paths.parsing},
        {"garment", config.paths.garment},
        {"garment_parsing", config.paths.garment_parsing},
        {"flows", config.paths.flows},
        {"synth_flow", config.paths.synth_flow},
        {"ground_truth", config.paths.ground_truth},
        {"densepose", config.paths.densepose},
        {"pose", config.paths.pose},
        {"output_dir", config.paths.output_dir}}},
      {"ablate", {{"n_values", config.ablate_n_values}}},
  };
}

std::pair<int, int> parse_resolution(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos)
    throw ValidationError("resolution must be WxH, got: " + text);
  try {
    const int w = std::stoi(text.substr(0, x));
    const int h = std::stoi(text.substr(x + 1));
    require(w >= 1 && h >= 1, "resolution must be positive: " + text);
    return {w, h};
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError("resolution must be WxH, got: " + text);
  }
}

nlohmann::json RunManifest::to_json() const {
  return {{"config", config_echo},
          {"timings_ms", timings_ms},
          {"outputs", outputs},
          {"warnings", warnings},
          {"stages", stages}};
}

void RunManifest::save(const fs::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  out << to_json().dump(2) << "\n";
}

namespace {

// --- warp stage -------------------------------------------------------

struct WarpInputs {
  Image garment;
  ParsingMap garment_parsing;
  ParsingMap person_parsing;
  std::array<FlowField, 3> flows;  // at flow resolution
};

WarpInputs load_warp_inputs(const PipelineConfig& config) {
  require(!config.paths.garment.empty(), "garment path is required");
  require(!config.paths.garment_parsing.empty(),
          "garment_parsing path is required");
  require(!config.paths.parsing.empty(),
          "parsing path is required (supplies the global parsing)");

  WarpInputs in;
  in.garment = load_image(config.paths.garment);
  in.garment_parsing = load_parsing_map(config.paths.garment_parsing);
  require(in.garment_parsing.width == in.garment.width &&
              in.garment_parsing.height == in.garment.height,
          "garment parsing dimensions must match the garment");

  in.person_parsing = load_parsing_map(config.paths.parsing);
  require(in.person_parsing.width == config.output_width &&
              in.person_parsing.height == config.output_height,
          "parsing map dimensions must match the output resolution");

  if (!config.paths.synth_flow.empty()) {
    const SynthFlowSpec spec = parse_synth_flow_spec(config.paths.synth_flow);
    for (auto& flow : in.flows)
      flow = synth_flow(spec, config.flow_width, config.flow_height);
  } else {
    require(config.paths.flows.size() == 3,
            "exactly three part flow files are required (left, right, torso)");
    for (std::size_t i = 0; i < 3; ++i) {
      in.flows[i] = read_flow(config.paths.flows[i]);
      require(in.flows[i].width == config.flow_width &&
                  in.flows[i].height == config.flow_height,
              "flow file " + config.paths.flows[i] +
                  " does not match the flow resolution");
    }
  }
  return in;
}

struct WarpStage {
  AssembledGarment garment;
  std::optional<WearingStyle> style;
};

WarpStage run_warp_stage(const PipelineConfig& config, const WarpInputs& in,
                         RunManifest& manifest) {
  std::array<WarpedPart, 3> parts;
  std::array<BinaryMask, 3> global_parsing;
  for (std::size_t i = 0; i < kGarmentParts.size(); ++i) {
    const FlowField full = upsample_flow(in.flows[i], config.output_width,
                                         config.output_height);
    const BinaryMask part_alpha =
        mask_from_labels(in.garment_parsing, {kGarmentParts[i]});
    parts[i] = apply_flow(in.garment, part_alpha, full, kGarmentParts[i]);
    global_parsing[i] =
        mask_from_labels(in.person_parsing, {kGarmentParts[i]});
  }

  WarpStage stage;
  stage.garment = assemble_parts(parts, global_parsing);

  const BinaryMask flat_torso =
      mask_from_labels(in.garment_parsing, {Label::TorsoGarment});
  const BinaryMask warped_torso =
      mask_and(stage.garment.alpha, global_parsing[2]);
  if (flat_torso.empty() || warped_torso.empty()) {
    manifest.warnings.push_back(
        "dgt: empty torso mask, wearing style not classified");
    manifest.stages["warp"]["dgt"] = nullptr;
  } else {
    const WearingStyle style =
        dgt_classify(flat_torso, warped_torso, config.dgt_threshold);
    stage.style = style;
    manifest.stages["warp"]["dgt"] = {
        {"style", style.style == WearingStyle::Style::TuckedIn ? "tucked_in"
                                                               : "tucked_out"},
        {"ratio_flat", style.ratio_flat},
        {"ratio_warped", style.ratio_warped},
        {"disparity", style.disparity}};
  }
  manifest.stages["warp"]["garment_alpha_area"] = stage.garment.alpha.area();
  manifest.stages["warp"]["hole_area"] = stage.garment.holes.area();
  return stage;
}

void write_warp_outputs(const PipelineConfig& config, const WarpStage& stage,
                        RunManifest& manifest) {
  fs::create_directories(config.paths.output_dir);
  const fs::path warped = out_path(config, "warped.png");
  const fs::path alpha = out_path(config, "warped_alpha.png");
  const fs::path holes = out_path(config, "holes.png");
  save_image(stage.garment.image, warped);
  save_mask(stage.garment.alpha, alpha);
  save_mask(stage.garment.holes, holes);
  record_output(manifest, warped);
  record_output(manifest, alpha);
  record_output(manifest, holes);
}

// --- preprocess stage ---------------------------------------------------

struct PreprocessInputs {
  Image person;
  ParsingMap parsing;
  Image warped;
  BinaryMask warped_alpha;
  BinaryMask hole_mask;
};

PreprocessInputs load_preprocess_inputs(const PipelineConfig& config) {
  require(!config.paths.person.empty(), "person path is required");
  require(!config.paths.parsing.empty(), "parsing path is required");

  PreprocessInputs in;
  in.person = load_image(config.paths.person);
  require(in.person.width == config.output_width &&
              in.person.height == config.output_height,
          "person image dimensions must match the output resolution");
  in.parsing = load_parsing_map(config.paths.parsing);
  in.warped = load_image(stage_input(config.paths.warped, config, "warped.png"));
  in.warped_alpha = load_mask(
      stage_input(config.paths.warped_alpha, config, "warped_alpha.png"));
  in.hole_mask =
      load_mask(stage_input(config.paths.hole_mask, config, "holes.png"));
  return in;
}

PreprocessResult run_preprocess_stage(const PipelineConfig& config,
                                      const PreprocessInputs& in,
                                      RunManifest& manifest) {
  PreprocessResult result =
      preprocess(in.person, in.parsing, in.warped, in.warped_alpha,
                 in.hole_mask, config.band);

  nlohmann::json widths = nlohmann::json::object();
  const std::array<const char*, 3> names{"left", "right", "torso"};
  for (std::size_t i = 0; i < 3; ++i) {
    const BinaryMask part = mask_and(
        mask_from_labels(in.parsing, {kGarmentParts[i]}), in.warped_alpha);
    widths[names[i]] = measured_band_width(result.bands[i], part);
  }
  manifest.stages["preprocess"]["band_widths"] = widths;
  manifest.stages["preprocess"]["inpaint_mask_area"] =
      result.inpaint_mask.area();
  return result;
}

void write_preprocess_outputs(const PipelineConfig& config,
                              const PreprocessResult& result,
                              RunManifest& manifest) {
  fs::create_directories(config.paths.output_dir);
  const fs::path preserved = out_path(config, "preserved.png");
  const fs::path mask = out_path(config, "inpaint_mask.png");
  save_image(result.preserved, preserved);
  save_mask(result.inpaint_mask, mask);
  record_output(manifest, preserved);
  record_output(manifest, mask);

  const std::array<const char*, 3> names{"band_left.png", "band_right.png",
                                         "band_torso.png"};
  for (std::size_t i = 0; i < 3; ++i) {
    const fs::path band = out_path(config, names[i]);
    save_mask(result.bands[i], band);
    record_output(manifest, band);
  }
}

// --- inpaint stage ------------------------------------------------------

Image run_inpaint_stage(const PipelineConfig& config, const Image& preserved,
                        const BinaryMask& mask, RunManifest& manifest) {
  auto [output, stats] = compose_tryon(preserved, mask, config.solver);
  manifest.stages["inpaint"] = {{"residual", stats.residual},
                                {"iterations", stats.iterations},
                                {"converged", stats.converged},
                                {"masked_pixels", mask.area()}};
  if (!stats.converged)
    manifest.warnings.push_back(
        "inpaint: solver hit max_iterations before tolerance (residual " +
        std::to_string(stats.residual) + ")");
  return output;
}

void check_aux_inputs(const PipelineConfig& config, const Image& person,
                      RunManifest& manifest) {
  if (config.paths.densepose.empty() && config.paths.pose.empty()) return;
  AuxInputs aux;
  aux.densepose = config.paths.densepose.empty()
                      ? Image(person.width, person.height, 3)
                      : load_image(config.paths.densepose);
  aux.pose_heatmap = config.paths.pose.empty()
                         ? Image(person.width, person.height, 1)
                         : load_image(config.paths.pose);
  aux.validate_against(person);
  if (!config.paths.pose.empty())
    manifest.stages["aux"] = {{"pose", config.paths.pose},
                              {"consumed", false}};
}

}  // namespace

RunManifest cmd_warp(const PipelineConfig& config) {
  config.validate();
  RunManifest manifest;
  manifest.config_echo = config_to_json(config);

  const WarpInputs inputs = load_warp_inputs(config);
  WarpStage stage = [&] {
    StageTimer timer(manifest, "warp");
    return run_warp_stage(config, inputs, manifest);
  }();
  write_warp_outputs(config, stage, manifest);
  manifest.save(out_path(config, "manifest.json"));
  return manifest;
}

RunManifest cmd_preprocess(const PipelineConfig& config) {
  config.validate();
  RunManifest manifest;
  manifest.config_echo = config_to_json(config);

  const PreprocessInputs inputs = load_preprocess_inputs(config);
  const PreprocessResult result = [&] {
    StageTimer timer(manifest, "preprocess");
    return run_preprocess_stage(config, inputs, manifest);
  }();
  write_preprocess_outputs(config, result, manifest);
  manifest.save(out_path(config, "manifest.json"));
  return manifest;
}

RunManifest cmd_inpaint(const PipelineConfig& config) {
  config.validate();
  RunManifest manifest;
  manifest.config_echo = config_to_json(config);

  const Image preserved = load_image(
      stage_input(config.paths.preserved, config, "preserved.png"));
  const BinaryMask mask = load_mask(
      stage_input(config.paths.inpaint_mask, config, "inpaint_mask.png"));

  const Image output = [&] {
    StageTimer timer(manifest, "inpaint");
    return run_inpaint_stage(config, preserved, mask, manifest);
  }();
  fs::create_directories(config.paths.output_dir);
  const fs::path tryon = out_path(config, "tryon.png");
  save_image(output, tryon);
  record_output(manifest, tryon);
  manifest.save(out_path(config, "manifest.json"));
  return manifest;
}

RunManifest cmd_pipeline(const PipelineConfig& config) {
  config.validate();
  require(!config.paths.person.empty(), "person path is required");

  RunManifest manifest;
  manifest.config_echo = config_to_json(config);

  // All inputs are loaded before anything is written, so a missing file
  // cannot leave partial outputs behind.
  const WarpInputs warp_inputs = load_warp_inputs(config);
  const Image person = load_image(config.paths.person);
  require(person.width == config.output_width &&
              person.height == config.output_height,
          "person image dimensions must match the output resolution");
  check_aux_inputs(config, person, manifest);

  WarpStage warp_stage = [&] {
    StageTimer timer(manifest, "warp");
    return run_warp_stage(config, warp_inputs, manifest);
  }();

  PreprocessInputs pre_inputs;
  pre_inputs.person = person;
  pre_inputs.parsing = warp_inputs.person_parsing;
  pre_inputs.warped = warp_stage.garment.image;
  pre_inputs.warped_alpha = warp_stage.garment.alpha;
  pre_inputs.hole_mask = warp_stage.garment.holes;
  const PreprocessResult pre = [&] {
    StageTimer timer(manifest, "preprocess");
    return run_preprocess_stage(config, pre_inputs, manifest);
  }();

  const Image output = [&] {
    StageTimer timer(manifest, "inpaint");
    return run_inpaint_stage(config, pre.preserved, pre.inpaint_mask, manifest);
  }();

  write_warp_outputs(config, warp_stage, manifest);
  write_preprocess_outputs(config, pre, manifest);
  const fs::path tryon = out_path(config, "tryon.png");
  save_image(output, tryon);
  record_output(manifest, tryon);
  manifest.save(out_path(config, "manifest.json"));
  return manifest;
}

RunManifest cmd_ablate_band(const PipelineConfig& config,
                            const std::vector<int>& n_values) {
  config.validate();

  RunManifest manifest;
  manifest.config_echo = config_to_json(config);

  std::vector<int> ns = n_values.empty() ? config.ablate_n_values : n_values;
  std::sort(ns.begin(), ns.end());
  const auto last = std::unique(ns.begin(), ns.end());
  if (last != ns.end()) {
    manifest.warnings.push_back("ablate-band: duplicate n values removed");
    ns.erase(last, ns.end());
  }
  require(!ns.empty(), "ablate-band: at least one n value is required");
  for (int n : ns) require(n >= 0, "ablate-band: n values must be >= 0");

  const std::string gt_path = config.paths.ground_truth.empty()
                                  ? config.paths.person
                                  : config.paths.ground_truth;
  require(!gt_path.empty(), "ablate-band: ground truth image is required");
  const Image ground_truth = load_image(gt_path);

  nlohmann::json rows = nlohmann::json::array();
  for (int n : ns) {
    PipelineConfig run = config;
    run.band.iterations = n;
    run.paths.output_dir =
        (fs::path(config.paths.output_dir) / ("n_" + std::to_string(n)))
            .string();
    const RunManifest sub = [&] {
      StageTimer timer(manifest, "pipeline_n" + std::to_string(n));
      return cmd_pipeline(run);
    }();
    for (const auto& w : sub.warnings) manifest.warnings.push_back(w);
    for (const auto& o : sub.outputs) manifest.outputs.push_back(o);

    const Image output =
        load_image(fs::path(run.paths.output_dir) / "tryon.png");
    require(ground_truth.same_shape(output),
            "ablate-band: ground truth dimensions differ from the output");

    const PsnrValue p = psnr(ground_truth, output);
    int band_width = 0;
    for (const auto& item : sub.stages["preprocess"]["band_widths"].items())
      band_width = std::max(band_width, item.value().get<int>());

    rows.push_back(
        {{"n", n},
         {"ssim", ssim(ground_truth, output)},
         {"fid", nullptr},
         {"lpips", nullptr},
         {"psnr_db", p.infinite ? nlohmann::json(nullptr) : nlohmann::json(p.db)},
         {"l1", l1(ground_truth, output)},
         {"inpaint_mask_area",
          sub.stages["preprocess"]["inpaint_mask_area"].get<std::size_t>()},
         {"band_width", band_width}});
  }

  manifest.stages["ablate"] = {{"rows", rows}, {"ground_truth", gt_path}};

  const fs::path report = config.report_path.empty()
                              ? out_path(config, "ablate_report.json")
                              : fs::path(config.report_path);
  fs::create_directories(report.parent_path().empty() ? "."
                                                      : report.parent_path());
  {
    std::ofstream out(report);
    if (!out) throw IoError("cannot write report: " + report.string());
    out << nlohmann::json({{"rows", rows}, {"ground_truth", gt_path}}).dump(2)
        << "\n";
  }
  record_output(manifest, report);

  fs::path csv = report;
  csv.replace_extension(".csv");
  {
    std::ofstream out(csv);
    if (!out) throw IoError("cannot write report: " + csv.string());
    out << "n,ssim,fid,lpips,psnr_db,l1,inpaint_mask_area,band_width\n";
    for (const auto& row : rows) {
      out << row["n"].get<int>() << "," << row["ssim"].get<double>() << ",,,";
      if (!row["psnr_db"].is_null()) out << row["psnr_db"].get<double>();
      out << "," << row["l1"].get<double>() << ","
          << row["inpaint_mask_area"].get<std::size_t>() << ","
          << row["band_width"].get<int>() << "\n";
    }
  }
  record_output(manifest, csv);
  fs::create_directories(config.paths.output_dir);
  manifest.save(out_path(config, "manifest.json"));
  return manifest;
}

RunManifest cmd_metrics(const PipelineConfig& config, const fs::path& gt_dir,
                        const fs::path& out_dir, const fs::path& report_path) {
  RunManifest manifest;
  manifest.config_echo = config_to_json(config);

  auto collect = [](const fs::path& dir) {
    if (!fs::is_directory(dir))
      throw IoError("not a directory: " + dir.string());
    std::set<std::string> ids;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().extension() == ".png")
        ids.insert(entry.path().stem().string());
    return ids;
  };

  const std::set<std::string> gt_ids = collect(gt_dir);
  const std::set<std::string> out_ids = collect(out_dir);
  for (const auto& id : gt_ids)
    require(out_ids.count(id) > 0, "metrics: no output image for id '" + id + "'");
  for (const auto& id : out_ids)
    require(gt_ids.count(id) > 0,
            "metrics: no ground-truth image for id '" + id + "'");

  std::vector<Image> gt_images, out_images;
  std::vector<MetricPairInput> pairs;
  gt_images.reserve(gt_ids.size());
  out_images.reserve(gt_ids.size());
  for (const auto& id : gt_ids) {
    gt_images.push_back(load_image(gt_dir / (id + ".png")));
    out_images.push_back(load_image(out_dir / (id + ".png")));
    pairs.push_back({id, &gt_images.back(), &out_images.back()});
  }

  const MetricReport report = [&] {
    StageTimer timer(manifest, "metrics");
    return evaluate_pairs(pairs, config.band, config.solver);
  }();

  {
    std::ofstream out(report_path);
    if (!out) throw IoError("cannot write report: " + report_path.string());
    out << report_to_json(report).dump(2) << "\n";
  }
  record_output(manifest, report_path);
  manifest.stages["metrics"] = {{"pairs", report.per_pair.size()}};
  return manifest;
}

}  // namespace dualfit
