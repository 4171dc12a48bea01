#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "dualfit/fixtures.hpp"
#include "dualfit/mask_ops.hpp"
#include "dualfit/pipeline.hpp"
#include "dualfit/png_io.hpp"
#include "dualfit/preprocess.hpp"
#include "dualfit/reference.hpp"
#include "test_util.hpp"

using namespace dualfit;
using testutil::TempDir;

namespace {

constexpr int kW = 96;
constexpr int kH = 128;

struct FixtureRun {
  TempDir dir;
  PipelineConfig config;

  explicit FixtureRun(const std::string& name, const std::string& flow_spec,
                      int flow_w = kW / 2, int flow_h = kH / 2)
      : dir(name) {
    write_scene(make_scene(kW, kH), dir.path);
    config.flow_width = flow_w;
    config.flow_height = flow_h;
    config.output_width = kW;
    config.output_height = kH;
    config.paths.person = (dir.path / "person.png").string();
    config.paths.parsing = (dir.path / "parsing.png").string();
    config.paths.garment = (dir.path / "garment.png").string();
    config.paths.garment_parsing = (dir.path / "garment_parsing.png").string();
    config.paths.synth_flow = flow_spec;
    config.paths.output_dir = (dir.path / "out").string();
  }
};

std::vector<char> file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::vector<char>((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
}

nlohmann::json manifest_without_timings(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  j.erase("timings_ms");
  return j;
}

// Quantize an in-memory image the same way the pipeline outputs are
// stored, by bouncing it through a PNG.
Image quantized(const Image& img, const std::filesystem::path& scratch) {
  save_image(img, scratch);
  return load_image(scratch);
}

}  // namespace

TEST_CASE("warp with identity flows reproduces the garment on its footprint") {
  FixtureRun fix("dualfit_pipe_warp_identity", "identity");
  const RunManifest manifest = cmd_warp(fix.config);

  const Image garment = load_image(fix.config.paths.garment);
  const ParsingMap person_parsing = load_parsing_map(fix.config.paths.parsing);
  const BinaryMask footprint = mask_from_labels(
      person_parsing,
      {Label::LeftGarment, Label::RightGarment, Label::TorsoGarment});

  const Image warped = load_image(fix.dir.path / "out" / "warped.png");
  const BinaryMask alpha = load_mask(fix.dir.path / "out" / "warped_alpha.png");
  const BinaryMask holes = load_mask(fix.dir.path / "out" / "holes.png");

  CHECK(alpha == footprint);
  CHECK(holes.area() == 0);
  for (int y = 0; y < kH; ++y)
    for (int x = 0; x < kW; ++x)
      for (int c = 0; c < 3; ++c) {
        const float expect = footprint.get(x, y) ? garment.at(x, y, c) : 0.0f;
        CHECK(warped.at(x, y, c) == expect);
      }

  CHECK(manifest.stages.at("warp").contains("dgt"));
  CHECK(manifest.stages.at("warp")["dgt"]["style"] == "tucked_out");
  CHECK(manifest.stages.at("warp")["dgt"]["disparity"].get<double>() ==
        doctest::Approx(0.0));
}

TEST_CASE("warp with a translation matches the shift oracle") {
  // Full-resolution flow so the synthetic translation is not rescaled.
  FixtureRun fix("dualfit_pipe_warp_shift", "translate:8,0", kW, kH);
  cmd_warp(fix.config);

  const Image garment = load_image(fix.config.paths.garment);
  const ParsingMap garment_parsing =
      load_parsing_map(fix.config.paths.garment_parsing);
  const ParsingMap person_parsing = load_parsing_map(fix.config.paths.parsing);

  std::array<WarpedPart, 3> parts;
  std::array<BinaryMask, 3> global;
  for (std::size_t i = 0; i < kGarmentParts.size(); ++i) {
    parts[i] = ref::shift(garment,
                          mask_from_labels(garment_parsing, {kGarmentParts[i]}),
                          8, 0, kGarmentParts[i]);
    global[i] = mask_from_labels(person_parsing, {kGarmentParts[i]});
  }
  const AssembledGarment expect = ref::assemble_parts(parts, global);

  const Image warped = load_image(fix.dir.path / "out" / "warped.png");
  const Image expect_q =
      quantized(expect.image, fix.dir.path / "expect_warped.png");
  CHECK(warped == expect_q);
  CHECK(load_mask(fix.dir.path / "out" / "warped_alpha.png") == expect.alpha);
  CHECK(load_mask(fix.dir.path / "out" / "holes.png") == expect.holes);
  CHECK(expect.holes.area() > 0);  // the shift uncovers part of each region
}

TEST_CASE("missing inputs fail before anything is written") {
  FixtureRun fix("dualfit_pipe_warp_missing", "");
  fix.config.paths.flows = {(fix.dir.path / "nope_l.flo").string(),
                            (fix.dir.path / "nope_r.flo").string(),
                            (fix.dir.path / "nope_t.flo").string()};
  CHECK_THROWS_AS(cmd_warp(fix.config), IoError);
  CHECK_FALSE(std::filesystem::exists(fix.dir.path / "out"));

  FixtureRun pipeline_fix("dualfit_pipe_pipeline_missing", "identity");
  pipeline_fix.config.paths.person = (pipeline_fix.dir.path / "absent.png").string();
  CHECK_THROWS_AS(cmd_pipeline(pipeline_fix.config), IoError);
  CHECK_FALSE(std::filesystem::exists(pipeline_fix.dir.path / "out"));
}

TEST_CASE("preprocess stage writes the preserved input and mask") {
  FixtureRun fix("dualfit_pipe_preprocess", "identity");
  fix.config.band = {3, 5};
  cmd_warp(fix.config);
  const RunManifest manifest = cmd_preprocess(fix.config);

  const Image person = load_image(fix.config.paths.person);
  const ParsingMap parsing = load_parsing_map(fix.config.paths.parsing);
  const Image warped = load_image(fix.dir.path / "out" / "warped.png");
  const BinaryMask alpha = load_mask(fix.dir.path / "out" / "warped_alpha.png");
  const BinaryMask holes = load_mask(fix.dir.path / "out" / "holes.png");

  // Oracle mask: hands and neck, plus reference bands over each part.
  BinaryMask expect_mask =
      mask_from_labels(parsing, {Label::LeftHand, Label::RightHand, Label::Neck});
  for (Label part : kGarmentParts) {
    const BinaryMask region = mask_and(mask_from_labels(parsing, {part}), alpha);
    expect_mask = mask_or(expect_mask, ref::narrow_band(region, fix.config.band));
  }
  expect_mask = mask_or(expect_mask, holes);

  const BinaryMask mask = load_mask(fix.dir.path / "out" / "inpaint_mask.png");
  CHECK(mask == expect_mask);

  const auto& widths = manifest.stages.at("preprocess")["band_widths"];
  CHECK(widths["left"] == 5);
  CHECK(widths["right"] == 5);
  CHECK(widths["torso"] == 5);

  const Image preserved = load_image(fix.dir.path / "out" / "preserved.png");
  const Image expect_preserved = quantized(
      build_preserved_input(person, parsing, warped, alpha, expect_mask),
      fix.dir.path / "expect_preserved.png");
  CHECK(preserved == expect_preserved);
}

TEST_CASE("preprocess with n=0 keeps only hands, neck, and holes") {
  FixtureRun fix("dualfit_pipe_preprocess_n0", "identity");
  fix.config.band = {3, 0};
  cmd_warp(fix.config);
  const RunManifest manifest = cmd_preprocess(fix.config);

  const ParsingMap parsing = load_parsing_map(fix.config.paths.parsing);
  const BinaryMask mask = load_mask(fix.dir.path / "out" / "inpaint_mask.png");
  const BinaryMask expect = mask_from_labels(
      parsing, {Label::LeftHand, Label::RightHand, Label::Neck});
  CHECK(mask == expect);

  const auto& widths = manifest.stages.at("preprocess")["band_widths"];
  CHECK(widths["torso"] == 0);
}

TEST_CASE("preprocess with an all-background parsing passes the person through") {
  FixtureRun fix("dualfit_pipe_preprocess_empty", "identity");
  // Overwrite the parsing with background and provide empty warp artifacts.
  save_parsing_map(ParsingMap(kW, kH), fix.dir.path / "parsing.png");
  std::filesystem::create_directories(fix.dir.path / "out");
  save_image(Image(kW, kH, 3, 0.0f), fix.dir.path / "out" / "warped.png");
  save_mask(BinaryMask(kW, kH), fix.dir.path / "out" / "warped_alpha.png");
  save_mask(BinaryMask(kW, kH), fix.dir.path / "out" / "holes.png");

  cmd_preprocess(fix.config);
  const Image person = load_image(fix.config.paths.person);
  CHECK(load_image(fix.dir.path / "out" / "preserved.png") == person);
  CHECK(load_mask(fix.dir.path / "out" / "inpaint_mask.png").area() == 0);
}

TEST_CASE("pipeline preserves everything outside the inpaint mask") {
  FixtureRun fix("dualfit_pipe_full", "identity");
  const RunManifest manifest = cmd_pipeline(fix.config);
  CHECK(manifest.stages.at("inpaint")["converged"] == true);

  const Image preserved = load_image(fix.dir.path / "out" / "preserved.png");
  const BinaryMask mask = load_mask(fix.dir.path / "out" / "inpaint_mask.png");
  const Image tryon = load_image(fix.dir.path / "out" / "tryon.png");

  CHECK(mask.area() > 0);
  for (int y = 0; y < kH; ++y)
    for (int x = 0; x < kW; ++x)
      if (!mask.get(x, y))
        for (int c = 0; c < 3; ++c)
          CHECK(tryon.at(x, y, c) == preserved.at(x, y, c));
}

TEST_CASE("pipeline validates and flags pass-through conditioning inputs") {
  FixtureRun fix("dualfit_pipe_aux", "identity");
  fix.config.paths.densepose = (fix.dir.path / "densepose.png").string();
  fix.config.paths.pose = (fix.dir.path / "pose.png").string();
  const RunManifest manifest = cmd_pipeline(fix.config);

  // The pose heatmap is accepted but never consumed, and says so.
  CHECK(manifest.stages.at("aux")["consumed"] == false);

  // Every listed output exists after a successful run.
  CHECK_FALSE(manifest.outputs.empty());
  for (const auto& path : manifest.outputs)
    CHECK(std::filesystem::exists(path));

  // A mismatched pose raster is rejected up front.
  FixtureRun bad("dualfit_pipe_aux_bad", "identity");
  write_scene(make_scene(64, 64), bad.dir.path / "small");
  bad.config.paths.pose = (bad.dir.path / "small" / "pose.png").string();
  CHECK_THROWS_AS(cmd_pipeline(bad.config), ValidationError);
}

TEST_CASE("pipeline reruns are bit-identical") {
  FixtureRun fix("dualfit_pipe_determinism", "identity");
  cmd_pipeline(fix.config);
  const auto first = file_bytes(fix.dir.path / "out" / "tryon.png");
  const auto manifest_first =
      manifest_without_timings(fix.dir.path / "out" / "manifest.json");

  cmd_pipeline(fix.config);
  CHECK(file_bytes(fix.dir.path / "out" / "tryon.png") == first);
  CHECK(manifest_without_timings(fix.dir.path / "out" / "manifest.json") ==
        manifest_first);
}

TEST_CASE("solver non-convergence surfaces as a manifest warning") {
  FixtureRun fix("dualfit_pipe_nonconv", "identity");
  fix.config.solver = {1e-12, 1};
  const RunManifest manifest = cmd_pipeline(fix.config);
  CHECK(manifest.stages.at("inpaint")["converged"] == false);
  REQUIRE_FALSE(manifest.warnings.empty());
  CHECK(manifest.warnings.front().find("max_iterations") != std::string::npos);
  CHECK(std::filesystem::exists(fix.dir.path / "out" / "tryon.png"));
}

TEST_CASE("band ablation emits a table-shaped report") {
  FixtureRun fix("dualfit_pipe_ablate", "identity");
  const RunManifest manifest = cmd_ablate_band(fix.config, {2, 5, 10});

  const auto& rows = manifest.stages.at("ablate")["rows"];
  REQUIRE(rows.size() == 3);
  std::size_t prev_area = 0;
  const std::vector<int> expect_n{2, 5, 10};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rows[i]["n"] == expect_n[i]);
    CHECK(rows[i]["band_width"] == expect_n[i]);
    CHECK(rows[i]["fid"].is_null());
    CHECK(rows[i]["lpips"].is_null());
    CHECK(rows[i]["ssim"].is_number());
    CHECK(rows[i]["l1"].is_number());
    const auto area = rows[i]["inpaint_mask_area"].get<std::size_t>();
    CHECK(area >= prev_area);
    prev_area = area;
  }

  CHECK(std::filesystem::exists(fix.dir.path / "out" / "ablate_report.json"));
  CHECK(std::filesystem::exists(fix.dir.path / "out" / "ablate_report.csv"));
  std::ifstream csv(fix.dir.path / "out" / "ablate_report.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "n,ssim,fid,lpips,psnr_db,l1,inpaint_mask_area,band_width");
}

TEST_CASE("band ablation with n=0 regenerates only hands, neck, and holes") {
  FixtureRun fix("dualfit_pipe_ablate_n0", "identity");
  const RunManifest manifest = cmd_ablate_band(fix.config, {0});
  const auto& rows = manifest.stages.at("ablate")["rows"];
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["n"] == 0);
  CHECK(rows[0]["band_width"] == 0);

  // Identity flows leave no assembly holes, so M is exactly hands + neck.
  const ParsingMap parsing = load_parsing_map(fix.config.paths.parsing);
  const std::size_t expect_area =
      mask_from_labels(parsing, {Label::LeftHand, Label::RightHand, Label::Neck})
          .area();
  CHECK(rows[0]["inpaint_mask_area"].get<std::size_t>() == expect_area);
}

TEST_CASE("band ablation deduplicates n values with a warning") {
  FixtureRun fix("dualfit_pipe_ablate_dup", "identity");
  const RunManifest manifest = cmd_ablate_band(fix.config, {5, 5, 2});
  CHECK(manifest.stages.at("ablate")["rows"].size() == 2);
  REQUIRE_FALSE(manifest.warnings.empty());
  CHECK(manifest.warnings.front().find("duplicate") != std::string::npos);
}

TEST_CASE("metrics command pairs directories by filename") {
  TempDir dir("dualfit_pipe_metrics");
  std::mt19937 rng(3);
  const Image a = testutil::random_quantized_image(rng, 32, 24, 3);
  const Image b = testutil::random_quantized_image(rng, 32, 24, 3);

  std::filesystem::create_directories(dir.path / "gt");
  std::filesystem::create_directories(dir.path / "candidates");
  save_image(a, dir.path / "gt" / "one.png");
  save_image(b, dir.path / "candidates" / "one.png");
  save_image(b, dir.path / "gt" / "two.png");
  save_image(b, dir.path / "candidates" / "two.png");

  PipelineConfig config;
  const RunManifest manifest =
      cmd_metrics(config, dir.path / "gt", dir.path / "candidates",
                  dir.path / "report.json");
  CHECK(manifest.stages.at("metrics")["pairs"] == 2);

  std::ifstream in(dir.path / "report.json");
  nlohmann::json report;
  in >> report;
  REQUIRE(report["pairs"].size() == 2);
  CHECK(report["pairs"][0]["id"] == "one");
  CHECK(report["pairs"][1]["id"] == "two");
  CHECK(report["pairs"][1]["psnr_infinite"] == true);
  CHECK(report["aggregate"]["ssim"].is_number());

  save_image(a, dir.path / "gt" / "orphan.png");
  CHECK_THROWS_WITH_AS(cmd_metrics(config, dir.path / "gt",
                                   dir.path / "candidates",
                                   dir.path / "report2.json"),
                       doctest::Contains("orphan"), ValidationError);
}

TEST_CASE("config file loading and environment overrides") {
  TempDir dir("dualfit_pipe_config");
  const auto config_path = dir.path / "config.json";
  {
    std::ofstream out(config_path);
    out << R"({
      "flow_resolution": [24, 32],
      "output_resolution": [48, 64],
      "band": {"kernel": 5, "iterations": 7},
      "solver": {"tolerance": 1e-4, "max_iterations": 123},
      "dgt_threshold": 0.2,
      "paths": {"person": "p.png", "output_dir": "results",
                "flows": ["a.flo", "b.flo", "c.flo"]},
      "ablate": {"n_values": [1, 2, 3]}
    })";
  }

  PipelineConfig config = load_config(config_path);
  CHECK(config.flow_width == 24);
  CHECK(config.flow_height == 32);
  CHECK(config.output_width == 48);
  CHECK(config.band.kernel_size == 5);
  CHECK(config.band.iterations == 7);
  CHECK(config.solver.tolerance == 1e-4);
  CHECK(config.solver.max_iterations == 123);
  CHECK(config.dgt_threshold == 0.2);
  CHECK(config.paths.person == "p.png");
  CHECK(config.paths.output_dir == "results");
  CHECK(config.paths.flows.size() == 3);
  CHECK(config.ablate_n_values == std::vector<int>{1, 2, 3});

  // Environment values override the file.
  setenv("DUALFIT_BAND_N", "9", 1);
  setenv("DUALFIT_FLOW_RES", "12x16", 1);
  apply_env_overrides(config);
  unsetenv("DUALFIT_BAND_N");
  unsetenv("DUALFIT_FLOW_RES");
  CHECK(config.band.iterations == 9);
  CHECK(config.flow_width == 12);
  CHECK(config.flow_height == 16);

  CHECK_THROWS_AS(load_config(dir.path / "missing.json"), IoError);
  {
    std::ofstream out(dir.path / "broken.json");
    out << "{not json";
  }
  CHECK_THROWS_AS(load_config(dir.path / "broken.json"), IoError);
}

TEST_CASE("resolution strings parse strictly") {
  CHECK(parse_resolution("384x512") == std::pair{384, 512});
  CHECK_THROWS_AS(parse_resolution("384"), ValidationError);
  CHECK_THROWS_AS(parse_resolution("ax4"), ValidationError);
  CHECK_THROWS_AS(parse_resolution("0x4"), ValidationError);
}

TEST_CASE("config validation catches inconsistent resolutions") {
  PipelineConfig config;
  config.flow_width = 100;
  config.output_width = 50;
  config.output_height = 2000;
  CHECK_THROWS_AS(config.validate(), ValidationError);
}
