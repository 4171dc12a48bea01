#pragma once

#include <filesystem>

#include "dualfit/types.hpp"

namespace dualfit {

/// Deterministic synthetic try-on scene: a person raster with a full
/// parsing map, and a flat garment with its garment parsing. The garment
/// rectangles coincide with the person's garment regions, so identity
/// flows align them exactly.
struct SceneFixture {
  Image person;
  ParsingMap person_parsing;
  Image garment;
  ParsingMap garment_parsing;
  Image densepose;     // pass-through conditioning rasters
  Image pose_heatmap;
};

SceneFixture make_scene(int width, int height);

/// Writes person.png, parsing.png, garment.png, garment_parsing.png,
/// densepose.png, pose.png under `dir` (created if missing).
void write_scene(const SceneFixture& scene, const std::filesystem::path& dir);

}  // namespace dualfit
