#include "dualfit/fixtures.hpp"

#include <array>
#include <cmath>

#include "dualfit/png_io.hpp"

namespace dualfit {

namespace {

struct Rect {
  int x0, y0, x1, y1;  // half-open
};

Rect frac_rect(int w, int h, double fx0, double fy0, double fx1, double fy1) {
  return {static_cast<int>(fx0 * w), static_cast<int>(fy0 * h),
          static_cast<int>(fx1 * w), static_cast<int>(fy1 * h)};
}

void fill_label(ParsingMap& map, const Rect& r, Label l) {
  for (int y = r.y0; y < r.y1; ++y)
    for (int x = r.x0; x < r.x1; ++x) map.set(x, y, l);
}

void fill_color(Image& img, const Rect& r, float cr, float cg, float cb) {
  for (int y = r.y0; y < r.y1; ++y)
    for (int x = r.x0; x < r.x1; ++x) {
      img.at(x, y, 0) = cr;
      img.at(x, y, 1) = cg;
      img.at(x, y, 2) = cb;
    }
}

// Horizontal stripes give the garment a texture that makes warps and
// seam regeneration visible in the outputs.
void fill_striped(Image& img, const Rect& r, float cr, float cg, float cb,
                  int period) {
  for (int y = r.y0; y < r.y1; ++y) {
    const bool stripe = ((y - r.y0) / period) % 2 == 1;
    for (int x = r.x0; x < r.x1; ++x) {
      img.at(x, y, 0) = stripe ? 0.95f : cr;
      img.at(x, y, 1) = stripe ? 0.90f : cg;
      img.at(x, y, 2) = stripe ? 0.25f : cb;
    }
  }
}

}  // namespace

SceneFixture make_scene(int width, int height) {
  require(width >= 32 && height >= 32, "scene fixture needs at least 32x32");

  const Rect head = frac_rect(width, height, 0.40, 0.04, 0.60, 0.16);
  const Rect neck = frac_rect(width, height, 0.45, 0.16, 0.55, 0.22);
  const Rect torso = frac_rect(width, height, 0.30, 0.25, 0.70, 0.55);
  const Rect left_sleeve = frac_rect(width, height, 0.10, 0.25, 0.28, 0.48);
  const Rect right_sleeve = frac_rect(width, height, 0.72, 0.25, 0.90, 0.48);
  const Rect left_hand = frac_rect(width, height, 0.10, 0.50, 0.22, 0.58);
  const Rect right_hand = frac_rect(width, height, 0.78, 0.50, 0.90, 0.58);
  const Rect lower = frac_rect(width, height, 0.25, 0.58, 0.75, 0.95);

  const int stripe_period = std::max(2, height / 32);

  SceneFixture scene;
  scene.person = Image(width, height, 3);
  scene.person_parsing = ParsingMap(width, height);
  for (int y = 0; y < height; ++y) {
    const float shade = 0.85f + 0.10f * (static_cast<float>(y) / height);
    for (int x = 0; x < width; ++x) {
      scene.person.at(x, y, 0) = shade;
      scene.person.at(x, y, 1) = shade;
      scene.person.at(x, y, 2) = shade;
    }
  }
  fill_color(scene.person, head, 0.80f, 0.68f, 0.58f);
  fill_color(scene.person, neck, 0.76f, 0.64f, 0.54f);
  fill_color(scene.person, left_hand, 0.80f, 0.68f, 0.58f);
  fill_color(scene.person, right_hand, 0.80f, 0.68f, 0.58f);
  fill_color(scene.person, lower, 0.25f, 0.28f, 0.45f);
  fill_striped(scene.person, torso, 0.70f, 0.15f, 0.20f, stripe_period);
  fill_striped(scene.person, left_sleeve, 0.15f, 0.30f, 0.65f, stripe_period);
  fill_striped(scene.person, right_sleeve, 0.15f, 0.30f, 0.65f, stripe_period);

  fill_label(scene.person_parsing, head, Label::HeadHair);
  fill_label(scene.person_parsing, neck, Label::Neck);
  fill_label(scene.person_parsing, torso, Label::TorsoGarment);
  fill_label(scene.person_parsing, left_sleeve, Label::LeftGarment);
  fill_label(scene.person_parsing, right_sleeve, Label::RightGarment);
  fill_label(scene.person_parsing, left_hand, Label::LeftHand);
  fill_label(scene.person_parsing, right_hand, Label::RightHand);
  fill_label(scene.person_parsing, lower, Label::LowerBody);

  scene.garment = Image(width, height, 3, 1.0f);  // white backdrop
  scene.garment_parsing = ParsingMap(width, height);
  fill_striped(scene.garment, torso, 0.70f, 0.15f, 0.20f, stripe_period);
  fill_striped(scene.garment, left_sleeve, 0.15f, 0.30f, 0.65f, stripe_period);
  fill_striped(scene.garment, right_sleeve, 0.15f, 0.30f, 0.65f, stripe_period);
  fill_label(scene.garment_parsing, torso, Label::TorsoGarment);
  fill_label(scene.garment_parsing, left_sleeve, Label::LeftGarment);
  fill_label(scene.garment_parsing, right_sleeve, Label::RightGarment);

  scene.densepose = Image(width, height, 3);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      scene.densepose.at(x, y, 0) = static_cast<float>(x) / width;
      scene.densepose.at(x, y, 1) = static_cast<float>(y) / height;
      scene.densepose.at(x, y, 2) = 0.5f;
    }

  scene.pose_heatmap = Image(width, height, 1);
  const std::array<std::pair<double, double>, 4> joints{
      {{0.5, 0.1}, {0.5, 0.4}, {0.16, 0.54}, {0.84, 0.54}}};
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      double v = 0.0;
      for (const auto& [jx, jy] : joints) {
        const double dx = x - jx * width;
        const double dy = y - jy * height;
        v += std::exp(-(dx * dx + dy * dy) / (0.002 * width * height));
      }
      scene.pose_heatmap.at(x, y, 0) = static_cast<float>(std::min(v, 1.0));
    }
  return scene;
}

void write_scene(const SceneFixture& scene, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_image(scene.person, dir / "person.png");
  save_parsing_map(scene.person_parsing, dir / "parsing.png");
  save_image(scene.garment, dir / "garment.png");
  save_parsing_map(scene.garment_parsing, dir / "garment_parsing.png");
  save_image(scene.densepose, dir / "densepose.png");
  save_image(scene.pose_heatmap, dir / "pose.png");
}

}  // namespace dualfit
