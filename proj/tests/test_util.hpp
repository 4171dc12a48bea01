#pragma once

#include <filesystem>
#include <random>

#include "dualfit/types.hpp"

namespace testutil {

/// Fresh directory under the system temp root, wiped on construction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& name) {
    path = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
};

inline dualfit::Image random_image(std::mt19937& rng, int w, int h, int c) {
  dualfit::Image img(w, h, c);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  for (float& v : img.data) v = dist(rng);
  return img;
}

/// Image whose samples sit exactly on the 8-bit grid, so PNG round trips
/// are bit-exact.
inline dualfit::Image random_quantized_image(std::mt19937& rng, int w, int h,
                                             int c) {
  dualfit::Image img(w, h, c);
  std::uniform_int_distribution<int> dist(0, 255);
  for (float& v : img.data) v = dist(rng) / 255.0f;
  return img;
}

inline dualfit::BinaryMask random_mask(std::mt19937& rng, int w, int h,
                                       double density = 0.5) {
  dualfit::BinaryMask mask(w, h);
  std::bernoulli_distribution dist(density);
  for (auto& b : mask.bits) b = dist(rng) ? 1 : 0;
  return mask;
}

inline dualfit::BinaryMask rect_mask(int w, int h, int x0, int y0, int x1,
                                     int y1) {
  dualfit::BinaryMask mask(w, h);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) mask.set(x, y, true);
  return mask;
}

inline dualfit::Image constant_image(int w, int h, int c, float value) {
  return dualfit::Image(w, h, c, value);
}

inline dualfit::Image flip_horizontal(const dualfit::Image& img) {
  dualfit::Image out(img.width, img.height, img.channels);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        out.at(x, y, c) = img.at(img.width - 1 - x, y, c);
  return out;
}

}  // namespace testutil
