#include "dualfit/types.hpp"

#include <numeric>

namespace dualfit {

std::string label_name(Label l) {
  switch (l) {
    case Label::Background:
      return "background";
    case Label::HeadHair:
      return "head_hair";
    case Label::LeftHand:
      return "left_hand";
    case Label::RightHand:
      return "right_hand";
    case Label::Neck:
      return "neck";
    case Label::LeftGarment:
      return "left_garment";
    case Label::RightGarment:
      return "right_garment";
    case Label::TorsoGarment:
      return "torso_garment";
    case Label::LowerBody:
      return "lower_body";
  }
  return "unknown";
}

Image::Image(int w, int h, int c, float fill) : width(w), height(h), channels(c) {
  require(w >= 1 && h >= 1, "image dimensions must be at least 1x1");
  require(c == 1 || c == 3, "image must have 1 or 3 channels");
  data.assign(static_cast<std::size_t>(w) * h * c, fill);
}

BinaryMask::BinaryMask(int w, int h, bool fill) : width(w), height(h) {
  require(w >= 1 && h >= 1, "mask dimensions must be at least 1x1");
  bits.assign(static_cast<std::size_t>(w) * h, fill ? 1 : 0);
}

std::size_t BinaryMask::area() const {
  return std::accumulate(bits.begin(), bits.end(), std::size_t{0});
}

ParsingMap::ParsingMap(int w, int h, Label fill) : width(w), height(h) {
  require(w >= 1 && h >= 1, "parsing map dimensions must be at least 1x1");
  labels.assign(static_cast<std::size_t>(w) * h, static_cast<std::uint8_t>(fill));
}

void AuxInputs::validate_against(const Image& person) const {
  require(densepose.width == person.width && densepose.height == person.height,
          "densepose dimensions must match the person image");
  require(densepose.channels == 3, "densepose must be 3-channel");
  require(pose_heatmap.width == person.width &&
              pose_heatmap.height == person.height,
          "pose heatmap dimensions must match the person image");
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace dualfit
