#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualfit {

// Error taxonomy, mapped to CLI exit codes by the front end:
// validation -> 2, I/O -> 3, broken internal invariant -> 4.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Semantic labels of an upper-body parsing map. Values are the raw
/// grayscale codes used in parsing-map PNG files.
enum class Label : std::uint8_t {
  Background = 0,
  HeadHair = 1,
  LeftHand = 2,
  RightHand = 3,
  Neck = 4,
  LeftGarment = 5,
  RightGarment = 6,
  TorsoGarment = 7,
  LowerBody = 8,
};

inline constexpr int kLabelCount = 9;

inline bool is_valid_label(std::uint8_t code) { return code < kLabelCount; }

std::string label_name(Label l);

/// Raster image, 1 or 3 channels, row-major interleaved samples on the
/// unit interval. Files store 8 bits per sample; all processing runs in
/// floating point and quantizes back only when saving.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> data;

  Image() = default;
  Image(int w, int h, int c, float fill = 0.0f);

  float& at(int x, int y, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  float at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  std::size_t sample_count() const { return data.size(); }
  bool same_shape(const Image& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }
  bool operator==(const Image& o) const = default;
};

/// Row-major boolean raster; bits are stored as 0/1 bytes.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(int w, int h, bool fill = false);

  bool get(int x, int y) const {
    return bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool v) {
    bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
  }

  std::size_t area() const;
  bool empty() const { return area() == 0; }
  bool same_shape(const BinaryMask& o) const {
    return width == o.width && height == o.height;
  }
  bool operator==(const BinaryMask& o) const = default;
};

/// Per-pixel semantic labeling; every stored code is a valid Label.
struct ParsingMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> labels;

  ParsingMap() = default;
  ParsingMap(int w, int h, Label fill = Label::Background);

  Label get(int x, int y) const {
    return static_cast<Label>(labels[static_cast<std::size_t>(y) * width + x]);
  }
  void set(int x, int y, Label l) {
    labels[static_cast<std::size_t>(y) * width + x] =
        static_cast<std::uint8_t>(l);
  }

  bool same_shape(const ParsingMap& o) const {
    return width == o.width && height == o.height;
  }
};

/// Conditioning rasters carried alongside a person image. The desk-scale
/// flow path never consumes them; they are validated and passed through.
struct AuxInputs {
  Image densepose;     // 3-channel
  Image pose_heatmap;  // 1- or 3-channel

  void validate_against(const Image& person) const;
};

void require(bool cond, const std::string& msg);

}  // namespace dualfit
