#include "dualfit/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

namespace dualfit {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void png_error_to_exception(png_structp png, png_const_charp msg) {
  // Jump back to the setjmp point; the message is stashed in error_ptr.
  auto* out = static_cast<std::string*>(png_get_error_ptr(png));
  if (out) *out = msg;
  png_longjmp(png, 1);
}

void png_warning_sink(png_structp, png_const_charp) {}

struct RawPng {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1 or 3
  std::vector<std::uint8_t> samples;
};

RawPng read_png_8bit(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.string().c_str(), "rb"));
  if (!file) throw IoError("cannot open file: " + path.string());

  unsigned char sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw IoError("not a PNG stream: " + path.string());

  std::string errmsg;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &errmsg,
                                           png_error_to_exception,
                                           png_warning_sink);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng init failed");
  }

  RawPng out;
  std::vector<png_bytep> row_ptrs;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("corrupt PNG stream (" + errmsg + "): " + path.string());
  }

  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("unsupported bit depth " + std::to_string(bit_depth) +
                  " (only 8-bit supported): " + path.string());
  }
  if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("unsupported color type " + std::to_string(color_type) +
                  " (only 8-bit gray or RGB supported): " + path.string());
  }

  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.channels = (color_type == PNG_COLOR_TYPE_GRAY) ? 1 : 3;

  const std::size_t stride =
      static_cast<std::size_t>(out.width) * out.channels;
  out.samples.resize(stride * out.height);
  row_ptrs.resize(out.height);
  for (int y = 0; y < out.height; ++y)
    row_ptrs[y] = out.samples.data() + stride * y;

  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

void write_png_8bit(const std::filesystem::path& path, int width, int height,
                    int channels, const std::vector<std::uint8_t>& samples) {
  FilePtr file(std::fopen(path.string().c_str(), "wb"));
  if (!file) throw IoError("cannot open file for writing: " + path.string());

  std::string errmsg;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &errmsg,
                                            png_error_to_exception,
                                            png_warning_sink);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng init failed");
  }

  std::vector<png_const_bytep> row_ptrs(height);
  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  for (int y = 0; y < height; ++y) row_ptrs[y] = samples.data() + stride * y;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG write failed (" + errmsg + "): " + path.string());
  }

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y)
    png_write_row(png, const_cast<png_bytep>(row_ptrs[y]));
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
}

std::uint8_t quantize(float v) {
  const float clamped = v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v);
  return static_cast<std::uint8_t>(std::lround(clamped * 255.0f));
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
  RawPng raw = read_png_8bit(path);
  Image img(raw.width, raw.height, raw.channels);
  for (std::size_t i = 0; i < raw.samples.size(); ++i)
    img.data[i] = raw.samples[i] / 255.0f;
  return img;
}

void save_image(const Image& img, const std::filesystem::path& path) {
  require(img.width >= 1 && img.height >= 1, "cannot save an empty image");
  std::vector<std::uint8_t> samples(img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i)
    samples[i] = quantize(img.data[i]);
  write_png_8bit(path, img.width, img.height, img.channels, samples);
}

ParsingMap load_parsing_map(const std::filesystem::path& path) {
  RawPng raw = read_png_8bit(path);
  if (raw.channels != 1)
    throw IoError("parsing map must be a grayscale PNG: " + path.string());
  for (std::size_t i = 0; i < raw.samples.size(); ++i) {
    if (!is_valid_label(raw.samples[i]))
      throw ValidationError("invalid parsing label " +
                            std::to_string(raw.samples[i]) + " at pixel " +
                            std::to_string(i) + " in " + path.string());
  }
  ParsingMap map(raw.width, raw.height);
  map.labels = std::move(raw.samples);
  return map;
}

void save_parsing_map(const ParsingMap& map, const std::filesystem::path& path) {
  write_png_8bit(path, map.width, map.height, 1, map.labels);
}

BinaryMask load_mask(const std::filesystem::path& path) {
  RawPng raw = read_png_8bit(path);
  if (raw.channels != 1)
    throw IoError("mask must be a grayscale PNG: " + path.string());
  BinaryMask mask(raw.width, raw.height);
  for (std::size_t i = 0; i < raw.samples.size(); ++i)
    mask.bits[i] = raw.samples[i] >= 128 ? 1 : 0;
  return mask;
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  std::vector<std::uint8_t> samples(mask.bits.size());
  for (std::size_t i = 0; i < mask.bits.size(); ++i)
    samples[i] = mask.bits[i] ? 255 : 0;
  write_png_8bit(path, mask.width, mask.height, 1, samples);
}

}  // namespace dualfit
