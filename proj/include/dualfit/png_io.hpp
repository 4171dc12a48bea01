#pragma once

#include <filesystem>

#include "dualfit/types.hpp"

namespace dualfit {

/// Reads an 8-bit grayscale or RGB PNG. Anything else (16-bit, palette,
/// alpha) is rejected with a distinct error message; samples are mapped
/// to the unit interval as v/255.
Image load_image(const std::filesystem::path& path);

/// Writes an 8-bit PNG. Samples are clamped to [0,1] and quantized with
/// round-half-away-from-zero, so save(load(p)) reproduces p's samples.
void save_image(const Image& img, const std::filesystem::path& path);

/// Reads a parsing map stored as a grayscale PNG whose raw sample values
/// are label codes. Reports the first out-of-range code and pixel index.
ParsingMap load_parsing_map(const std::filesystem::path& path);

void save_parsing_map(const ParsingMap& map, const std::filesystem::path& path);

/// Masks travel as grayscale PNGs with 0/255 samples; on load, >=128 is
/// treated as set.
BinaryMask load_mask(const std::filesystem::path& path);

void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

}  // namespace dualfit
