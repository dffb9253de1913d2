#pragma once

#include <string>

#include "c2g/image.hpp"

namespace c2g {

/// Decodes a PNG or JPEG file (detected from its signature) to 8-bit sRGB.
/// Alpha is composited onto white. Throws IoError.
RgbImage read_image(const std::string& path);

/// Writes an 8-bit PNG: single-channel gray when every pixel has R = G = B,
/// RGB otherwise. Throws IoError.
void write_png(const std::string& path, const RgbImage& img);

}  // namespace c2g
