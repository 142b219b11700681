#pragma once

#include "trim/image.hpp"

#include <string>

namespace trim {

/// Reads an 8-bit PNG or JPEG (decided by magic bytes); intensities mapped to
/// [0,1] by /255. Gray+alpha and RGBA collapse to gray / RGB.
RasterImage readImage(const std::string& path);

/// Writes an 8-bit PNG (1 or 3 channels, values clamped to [0,1]).
void writePng(const std::string& path, const RasterImage& img);

/// Writes an 8-bit JPEG; used by tests to exercise the JPEG read path.
void writeJpeg(const std::string& path, const RasterImage& img, int quality = 95);

}  // namespace trim
