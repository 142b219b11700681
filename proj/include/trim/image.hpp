#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace trim {

enum class ColorSpace { Rgb, Lab };

/// Dense raster image: one row-major plane per channel, intensities in [0,1].
/// Lab images store L in [0,1] (maps L* in [0,100]) and a,b in [0,1]
/// (map [-128,127]).
template <typename Scalar>
struct RasterImageT {
  using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  int width = 0;
  int height = 0;
  ColorSpace colorspace = ColorSpace::Rgb;
  std::vector<Plane> planes;  // planes[c](y, x)

  RasterImageT() = default;
  RasterImageT(int w, int h, int channels, ColorSpace cs = ColorSpace::Rgb)
      : width(w), height(h), colorspace(cs) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
    if (channels != 1 && channels != 3) throw std::invalid_argument("channels must be 1 or 3");
    planes.assign(static_cast<size_t>(channels), Plane::Zero(h, w));
  }

  int channels() const { return static_cast<int>(planes.size()); }
  Scalar& at(int c, int x, int y) { return planes[c](y, x); }
  Scalar at(int c, int x, int y) const { return planes[c](y, x); }

  static RasterImageT constant(int w, int h, int channels, Scalar value,
                               ColorSpace cs = ColorSpace::Rgb) {
    RasterImageT img(w, h, channels, cs);
    for (auto& p : img.planes) p.setConstant(value);
    return img;
  }

  /// Replicates a single-channel image into three identical channels.
  RasterImageT toThreeChannel() const {
    if (channels() == 3) return *this;
    RasterImageT out(width, height, 3, colorspace);
    for (int c = 0; c < 3; ++c) out.planes[c] = planes[0];
    return out;
  }

  bool finiteInUnitRange() const {
    for (const auto& p : planes)
      if (!p.isFinite().all() || (p < Scalar(0)).any() || (p > Scalar(1)).any()) return false;
    return true;
  }
};

using RasterImage = RasterImageT<double>;

namespace detail {
inline void requireChannels(int got, int want, const char* op) {
  if (got != want)
    throw std::invalid_argument(std::string(op) + ": expected " + std::to_string(want) +
                                " channels, got " + std::to_string(got));
}
}  // namespace detail

/// Box-filtered downsample so that max(width, height) <= max_dim.
/// Each output pixel is the mean of its source block; a fitting image is
/// returned unchanged.
template <typename Scalar>
RasterImageT<Scalar> subsample(const RasterImageT<Scalar>& img, int max_dim) {
  if (max_dim < 2) throw std::invalid_argument("subsample: max_dim must be >= 2");
  if (img.width < 2 || img.height < 2)
    throw std::invalid_argument("subsample: degenerate image (width or height < 2)");
  if (std::max(img.width, img.height) <= max_dim) return img;

  int ow, oh;
  if (img.width >= img.height) {
    ow = max_dim;
    oh = std::max(1, static_cast<int>(std::lround(double(img.height) * max_dim / img.width)));
  } else {
    oh = max_dim;
    ow = std::max(1, static_cast<int>(std::lround(double(img.width) * max_dim / img.height)));
  }

  RasterImageT<Scalar> out(ow, oh, img.channels(), img.colorspace);
  for (int c = 0; c < img.channels(); ++c) {
    for (int oy = 0; oy < oh; ++oy) {
      const int y0 = static_cast<int>(std::int64_t(oy) * img.height / oh);
      const int y1 = static_cast<int>(std::int64_t(oy + 1) * img.height / oh);
      for (int ox = 0; ox < ow; ++ox) {
        const int x0 = static_cast<int>(std::int64_t(ox) * img.width / ow);
        const int x1 = static_cast<int>(std::int64_t(ox + 1) * img.width / ow);
        Scalar sum = 0;
        for (int y = y0; y < y1; ++y)
          for (int x = x0; x < x1; ++x) sum += img.planes[c](y, x);
        out.planes[c](oy, ox) = sum / Scalar((y1 - y0) * (x1 - x0));
      }
    }
  }
  return out;
}

}  // namespace trim
