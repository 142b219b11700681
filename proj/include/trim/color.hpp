#pragma once

#include "trim/image.hpp"

namespace trim {

namespace detail {

// sRGB <-> XYZ, D65. The white point is taken as the exact row sums of the
// forward matrix so that RGB (1,1,1) lands on a* = b* = 0.
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041}};
constexpr double kXyzToRgb[3][3] = {
    {3.2404542, -1.5371385, -0.4985314},
    {-0.9692660, 1.8760108, 0.0415560},
    {0.0556434, -0.2040259, 1.0572252}};
constexpr double kWhiteX = kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2];
constexpr double kWhiteY = kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2];
constexpr double kWhiteZ = kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2];

inline double srgbToLinear(double v) {
  return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}
inline double linearToSrgb(double v) {
  return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}
inline double labForward(double t) {
  constexpr double eps = 216.0 / 24389.0;   // (6/29)^3
  constexpr double kappa = 24389.0 / 27.0;  // (29/3)^3
  return t > eps ? std::cbrt(t) : (kappa * t + 16.0) / 116.0;
}
inline double labInverse(double ft) {
  constexpr double eps = 216.0 / 24389.0;
  constexpr double kappa = 24389.0 / 27.0;
  const double t3 = ft * ft * ft;
  return t3 > eps ? t3 : (116.0 * ft - 16.0) / kappa;
}

inline void rgbPixelToLab(double r, double g, double b, double& L, double& a, double& bb) {
  const double rl = srgbToLinear(r), gl = srgbToLinear(g), bl = srgbToLinear(b);
  const double x = kRgbToXyz[0][0] * rl + kRgbToXyz[0][1] * gl + kRgbToXyz[0][2] * bl;
  const double y = kRgbToXyz[1][0] * rl + kRgbToXyz[1][1] * gl + kRgbToXyz[1][2] * bl;
  const double z = kRgbToXyz[2][0] * rl + kRgbToXyz[2][1] * gl + kRgbToXyz[2][2] * bl;
  const double fx = labForward(x / kWhiteX);
  const double fy = labForward(y / kWhiteY);
  const double fz = labForward(z / kWhiteZ);
  L = 116.0 * fy - 16.0;
  a = 500.0 * (fx - fy);
  bb = 200.0 * (fy - fz);
}

inline void labPixelToRgb(double L, double a, double bb, double& r, double& g, double& b) {
  const double fy = (L + 16.0) / 116.0;
  const double fx = fy + a / 500.0;
  const double fz = fy - bb / 200.0;
  const double x = kWhiteX * labInverse(fx);
  const double y = kWhiteY * labInverse(fy);
  const double z = kWhiteZ * labInverse(fz);
  const double rl = kXyzToRgb[0][0] * x + kXyzToRgb[0][1] * y + kXyzToRgb[0][2] * z;
  const double gl = kXyzToRgb[1][0] * x + kXyzToRgb[1][1] * y + kXyzToRgb[1][2] * z;
  const double bl = kXyzToRgb[2][0] * x + kXyzToRgb[2][1] * y + kXyzToRgb[2][2] * z;
  r = std::clamp(linearToSrgb(rl), 0.0, 1.0);
  g = std::clamp(linearToSrgb(gl), 0.0, 1.0);
  b = std::clamp(linearToSrgb(bl), 0.0, 1.0);
}

}  // namespace detail

/// sRGB -> CIELAB with the Lab channels rescaled to [0,1]:
/// L* in [0,100], a*,b* in [-128,127].
template <typename Scalar>
RasterImageT<Scalar> rgbToLab(const RasterImageT<Scalar>& img) {
  detail::requireChannels(img.channels(), 3, "rgbToLab");
  if (img.colorspace != ColorSpace::Rgb)
    throw std::invalid_argument("rgbToLab: input must be RGB");
  RasterImageT<Scalar> out(img.width, img.height, 3, ColorSpace::Lab);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double L, a, b;
      detail::rgbPixelToLab(img.planes[0](y, x), img.planes[1](y, x), img.planes[2](y, x), L, a, b);
      out.planes[0](y, x) = Scalar(std::clamp(L / 100.0, 0.0, 1.0));
      out.planes[1](y, x) = Scalar(std::clamp((a + 128.0) / 255.0, 0.0, 1.0));
      out.planes[2](y, x) = Scalar(std::clamp((b + 128.0) / 255.0, 0.0, 1.0));
    }
  }
  return out;
}

template <typename Scalar>
RasterImageT<Scalar> labToRgb(const RasterImageT<Scalar>& img) {
  detail::requireChannels(img.channels(), 3, "labToRgb");
  if (img.colorspace != ColorSpace::Lab)
    throw std::invalid_argument("labToRgb: input must be CIELAB");
  RasterImageT<Scalar> out(img.width, img.height, 3, ColorSpace::Rgb);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double L = img.planes[0](y, x) * 100.0;
      const double a = img.planes[1](y, x) * 255.0 - 128.0;
      const double b = img.planes[2](y, x) * 255.0 - 128.0;
      double r, g, bb;
      detail::labPixelToRgb(L, a, b, r, g, bb);
      out.planes[0](y, x) = Scalar(r);
      out.planes[1](y, x) = Scalar(g);
      out.planes[2](y, x) = Scalar(bb);
    }
  }
  return out;
}

}  // namespace trim
