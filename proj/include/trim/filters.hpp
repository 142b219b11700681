#pragma once

#include "trim/image.hpp"

#include <utility>

namespace trim {

/// Gain, blur width, statistics disk radius and activation threshold for the
/// variance-gated unsharp mask. Shipped preset: lambda 0.5, sigma 2, s 2,
/// theta 0.5.
struct UnsharpParams {
  double lambda = 0.5;
  double sigma = 2.0;
  int s = 2;
  double theta = 0.5;

  void validate() const {
    if (lambda < 0) throw std::invalid_argument("UnsharpParams: lambda must be >= 0");
    if (sigma <= 0) throw std::invalid_argument("UnsharpParams: sigma must be > 0");
    if (s < 1) throw std::invalid_argument("UnsharpParams: s must be >= 1");
    if (theta < 0) throw std::invalid_argument("UnsharpParams: theta must be >= 0");
  }
};

enum class UnsharpMode {
  Subtractive,  // I - lambda * (G ∗ I) where the local variance gate is open
  Classic       // I + lambda * (I - G ∗ I)
};

namespace detail {

inline int reflectIndex(int i, int n) {
  // reflect-101 style without repeating the edge sample, e.g. -1 -> 1
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

/// Integer offsets of the discrete disk {(dx,dy) : dx^2 + dy^2 <= s^2}.
inline std::vector<std::pair<int, int>> diskOffsets(int s) {
  std::vector<std::pair<int, int>> offs;
  for (int dy = -s; dy <= s; ++dy)
    for (int dx = -s; dx <= s; ++dx)
      if (dx * dx + dy * dy <= s * s) offs.emplace_back(dx, dy);
  return offs;
}

}  // namespace detail

/// Truncated (radius ceil(3*sigma)) and renormalized 1D Gaussian kernel.
inline Eigen::VectorXd gaussianKernel(double sigma) {
  if (sigma <= 0) throw std::invalid_argument("gaussianKernel: sigma must be > 0");
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  Eigen::VectorXd k(2 * r + 1);
  for (int i = -r; i <= r; ++i) k(i + r) = std::exp(-0.5 * (double(i) * i) / (sigma * sigma));
  k /= k.sum();
  return k;
}

/// Separable Gaussian blur with reflect padding. The implied 2D kernel is the
/// outer product of the normalized 1D kernel with itself (square support of
/// radius ceil(3*sigma)).
template <typename Scalar>
typename RasterImageT<Scalar>::Plane gaussianBlur(const typename RasterImageT<Scalar>::Plane& in,
                                                  double sigma) {
  const Eigen::VectorXd k = gaussianKernel(sigma);
  const int r = static_cast<int>(k.size() / 2);
  const int h = static_cast<int>(in.rows()), w = static_cast<int>(in.cols());
  typename RasterImageT<Scalar>::Plane tmp(h, w), out(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0;
      for (int i = -r; i <= r; ++i) acc += k(i + r) * in(y, detail::reflectIndex(x + i, w));
      tmp(y, x) = Scalar(acc);
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0;
      for (int i = -r; i <= r; ++i) acc += k(i + r) * tmp(detail::reflectIndex(y + i, h), x);
      out(y, x) = Scalar(acc);
    }
  return out;
}

/// Per-pixel mean and population standard deviation over the discrete disk of
/// radius s, sampled with reflect padding at the borders.
template <typename Scalar>
std::pair<typename RasterImageT<Scalar>::Plane, typename RasterImageT<Scalar>::Plane> localStats(
    const typename RasterImageT<Scalar>::Plane& in, int s) {
  if (s < 1) throw std::invalid_argument("localStats: radius must be >= 1");
  const auto offs = detail::diskOffsets(s);
  const int h = static_cast<int>(in.rows()), w = static_cast<int>(in.cols());
  typename RasterImageT<Scalar>::Plane mean(h, w), stddev(h, w);
  const double inv = 1.0 / double(offs.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double sum = 0;
      for (auto [dx, dy] : offs)
        sum += in(detail::reflectIndex(y + dy, h), detail::reflectIndex(x + dx, w));
      const double m = sum * inv;
      double var = 0;
      for (auto [dx, dy] : offs) {
        const double d = in(detail::reflectIndex(y + dy, h), detail::reflectIndex(x + dx, w)) - m;
        var += d * d;
      }
      mean(y, x) = Scalar(m);
      stddev(y, x) = Scalar(std::sqrt(var * inv));
    }
  }
  return {mean, stddev};
}

/// Variance-gated unsharp mask on the L channel of a CIELAB image; a,b pass
/// through. Pixels with local stddev V_s <= theta are left untouched.
template <typename Scalar>
RasterImageT<Scalar> unsharpMask(const RasterImageT<Scalar>& img, const UnsharpParams& params,
                                 UnsharpMode mode = UnsharpMode::Subtractive) {
  params.validate();
  if (img.colorspace != ColorSpace::Lab)
    throw std::invalid_argument("unsharpMask: input must be CIELAB");
  const auto& L = img.planes[0];
  const auto blur = gaussianBlur<Scalar>(L, params.sigma);
  const auto [mean, stddev] = localStats<Scalar>(L, params.s);
  RasterImageT<Scalar> out = img;
  const int h = img.height, w = img.width;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (stddev(y, x) > params.theta) {
        const double v = mode == UnsharpMode::Subtractive
                             ? L(y, x) - params.lambda * blur(y, x)
                             : L(y, x) + params.lambda * (L(y, x) - blur(y, x));
        out.planes[0](y, x) = Scalar(std::clamp(v, 0.0, 1.0));
      }
    }
  }
  return out;
}

}  // namespace trim
