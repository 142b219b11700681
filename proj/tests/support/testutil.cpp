#include "testutil.hpp"

#include <cmath>

namespace trim::test {

RasterImage randomQuantizedImage(int w, int h, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RasterImage img(w, h, channels);
  for (auto& plane : img.planes)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) plane(y, x) = std::round(uniform01(rng) * 255.0) / 255.0;
  return img;
}

RasterImage randomImage(int w, int h, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RasterImage img(w, h, channels);
  for (auto& plane : img.planes)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) plane(y, x) = uniform01(rng);
  return img;
}

RasterImage syntheticNaturalImage(int w, int h, std::uint64_t seed, int shapes) {
  std::mt19937_64 rng(seed);
  RasterImage img(w, h, 3);

  // smooth background: low-frequency cosine mix per channel
  double phases[3][4], freqs[3][4];
  for (int c = 0; c < 3; ++c)
    for (int k = 0; k < 4; ++k) {
      phases[c][k] = uniformIn(rng, 0, 6.283185307179586);
      freqs[c][k] = uniformIn(rng, 0.5, 2.5);
    }
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const double u = double(x) / w, v = double(y) / h;
        double s = 0.5;
        s += 0.12 * std::cos(freqs[c][0] * 6.28 * u + phases[c][0]);
        s += 0.12 * std::cos(freqs[c][1] * 6.28 * v + phases[c][1]);
        s += 0.08 * std::cos(freqs[c][2] * 6.28 * (u + v) + phases[c][2]);
        s += 0.08 * std::cos(freqs[c][3] * 6.28 * (u - v) + phases[c][3]);
        img.planes[c](y, x) = s;
      }

  // flat-colored ellipses and boxes with hard edges
  for (int s = 0; s < shapes; ++s) {
    const double cx = uniformIn(rng, 0.1 * w, 0.9 * w);
    const double cy = uniformIn(rng, 0.1 * h, 0.9 * h);
    const double rx = uniformIn(rng, 0.04, 0.22) * w;
    const double ry = uniformIn(rng, 0.04, 0.22) * h;
    const double ang = uniformIn(rng, 0, 3.14159);
    const bool box = (rng() & 1u) != 0;
    const Eigen::Vector3d color(uniform01(rng), uniform01(rng), uniform01(rng));
    const double ca = std::cos(ang), sa = std::sin(ang);
    const int x0 = std::max(0, int(cx - rx - ry)), x1 = std::min(w, int(cx + rx + ry) + 1);
    const int y0 = std::max(0, int(cy - rx - ry)), y1 = std::min(h, int(cy + rx + ry) + 1);
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x) {
        const double dx = (x - cx) * ca + (y - cy) * sa;
        const double dy = -(x - cx) * sa + (y - cy) * ca;
        const bool inside = box ? (std::abs(dx) < rx && std::abs(dy) < ry)
                                : (dx * dx / (rx * rx) + dy * dy / (ry * ry) < 1.0);
        if (inside)
          for (int c = 0; c < 3; ++c) img.planes[c](y, x) = 0.75 * color[c] + 0.25 * img.planes[c](y, x);
      }
  }

  // mild pixel noise, then clamp and quantize like an 8-bit source
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        double v = img.planes[c](y, x) + uniformIn(rng, -0.01, 0.01);
        img.planes[c](y, x) = std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0;
      }
  return img;
}

}  // namespace trim::test
