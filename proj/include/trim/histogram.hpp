#pragma once

#include "trim/image.hpp"

namespace trim {

/// Per-channel intensity histogram of a 3-channel image quantized to
/// `levels` bins, with cumulative tables for fast region statistics.
struct ChannelHistogram {
  int levels = 256;
  std::int64_t pixel_count = 0;
  Eigen::MatrixXd counts;  // levels x 3

  Eigen::MatrixXd probabilities() const { return counts / double(pixel_count); }

  double globalMean(int channel) const {
    double m = 0;
    for (int i = 0; i < levels; ++i) m += double(i) * counts(i, channel);
    return m / double(pixel_count);
  }
};

inline int quantizeLevel(double intensity, int levels) {
  const int q = static_cast<int>(std::floor(intensity * (levels - 1) + 0.5));
  return std::clamp(q, 0, levels - 1);
}

inline ChannelHistogram channelHistogram(const RasterImage& img, int levels = 256) {
  detail::requireChannels(img.channels(), 3, "channelHistogram");
  if (img.width <= 0 || img.height <= 0)
    throw std::invalid_argument("channelHistogram: empty image");
  if (levels < 2) throw std::invalid_argument("channelHistogram: levels must be >= 2");
  ChannelHistogram h;
  h.levels = levels;
  h.pixel_count = std::int64_t(img.width) * img.height;
  h.counts = Eigen::MatrixXd::Zero(levels, 3);
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x)
        h.counts(quantizeLevel(img.planes[c](y, x), levels), c) += 1.0;
  return h;
}

}  // namespace trim
