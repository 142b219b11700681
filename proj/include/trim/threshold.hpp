#pragma once

#include "trim/histogram.hpp"

#include <vector>

namespace trim {

/// Ordered threshold levels per channel; level t belongs to the region on its
/// left (intervals are closed on the right at each threshold).
struct ThresholdSet {
  int region_count = 0;                    // l
  std::array<std::vector<int>, 3> levels;  // per channel, strictly increasing, size l-1
};

/// Between-class variance of one channel for the given thresholds
/// (sum over regions of w_j * (mu_j - mu_T)^2; empty regions contribute 0).
double betweenClassVariance(const ChannelHistogram& hist, const std::vector<int>& thresholds,
                            int channel);

/// Per-pixel triple of region indices in [1, l], stored as one plane per
/// channel plus a packed plane for fast label comparisons.
struct LabelField {
  int width = 0, height = 0;
  int region_count = 0;
  std::array<Eigen::ArrayXXi, 3> planes;

  int packed(int x, int y) const {
    const int l = region_count;
    return (planes[0](y, x) - 1) + l * (planes[1](y, x) - 1) + l * l * (planes[2](y, x) - 1);
  }
};

LabelField applyThresholds(const RasterImage& img, const ThresholdSet& thr, int levels = 256);

/// Pixels with at least one 4-neighbor of a different label triple.
struct BoundarySet {
  int width = 0, height = 0;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
  std::vector<Eigen::Vector2i> coords;  // (x, y), row-major order

  bool empty() const { return coords.empty(); }
};

BoundarySet extractBoundaries(const LabelField& labels);

}  // namespace trim
