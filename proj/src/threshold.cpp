#include "trim/threshold.hpp"

namespace trim {

double betweenClassVariance(const ChannelHistogram& hist, const std::vector<int>& thresholds,
                            int channel) {
  const int L = hist.levels;
  for (size_t k = 0; k + 1 < thresholds.size(); ++k)
    if (thresholds[k] >= thresholds[k + 1])
      throw std::invalid_argument("betweenClassVariance: thresholds must be strictly increasing");
  const double n = double(hist.pixel_count);
  const double mu_t = hist.globalMean(channel);

  double sigma = 0;
  int lo = 0;  // first level of the current region
  for (size_t j = 0; j <= thresholds.size(); ++j) {
    const int hi = j < thresholds.size() ? thresholds[j] : L - 1;  // inclusive
    double w = 0, m = 0;
    for (int i = std::max(lo, 0); i <= std::min(hi, L - 1); ++i) {
      const double p = hist.counts(i, channel) / n;
      w += p;
      m += double(i) * p;
    }
    if (w > 0) {
      const double mu_j = m / w;
      sigma += w * (mu_j - mu_t) * (mu_j - mu_t);
    }
    lo = hi + 1;
  }
  return sigma;
}

LabelField applyThresholds(const RasterImage& img, const ThresholdSet& thr, int levels) {
  detail::requireChannels(img.channels(), 3, "applyThresholds");
  LabelField out;
  out.width = img.width;
  out.height = img.height;
  out.region_count = thr.region_count;
  for (int c = 0; c < 3; ++c) {
    const auto& t = thr.levels[c];
    out.planes[c].resize(img.height, img.width);
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x) {
        const int level = quantizeLevel(img.planes[c](y, x), levels);
        // region j = 1 + number of thresholds strictly below the level
        int j = 1;
        for (int tv : t)
          if (tv < level) ++j;
        out.planes[c](y, x) = j;
      }
  }
  return out;
}

BoundarySet extractBoundaries(const LabelField& labels) {
  BoundarySet b;
  b.width = labels.width;
  b.height = labels.height;
  b.mask.setConstant(labels.height, labels.width, false);
  static constexpr int dx[4] = {1, -1, 0, 0};
  static constexpr int dy[4] = {0, 0, 1, -1};
  for (int y = 0; y < labels.height; ++y)
    for (int x = 0; x < labels.width; ++x) {
      const int self = labels.packed(x, y);
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k], ny = y + dy[k];
        if (nx < 0 || ny < 0 || nx >= labels.width || ny >= labels.height) continue;
        if (labels.packed(nx, ny) != self) {
          b.mask(y, x) = true;
          break;
        }
      }
      if (b.mask(y, x)) b.coords.emplace_back(x, y);
    }
  return b;
}

}  // namespace trim
