#pragma once

#include "trim/threshold.hpp"

#include <cstdint>
#include <string>

namespace trim {

/// Global-best particle swarm settings. The seed fixes all randomness; two
/// runs with identical inputs and seed return identical thresholds.
struct PsoParams {
  int swarm_size = 30;
  int iterations = 100;
  double inertia = 0.72;
  double cognitive = 1.49;
  double social = 1.49;
  double velocity_clamp_fraction = 0.25;  // of the level count
  std::uint64_t seed = 0;

  void validate() const {
    if (swarm_size < 2) throw std::invalid_argument("PsoParams: swarm_size must be >= 2");
    if (iterations < 1) throw std::invalid_argument("PsoParams: iterations must be >= 1");
  }
};

/// Maximizes the between-class variance of each channel independently over
/// integer thresholds in [1, L-2]. Channels with fewer occupied levels than
/// regions fall back to occupied-level boundaries and warn.
ThresholdSet psoOptimize(const ChannelHistogram& hist, int region_count, const PsoParams& params,
                         std::vector<std::string>* warnings = nullptr);

/// Exhaustive search over the same feasible set psoOptimize uses; intended as
/// a test oracle for small level counts.
std::vector<int> exhaustiveOptimalThresholds(const ChannelHistogram& hist, int region_count,
                                             int channel, double* best_cost = nullptr);

}  // namespace trim
