#include "trim/pso.hpp"

#include <random>

namespace trim {

namespace {

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw; avoids distribution implementation differences
  return double(rng() >> 11) * 0x1.0p-53;
}

/// Cumulative probability and first-moment tables for O(l) region sums.
struct ChannelTables {
  std::vector<double> cum_p, cum_ip;
  double mu_t = 0;

  ChannelTables(const ChannelHistogram& hist, int channel) {
    const int L = hist.levels;
    cum_p.resize(L + 1, 0.0);
    cum_ip.resize(L + 1, 0.0);
    const double n = double(hist.pixel_count);
    for (int i = 0; i < L; ++i) {
      const double p = hist.counts(i, channel) / n;
      cum_p[i + 1] = cum_p[i] + p;
      cum_ip[i + 1] = cum_ip[i] + double(i) * p;
    }
    mu_t = cum_ip[L];
  }

  // thresholds sorted ascending; ties yield empty regions which contribute 0
  double cost(const std::vector<int>& thresholds, int L) const {
    double sigma = 0;
    int lo = 0;
    for (size_t j = 0; j <= thresholds.size(); ++j) {
      const int hi = j < thresholds.size() ? thresholds[j] : L - 1;
      if (hi < lo) {
        lo = hi + 1;
        continue;
      }
      const double w = cum_p[hi + 1] - cum_p[lo];
      if (w > 0) {
        const double mu = (cum_ip[hi + 1] - cum_ip[lo]) / w;
        sigma += w * (mu - mu_t) * (mu - mu_t);
      }
      lo = hi + 1;
    }
    return sigma;
  }
};

std::vector<int> roundSorted(const Eigen::VectorXd& pos, int lo, int hi) {
  std::vector<int> t(pos.size());
  for (int i = 0; i < pos.size(); ++i)
    t[i] = std::clamp(static_cast<int>(std::lround(pos[i])), lo, hi);
  std::sort(t.begin(), t.end());
  return t;
}

void repairStrictlyIncreasing(std::vector<int>& t, int lo, int hi) {
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i] <= t[i - 1]) t[i] = t[i - 1] + 1;
  for (size_t i = t.size(); i-- > 0;) {
    const int cap = hi - int(t.size() - 1 - i);
    if (t[i] > cap) t[i] = cap;
  }
  for (size_t i = 0; i < t.size(); ++i) t[i] = std::max(t[i], lo + int(i));
}

std::vector<int> occupiedLevelFallback(const ChannelHistogram& hist, int channel, int count,
                                       int lo, int hi) {
  std::vector<int> t;
  for (int i = 0; i < hist.levels - 1 && int(t.size()) < count; ++i)
    if (hist.counts(i, channel) > 0) t.push_back(std::max(i, lo));
  int next = t.empty() ? lo : t.back() + 1;
  while (int(t.size()) < count) t.push_back(next++);
  repairStrictlyIncreasing(t, lo, hi);
  return t;
}

}  // namespace

ThresholdSet psoOptimize(const ChannelHistogram& hist, int region_count, const PsoParams& params,
                         std::vector<std::string>* warnings) {
  params.validate();
  const int L = hist.levels;
  if (region_count < 2) throw std::invalid_argument("psoOptimize: region count must be >= 2");
  if (region_count > L) throw std::invalid_argument("psoOptimize: region count exceeds levels");
  const int dim = region_count - 1;
  const int lo = dim <= L - 2 ? 1 : 0;  // widen only if [1, L-2] cannot hold l-1 values
  const int hi = L - 2;
  const double vmax = params.velocity_clamp_fraction * L;

  ThresholdSet out;
  out.region_count = region_count;

  for (int c = 0; c < 3; ++c) {
    int occupied = 0;
    for (int i = 0; i < L; ++i)
      if (hist.counts(i, c) > 0) ++occupied;
    if (occupied < region_count) {
      if (warnings)
        warnings->push_back("psoOptimize: channel " + std::to_string(c) + " has only " +
                            std::to_string(occupied) +
                            " occupied levels; falling back to occupied-level boundaries");
      out.levels[c] = occupiedLevelFallback(hist, c, dim, lo, hi);
      continue;
    }

    const ChannelTables tables(hist, c);
    std::mt19937_64 rng(params.seed + 0x9e3779b97f4a7c15ull * std::uint64_t(c + 1));

    std::vector<Eigen::VectorXd> pos(params.swarm_size), vel(params.swarm_size),
        pbest(params.swarm_size);
    std::vector<double> pbest_cost(params.swarm_size, -1.0);
    Eigen::VectorXd gbest;
    double gbest_cost = -1.0;

    for (int i = 0; i < params.swarm_size; ++i) {
      pos[i].resize(dim);
      for (int d = 0; d < dim; ++d) pos[i][d] = lo + uniform01(rng) * (hi - lo);
      vel[i] = Eigen::VectorXd::Zero(dim);
      pbest[i] = pos[i];
      pbest_cost[i] = tables.cost(roundSorted(pos[i], lo, hi), L);
      if (pbest_cost[i] > gbest_cost) {
        gbest_cost = pbest_cost[i];
        gbest = pos[i];
      }
    }

    for (int it = 0; it < params.iterations; ++it) {
      for (int i = 0; i < params.swarm_size; ++i) {
        for (int d = 0; d < dim; ++d) {
          const double r1 = uniform01(rng), r2 = uniform01(rng);
          vel[i][d] = params.inertia * vel[i][d] +
                      params.cognitive * r1 * (pbest[i][d] - pos[i][d]) +
                      params.social * r2 * (gbest[d] - pos[i][d]);
          vel[i][d] = std::clamp(vel[i][d], -vmax, vmax);
          pos[i][d] = std::clamp(pos[i][d] + vel[i][d], double(lo), double(hi));
        }
        const double cost = tables.cost(roundSorted(pos[i], lo, hi), L);
        if (cost > pbest_cost[i]) {
          pbest_cost[i] = cost;
          pbest[i] = pos[i];
        }
      }
      // global-best reduction in particle index order
      for (int i = 0; i < params.swarm_size; ++i) {
        if (pbest_cost[i] > gbest_cost) {
          gbest_cost = pbest_cost[i];
          gbest = pbest[i];
        }
      }
    }

    std::vector<int> best = roundSorted(gbest, lo, hi);
    repairStrictlyIncreasing(best, lo, hi);
    out.levels[c] = std::move(best);
  }
  return out;
}

std::vector<int> exhaustiveOptimalThresholds(const ChannelHistogram& hist, int region_count,
                                             int channel, double* best_cost) {
  const int L = hist.levels;
  const int dim = region_count - 1;
  const int lo = dim <= L - 2 ? 1 : 0;
  const int hi = L - 2;
  std::vector<int> current(dim), best;
  double best_sigma = -1.0;

  // enumerate all strictly increasing tuples in [lo, hi]
  auto rec = [&](auto&& self, int d, int start) -> void {
    if (d == dim) {
      const double sigma = betweenClassVariance(hist, current, channel);
      if (sigma > best_sigma) {
        best_sigma = sigma;
        best = current;
      }
      return;
    }
    for (int v = start; v <= hi - (dim - 1 - d); ++v) {
      current[d] = v;
      self(self, d + 1, v + 1);
    }
  };
  rec(rec, 0, lo);
  if (best_cost) *best_cost = best_sigma;
  return best;
}

}  // namespace trim
