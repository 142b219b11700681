#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trim/histogram.hpp"
#include "trim/pso.hpp"
#include "trim/threshold.hpp"

#include "support/testutil.hpp"

using namespace trim;

namespace {

ChannelHistogram histFromProbs(const std::vector<double>& probs, std::int64_t n = 1000) {
  ChannelHistogram h;
  h.levels = static_cast<int>(probs.size());
  h.pixel_count = n;
  h.counts = Eigen::MatrixXd::Zero(h.levels, 3);
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < h.levels; ++i) h.counts(i, c) = probs[i] * n;
  return h;
}

ChannelHistogram randomHist(int levels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ChannelHistogram h;
  h.levels = levels;
  h.counts = Eigen::MatrixXd::Zero(levels, 3);
  std::int64_t total = 0;
  for (int i = 0; i < levels; ++i) {
    const auto v = rng() % 50;  // some levels stay empty
    total += v;
    for (int c = 0; c < 3; ++c) h.counts(i, c) = double(v);
  }
  if (total == 0) {
    h.counts(0, 0) = h.counts(0, 1) = h.counts(0, 2) = 1;
    total = 1;
  }
  h.pixel_count = total;
  return h;
}

}  // namespace

TEST_CASE("histogram of a uniform-level image") {
  const auto img = RasterImage::constant(2, 2, 3, 0.0);
  const auto h = channelHistogram(img, 256);
  CHECK(h.counts(0, 0) == 4);
  CHECK(h.counts.col(0).sum() == 4);
  CHECK(h.globalMean(0) == 0.0);
}

TEST_CASE("histogram arithmetic on a two-level image") {
  RasterImage img(2, 2, 3);
  // levels {0, 0, 3, 3} at L = 4: intensities 0 and 1
  img.planes[0] << 0, 0, 1, 1;
  img.planes[1] << 0, 0, 1, 1;
  img.planes[2] << 0, 0, 1, 1;
  const auto h = channelHistogram(img, 4);
  const auto p = h.probabilities();
  CHECK(p(0, 0) == doctest::Approx(0.5));
  CHECK(p(1, 0) == doctest::Approx(0.0));
  CHECK(p(2, 0) == doctest::Approx(0.0));
  CHECK(p(3, 0) == doctest::Approx(0.5));
  CHECK(h.globalMean(0) == doctest::Approx(1.5));
}

TEST_CASE("histogram conserves the pixel count and probabilities sum to 1") {
  const auto img = trim::test::randomQuantizedImage(31, 17, 3, 42);
  const auto h = channelHistogram(img, 256);
  for (int c = 0; c < 3; ++c) {
    CHECK(h.counts.col(c).sum() == 31 * 17);
    CHECK(std::abs(h.probabilities().col(c).sum() - 1.0) <= 1e-12);
  }
  CHECK_THROWS(channelHistogram(RasterImage(), 256));
}

TEST_CASE("between-class variance on the bimodal histogram") {
  const auto h = histFromProbs({0.5, 0.0, 0.0, 0.5});
  // max over all single thresholds is 2.25, attained at x1 in {0,1,2}
  double best = -1;
  int arg = -1;
  for (int t = 0; t <= 2; ++t) {
    const double s = betweenClassVariance(h, {t}, 0);
    if (s > best) {
      best = s;
      arg = t;
    }
  }
  CHECK(best == doctest::Approx(2.25).epsilon(1e-13));
  CHECK(betweenClassVariance(h, {0}, 0) == doctest::Approx(2.25).epsilon(1e-13));
  CHECK(betweenClassVariance(h, {1}, 0) == doctest::Approx(2.25).epsilon(1e-13));
  CHECK(betweenClassVariance(h, {2}, 0) == doctest::Approx(2.25).epsilon(1e-13));
  CHECK(arg == 0);
}

TEST_CASE("between-class variance degenerate single region") {
  const auto h = histFromProbs({0.1, 0.2, 0.3, 0.4});
  CHECK(betweenClassVariance(h, {}, 0) == doctest::Approx(0.0));
}

TEST_CASE("between-class variance of the uniform histogram") {
  const auto h = histFromProbs({0.25, 0.25, 0.25, 0.25});
  CHECK(betweenClassVariance(h, {1}, 0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("law of total mean holds for any thresholds") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto h = randomHist(32, seed);
    std::mt19937_64 rng(seed * 77 + 1);
    std::vector<int> thr;
    int v = 1;
    while (thr.size() < 3 && v < 30) {
      v += 1 + int(rng() % 9);
      if (v <= 30) thr.push_back(v);
    }
    const double n = double(h.pixel_count);
    const double mu_t = h.globalMean(0);
    double wsum = 0, wmu = 0;
    int lo = 0;
    for (size_t j = 0; j <= thr.size(); ++j) {
      const int hi = j < thr.size() ? thr[j] : h.levels - 1;
      double w = 0, m = 0;
      for (int i = lo; i <= hi; ++i) {
        w += h.counts(i, 0) / n;
        m += i * h.counts(i, 0) / n;
      }
      wsum += w;
      wmu += m;
      lo = hi + 1;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wmu == doctest::Approx(mu_t).epsilon(1e-12));
  }
}

TEST_CASE("adding empty levels does not change the optimum") {
  std::vector<double> p8 = {0.2, 0.1, 0, 0.3, 0, 0.1, 0.2, 0.1};
  std::vector<double> p16 = p8;
  p16.resize(16, 0.0);
  double best8, best16;
  exhaustiveOptimalThresholds(histFromProbs(p8), 3, 0, &best8);
  exhaustiveOptimalThresholds(histFromProbs(p16), 3, 0, &best16);
  CHECK(best8 == doctest::Approx(best16).epsilon(1e-12));
}

TEST_CASE("pso finds the bimodal global optimum") {
  const auto h = histFromProbs({0.5, 0.0, 0.0, 0.5});
  PsoParams params;
  params.seed = 7;
  const auto thr = psoOptimize(h, 2, params);
  for (int c = 0; c < 3; ++c) {
    REQUIRE(thr.levels[c].size() == 1);
    CHECK(betweenClassVariance(h, thr.levels[c], c) == doctest::Approx(2.25).epsilon(1e-12));
  }
}

TEST_CASE("pso is deterministic for a fixed seed") {
  const auto h = randomHist(64, 11);
  PsoParams params;
  params.seed = 123;
  const auto a = psoOptimize(h, 4, params);
  const auto b = psoOptimize(h, 4, params);
  for (int c = 0; c < 3; ++c) CHECK(a.levels[c] == b.levels[c]);
  params.seed = 124;
  const auto d = psoOptimize(h, 4, params);  // different seed may differ, must still be valid
  for (int c = 0; c < 3; ++c) {
    for (size_t k = 0; k + 1 < d.levels[c].size(); ++k) CHECK(d.levels[c][k] < d.levels[c][k + 1]);
  }
}

TEST_CASE("single occupied level falls back with a warning and zero cost") {
  std::vector<double> p(16, 0.0);
  p[5] = 1.0;
  const auto h = histFromProbs(p);
  PsoParams params;
  params.seed = 1;
  std::vector<std::string> warnings;
  const auto thr = psoOptimize(h, 2, params, &warnings);
  CHECK(!warnings.empty());
  for (int c = 0; c < 3; ++c)
    CHECK(betweenClassVariance(h, thr.levels[c], c) == doctest::Approx(0.0));
}

TEST_CASE("pso matches exhaustive search on seeded histograms") {
  // L = 16, l = 3 across 50 seeds; exact agreement in >= 95%, within 1% always
  int exact = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto h = randomHist(16, 1000 + seed);
    PsoParams params;
    params.seed = seed;
    const auto thr = psoOptimize(h, 3, params);
    double best;
    exhaustiveOptimalThresholds(h, 3, 0, &best);
    const double got = betweenClassVariance(h, thr.levels[0], 0);
    if (std::abs(got - best) <= 1e-12) ++exact;
    if (best > 0) CHECK(got >= best * 0.99);
  }
  CHECK(exact >= 48);
}

TEST_CASE("apply thresholds: constants, splits and right-closed boundaries") {
  const auto constant = RasterImage::constant(5, 4, 3, 0.4);
  ThresholdSet thr;
  thr.region_count = 2;
  thr.levels = {std::vector<int>{128}, {128}, {128}};
  const auto lf = applyThresholds(constant, thr);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 5; ++x) CHECK(lf.packed(x, y) == lf.packed(0, 0));

  RasterImage twotone(4, 2, 3);
  for (int c = 0; c < 3; ++c) {
    twotone.planes[c] << 0, 0, 1, 1, 0, 0, 1, 1;
  }
  const auto lf2 = applyThresholds(twotone, thr);
  CHECK(lf2.planes[0](0, 0) == 1);
  CHECK(lf2.planes[0](0, 3) == 2);

  // a level equal to the threshold goes to the region on the left
  RasterImage at_thr(1, 1, 3);
  for (int c = 0; c < 3; ++c) at_thr.planes[c](0, 0) = 128.0 / 255.0;
  const auto lf3 = applyThresholds(at_thr, thr);
  CHECK(lf3.planes[0](0, 0) == 1);
}

TEST_CASE("boundary extraction: constants, vertical split, checkerboard") {
  LabelField lf;
  lf.width = 6;
  lf.height = 4;
  lf.region_count = 2;
  for (int c = 0; c < 3; ++c) lf.planes[c] = Eigen::ArrayXXi::Constant(4, 6, 1);
  CHECK(extractBoundaries(lf).empty());

  // vertical split at column 3: both adjacent columns flagged
  for (int y = 0; y < 4; ++y)
    for (int x = 3; x < 6; ++x) lf.planes[0](y, x) = 2;
  const auto b = extractBoundaries(lf);
  for (int y = 0; y < 4; ++y) {
    CHECK(b.mask(y, 2));
    CHECK(b.mask(y, 3));
    CHECK(!b.mask(y, 0));
    CHECK(!b.mask(y, 5));
  }

  LabelField cb;
  cb.width = 5;
  cb.height = 5;
  cb.region_count = 2;
  for (int c = 0; c < 3; ++c) {
    cb.planes[c].resize(5, 5);
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 5; ++x) cb.planes[c](y, x) = 1 + ((x + y) % 2);
  }
  const auto bc = extractBoundaries(cb);
  CHECK(int(bc.coords.size()) == 25);
}

TEST_CASE("boundary flagging is symmetric") {
  std::mt19937_64 rng(9);
  LabelField lf;
  lf.width = 12;
  lf.height = 9;
  lf.region_count = 3;
  for (int c = 0; c < 3; ++c) {
    lf.planes[c].resize(9, 12);
    for (int y = 0; y < 9; ++y)
      for (int x = 0; x < 12; ++x) lf.planes[c](y, x) = 1 + int(rng() % 3);
  }
  const auto b = extractBoundaries(lf);
  // q flags r iff r flags q: check via 4-neighbor difference relation
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x + 1 < 12; ++x)
      if (lf.packed(x, y) != lf.packed(x + 1, y)) {
        CHECK(b.mask(y, x));
        CHECK(b.mask(y, x + 1));
      }
}
