#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trim/sampling.hpp"

#include <random>
#include <sstream>

using namespace trim;

namespace {

BoundarySet boundaryFromPixels(int w, int h, const std::vector<Eigen::Vector2i>& px) {
  BoundarySet b;
  b.width = w;
  b.height = h;
  b.mask.setConstant(h, w, false);
  for (const auto& p : px) {
    b.mask(p.y(), p.x()) = true;
    b.coords.push_back(p);
  }
  return b;
}

}  // namespace

TEST_CASE("grid sizing reproduces the 640x425 reference numbers") {
  const auto g = sizeGrid(640, 425, 0.2, 1000);
  CHECK(g.rows == 40);
  CHECK(g.cols == 61);
  CHECK(g.cell_h == doctest::Approx(10.625).epsilon(1e-12));
  CHECK(g.cell_w == doctest::Approx(640.0 / 61.0).epsilon(1e-12));
  // predicted intersection count p*(w' + h' + 2 w' h') comes out near n
  const double predicted = 0.2 * (g.cols + g.rows + 2.0 * g.cols * g.rows);
  CHECK(predicted == doctest::Approx(996.2).epsilon(1e-12));
}

TEST_CASE("square images give square cells") {
  const auto g = sizeGrid(512, 512, 0.2, 800);
  CHECK(g.cols == g.rows);
  CHECK(g.cell_w == doctest::Approx(g.cell_h));
}

TEST_CASE("quadrupling n doubles the grid resolution") {
  const auto g1 = sizeGrid(640, 480, 0.2, 500);
  const auto g4 = sizeGrid(640, 480, 0.2, 2000);
  // sqrt law before flooring; allow one unit of flooring slack
  CHECK(std::abs(g4.cols - 2 * g1.cols) <= 1);
  CHECK(std::abs(g4.rows - 2 * g1.rows) <= 1);
}

TEST_CASE("grid sizing validates its inputs and clamps tiny grids") {
  CHECK_THROWS(sizeGrid(640, 425, 0.0, 100));
  CHECK_THROWS(sizeGrid(640, 425, 1.5, 100));
  CHECK_THROWS(sizeGrid(640, 425, 0.2, 3));
  CHECK_THROWS(sizeGrid(8, 425, 0.2, 100));
  std::vector<std::string> warnings;
  const auto g = sizeGrid(2000, 16, 1.0, 4, &warnings);  // extreme aspect forces clamping
  CHECK(g.rows >= 1);
  CHECK(g.cols >= 1);
}

TEST_CASE("empty boundary near an edge contributes nothing") {
  const auto g = sizeGrid(100, 100, 0.2, 64);
  const auto sets = intersectSegments(boundaryFromPixels(100, 100, {}), g);
  for (const auto& s : sets.horizontal) CHECK(s.empty());
  for (const auto& s : sets.vertical) CHECK(s.empty());
}

TEST_CASE("a single pixel 0.3 px from an edge lands on exactly that edge") {
  SamplingGrid g;
  g.width = 100;
  g.height = 96.8;
  g.cols = 4;
  g.rows = 4;
  g.cell_w = 25;
  g.cell_h = 24.2;
  // pixel center (10.5, 24.5) is 0.3 px from horizontal line i=1 (y = 24.2)
  const auto sets = intersectSegments(boundaryFromPixels(100, 100, {{10, 24}}), g);
  int total = 0;
  for (const auto& s : sets.horizontal) total += int(s.size());
  for (const auto& s : sets.vertical) total += int(s.size());
  CHECK(total == 1);
  REQUIRE(sets.h(1, 0).size() == 1);
  CHECK(sets.h(1, 0)[0] == Eigen::Vector2d(10.5, 24.5));
}

TEST_CASE("a boundary run crossing one edge produces one edge set of size 3") {
  SamplingGrid g;
  g.width = 100;
  g.height = 100;
  g.cols = 4;
  g.rows = 4;
  g.cell_w = 25;
  g.cell_h = 25;
  // pixels with centers on y = 24.5, within 0.5 px of the i=1 grid line,
  // all inside horizontal edge (1, 1): x in [25, 50)
  const std::vector<Eigen::Vector2i> run = {{30, 24}, {31, 24}, {32, 24}};
  // independent check: distance of each center to the supporting segment
  for (const auto& p : run) {
    const double dy = std::abs((p.y() + 0.5) - 25.0);
    CHECK(dy <= 0.5);
  }
  const auto sets = intersectSegments(boundaryFromPixels(100, 100, run), g);
  CHECK(sets.h(1, 1).size() == 3);
}

TEST_CASE("merge of none, one and many points") {
  CHECK(!mergePoints({}).has_value());
  CHECK(*mergePoints({{1.0, 2.0}}) == Eigen::Vector2d(1.0, 2.0));
  const auto m = *mergePoints({{1, 2}, {1, 2.5}, {1, 3}});
  CHECK(m == Eigen::Vector2d(1.0, 2.5));
}

TEST_CASE("merged points stay inside the convex hull of their sources") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Eigen::Vector2d> pts;
    double minx = 1e9, maxx = -1e9, miny = 1e9, maxy = -1e9;
    const int n = 2 + int(rng() % 5);
    for (int i = 0; i < n; ++i) {
      const double x = double(rng() % 1000) / 10.0, y = double(rng() % 1000) / 10.0;
      pts.push_back({x, y});
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
    const auto m = *mergePoints(pts);
    CHECK(m.x() >= minx);
    CHECK(m.x() <= maxx);
    CHECK(m.y() >= miny);
    CHECK(m.y() <= maxy);
  }
}

TEST_CASE("landmarks join the set verbatim and evict nearby points") {
  FeaturePointSet p;
  p.width = 100;
  p.height = 100;
  p.points.push_back({{50.0, 50.0}, FeatureTag::Intersection});
  p.points.push_back({{10.0, 10.0}, FeatureTag::Intersection});

  SUBCASE("empty landmark set leaves points unchanged") {
    const auto out = addLandmarks(p, {}, 2.0);
    CHECK(out.points.size() == 2);
    CHECK(out.landmark_indices.empty());
  }

  SUBCASE("coincident intersection point is dropped, landmark kept") {
    const auto out = addLandmarks(p, {{50.0, 50.0}}, 2.0);
    REQUIRE(out.landmark_indices.size() == 1);
    CHECK(out.points.size() == 2);  // one evicted, one landmark added
    const auto& lm = out.points[out.landmark_indices[0]];
    CHECK(lm.pos == Eigen::Vector2d(50.0, 50.0));
    CHECK(lm.tag == FeatureTag::Landmark);
  }

  SUBCASE("close landmarks are both kept with a warning") {
    std::vector<std::string> warnings;
    const auto out = addLandmarks(p, {{20.0, 20.0}, {20.05, 20.0}}, 2.0, &warnings);
    CHECK(out.landmark_indices.size() == 2);
    CHECK(!warnings.empty());
    CHECK(out.points[out.landmark_indices[0]].pos == Eigen::Vector2d(20.0, 20.0));
    CHECK(out.points[out.landmark_indices[1]].pos == Eigen::Vector2d(20.05, 20.0));
  }

  SUBCASE("landmark outside the image is rejected naming its index") {
    try {
      addLandmarks(p, {{20.0, 20.0}, {120.0, 20.0}}, 2.0);
      FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
  }
}

TEST_CASE("frame points: 16 on an empty 100x100 set with 25 px cells") {
  SamplingGrid g;
  g.width = 100;
  g.height = 100;
  g.cols = 4;
  g.rows = 4;
  g.cell_w = 25;
  g.cell_h = 25;
  FeaturePointSet p;
  p.width = 100;
  p.height = 100;
  const auto out = addFramePoints(p, g);
  CHECK(out.points.size() == 16);
  int corners = 0;
  for (const auto& fp : out.points) {
    CHECK(fp.tag == FeatureTag::Frame);
    const bool on_border = fp.pos.x() == 0 || fp.pos.x() == 100 || fp.pos.y() == 0 || fp.pos.y() == 100;
    CHECK(on_border);
    if ((fp.pos.x() == 0 || fp.pos.x() == 100) && (fp.pos.y() == 0 || fp.pos.y() == 100)) ++corners;
  }
  CHECK(corners == 4);
}

TEST_CASE("existing corners are not duplicated") {
  SamplingGrid g;
  g.width = 100;
  g.height = 100;
  g.cols = 1;
  g.rows = 1;
  g.cell_w = 100;
  g.cell_h = 100;
  FeaturePointSet p;
  p.width = 100;
  p.height = 100;
  p.points.push_back({{0.0, 0.0}, FeatureTag::Landmark});
  p.landmark_indices.push_back(0);
  const auto out = addFramePoints(p, g);
  CHECK(out.points.size() == 4);  // existing corner + 3 added
}

TEST_CASE("single-cell grid adds exactly the 4 corners") {
  SamplingGrid g;
  g.width = 64;
  g.height = 48;
  g.cols = 1;
  g.rows = 1;
  g.cell_w = 64;
  g.cell_h = 48;
  FeaturePointSet p;
  p.width = 64;
  p.height = 48;
  const auto out = addFramePoints(p, g);
  CHECK(out.points.size() == 4);
}

TEST_CASE("feature text round trip") {
  FeaturePointSet p;
  p.width = 10;
  p.height = 10;
  p.points.push_back({{1.25, 2.5}, FeatureTag::Merged});
  p.points.push_back({{3.0, 4.0}, FeatureTag::Landmark});
  p.landmark_indices.push_back(1);
  std::stringstream ss;
  writeFeaturePointsText(ss, p);
  const auto back = readFeaturePointsText(ss, 10, 10);
  REQUIRE(back.points.size() == 2);
  CHECK(back.points[0].pos == p.points[0].pos);
  CHECK(back.points[1].tag == FeatureTag::Landmark);
  CHECK(back.landmark_indices == std::vector<int>{1});
}

TEST_CASE("all collected features stay inside the image rectangle") {
  std::mt19937_64 rng(31);
  const auto g = sizeGrid(200, 150, 0.2, 300);
  std::vector<Eigen::Vector2i> px;
  for (int i = 0; i < 500; ++i) px.push_back({int(rng() % 200), int(rng() % 150)});
  auto b = boundaryFromPixels(200, 150, px);
  auto features = collectSparseFeatures(b, g);
  features = addFramePoints(features, g);
  for (const auto& fp : features.points) {
    CHECK(fp.pos.x() >= 0);
    CHECK(fp.pos.x() <= 200);
    CHECK(fp.pos.y() >= 0);
    CHECK(fp.pos.y() <= 150);
  }
}
