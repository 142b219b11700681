#include "trim/sampling.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace trim {

SamplingGrid sizeGrid(double width, double height, double sparse_ratio, int target_points,
                      std::vector<std::string>* warnings) {
  if (!(sparse_ratio > 0.0 && sparse_ratio <= 1.0))
    throw std::invalid_argument("sizeGrid: sparse ratio must be in (0, 1]");
  if (target_points < 4) throw std::invalid_argument("sizeGrid: target point count must be >= 4");
  if (width < 16 || height < 16)
    throw std::invalid_argument("sizeGrid: image must be at least 16x16");

  SamplingGrid g;
  g.width = width;
  g.height = height;
  g.sparse_ratio = sparse_ratio;
  g.target_points = target_points;
  g.rows = static_cast<int>(std::floor(std::sqrt(target_points * height / (2.0 * sparse_ratio * width))));
  g.cols = static_cast<int>(std::floor(std::sqrt(target_points * width / (2.0 * sparse_ratio * height))));
  if (g.rows < 1 || g.cols < 1) {
    if (warnings) warnings->push_back("sizeGrid: grid collapsed to a single cell; clamping to 1");
    g.rows = std::max(g.rows, 1);
    g.cols = std::max(g.cols, 1);
  }
  g.cell_h = height / g.rows;
  g.cell_w = width / g.cols;
  return g;
}

EdgePointSets intersectSegments(const BoundarySet& boundary, const SamplingGrid& grid) {
  EdgePointSets sets;
  sets.cols = grid.cols;
  sets.rows = grid.rows;
  sets.horizontal.assign(size_t(grid.rows + 1) * grid.cols, {});
  sets.vertical.assign(size_t(grid.rows) * (grid.cols + 1), {});

  for (const auto& c : boundary.coords) {
    const double px = c.x() + 0.5, py = c.y() + 0.5;

    // nearest horizontal grid line (lower index wins distance ties)
    const int i_lo = std::clamp(static_cast<int>(std::floor(py / grid.cell_h)), 0, grid.rows);
    const int i_hi = std::min(i_lo + 1, grid.rows);
    const double d_lo = std::abs(py - i_lo * grid.cell_h);
    const double d_hi = std::abs(py - i_hi * grid.cell_h);
    const int hi_line = d_lo <= d_hi ? i_lo : i_hi;
    const double h_dist = std::min(d_lo, d_hi);
    const int hj = std::clamp(static_cast<int>(std::floor(px / grid.cell_w)), 0, grid.cols - 1);

    // nearest vertical grid line
    const int j_lo = std::clamp(static_cast<int>(std::floor(px / grid.cell_w)), 0, grid.cols);
    const int j_hi = std::min(j_lo + 1, grid.cols);
    const double e_lo = std::abs(px - j_lo * grid.cell_w);
    const double e_hi = std::abs(px - j_hi * grid.cell_w);
    const int vj_line = e_lo <= e_hi ? j_lo : j_hi;
    const double v_dist = std::min(e_lo, e_hi);
    const int vi = std::clamp(static_cast<int>(std::floor(py / grid.cell_h)), 0, grid.rows - 1);

    const bool h_ok = h_dist <= 0.5, v_ok = v_dist <= 0.5;
    if (!h_ok && !v_ok) continue;
    if (h_ok && (!v_ok || h_dist <= v_dist)) {
      sets.horizontal[size_t(hi_line) * grid.cols + hj].emplace_back(px, py);
    } else {
      sets.vertical[size_t(vi) * (grid.cols + 1) + vj_line].emplace_back(px, py);
    }
  }
  return sets;
}

std::optional<Eigen::Vector2d> mergePoints(const std::vector<Eigen::Vector2d>& edge_points) {
  if (edge_points.empty()) return std::nullopt;
  if (edge_points.size() == 1) return edge_points.front();
  Eigen::Vector2d sum = Eigen::Vector2d::Zero();
  for (const auto& p : edge_points) sum += p;
  return sum / double(edge_points.size());
}

FeaturePointSet collectSparseFeatures(const BoundarySet& boundary, const SamplingGrid& grid) {
  const EdgePointSets sets = intersectSegments(boundary, grid);
  FeaturePointSet out;
  out.width = grid.width;
  out.height = grid.height;
  auto emit = [&](const std::vector<Eigen::Vector2d>& pts) {
    if (auto m = mergePoints(pts))
      out.points.push_back({*m, pts.size() > 1 ? FeatureTag::Merged : FeatureTag::Intersection});
  };
  for (const auto& pts : sets.horizontal) emit(pts);
  for (const auto& pts : sets.vertical) emit(pts);
  return out;
}

FeaturePointSet addLandmarks(const FeaturePointSet& features,
                             const std::vector<Eigen::Vector2d>& landmarks, double dedup_tolerance,
                             std::vector<std::string>* warnings) {
  for (size_t i = 0; i < landmarks.size(); ++i) {
    const auto& q = landmarks[i];
    if (!(q.x() >= 0 && q.x() <= features.width && q.y() >= 0 && q.y() <= features.height))
      throw std::invalid_argument("addLandmarks: landmark " + std::to_string(i) +
                                  " lies outside the image rectangle");
  }
  FeaturePointSet out;
  out.width = features.width;
  out.height = features.height;
  for (const auto& fp : features.points) {
    bool drop = false;
    if (fp.tag != FeatureTag::Landmark)
      for (const auto& q : landmarks)
        if ((fp.pos - q).norm() <= dedup_tolerance) {
          drop = true;
          break;
        }
    if (!drop) out.points.push_back(fp);
  }
  for (size_t i = 0; i < landmarks.size(); ++i) {
    for (size_t j = i + 1; j < landmarks.size(); ++j)
      if ((landmarks[i] - landmarks[j]).norm() <= dedup_tolerance && warnings) {
        warnings->push_back("addLandmarks: landmarks " + std::to_string(i) + " and " +
                            std::to_string(j) + " are closer than the dedup tolerance");
      }
    out.landmark_indices.push_back(int(out.points.size()));
    out.points.push_back({landmarks[i], FeatureTag::Landmark});
  }
  return out;
}

FeaturePointSet addFramePoints(const FeaturePointSet& features, const SamplingGrid& grid) {
  FeaturePointSet out = features;
  const double w = grid.width, h = grid.height;
  const double tol = grid.dedupTolerance();

  auto exactExists = [&](const Eigen::Vector2d& q) {
    for (const auto& fp : out.points)
      if (fp.pos == q) return true;
    return false;
  };
  auto nearExists = [&](const Eigen::Vector2d& q) {
    for (const auto& fp : out.points)
      if ((fp.pos - q).norm() <= tol) return true;
    return false;
  };

  // corners anchor the hull to the image rectangle and are always kept
  const Eigen::Vector2d corners[4] = {{0, 0}, {w, 0}, {w, h}, {0, h}};
  for (const auto& c : corners)
    if (!exactExists(c)) out.points.push_back({c, FeatureTag::Frame});

  for (int j = 1; j < grid.cols; ++j) {
    for (double y : {0.0, h}) {
      const Eigen::Vector2d q(j * grid.cell_w, y);
      if (!nearExists(q)) out.points.push_back({q, FeatureTag::Frame});
    }
  }
  for (int i = 1; i < grid.rows; ++i) {
    for (double x : {0.0, w}) {
      const Eigen::Vector2d q(x, i * grid.cell_h);
      if (!nearExists(q)) out.points.push_back({q, FeatureTag::Frame});
    }
  }
  return out;
}

namespace {
const char* tagName(FeatureTag t) {
  switch (t) {
    case FeatureTag::Intersection: return "intersection";
    case FeatureTag::Merged: return "merged";
    case FeatureTag::Landmark: return "landmark";
    case FeatureTag::Frame: return "frame";
  }
  return "?";
}
}  // namespace

void writeFeaturePointsText(std::ostream& os, const FeaturePointSet& set) {
  for (const auto& fp : set.points)
    os << fp.pos.x() << ' ' << fp.pos.y() << ' ' << tagName(fp.tag) << '\n';
}

FeaturePointSet readFeaturePointsText(std::istream& is, double width, double height) {
  FeaturePointSet set;
  set.width = width;
  set.height = height;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double x, y;
    std::string tag;
    if (!(ss >> x >> y >> tag))
      throw std::runtime_error("feature point parse error at line " + std::to_string(lineno));
    FeatureTag t = FeatureTag::Intersection;
    if (tag == "merged") t = FeatureTag::Merged;
    else if (tag == "landmark") t = FeatureTag::Landmark;
    else if (tag == "frame") t = FeatureTag::Frame;
    if (t == FeatureTag::Landmark) set.landmark_indices.push_back(int(set.points.size()));
    set.points.push_back({{x, y}, t});
  }
  return set;
}

}  // namespace trim
