#pragma once

#include "trim/threshold.hpp"

#include <iosfwd>
#include <optional>

namespace trim {

/// Rectangular sampling grid sized so that roughly n feature points are
/// produced when a fraction p of the grid edges meet segment boundaries.
/// w = w' * l_w and h = h' * l_h hold exactly.
struct SamplingGrid {
  double width = 0, height = 0;  // image dimensions in pixels
  int cols = 0, rows = 0;        // w', h'
  double cell_w = 0, cell_h = 0; // l_w, l_h
  double sparse_ratio = 0;       // p
  int target_points = 0;         // n

  double dedupTolerance() const { return 0.5 * std::min(cell_w, cell_h); }
};

SamplingGrid sizeGrid(double width, double height, double sparse_ratio, int target_points,
                      std::vector<std::string>* warnings = nullptr);

enum class FeatureTag { Intersection, Merged, Landmark, Frame };

struct FeaturePoint {
  Eigen::Vector2d pos;
  FeatureTag tag = FeatureTag::Intersection;
};

struct FeaturePointSet {
  double width = 0, height = 0;  // bounding image rectangle
  std::vector<FeaturePoint> points;
  std::vector<int> landmark_indices;  // indices into points

  size_t size() const { return points.size(); }
};

/// Boundary-pixel centers grouped by the grid edge they are nearest to
/// (within 0.5 px of its supporting segment); each pixel lands on at most one
/// edge, ties broken toward the horizontal edge, then the lower index.
struct EdgePointSets {
  int cols = 0, rows = 0;
  // horizontal edge (i, j): g_{i,j} -> g_{i,j+1}, i in [0, rows], j in [0, cols-1]
  std::vector<std::vector<Eigen::Vector2d>> horizontal;
  // vertical edge (i, j): g_{i,j} -> g_{i+1,j}, i in [0, rows-1], j in [0, cols]
  std::vector<std::vector<Eigen::Vector2d>> vertical;

  const std::vector<Eigen::Vector2d>& h(int i, int j) const { return horizontal[size_t(i) * cols + j]; }
  const std::vector<Eigen::Vector2d>& v(int i, int j) const { return vertical[size_t(i) * (cols + 1) + j]; }
};

EdgePointSets intersectSegments(const BoundarySet& boundary, const SamplingGrid& grid);

/// none for empty sets, the point itself for singletons, the centroid otherwise.
std::optional<Eigen::Vector2d> mergePoints(const std::vector<Eigen::Vector2d>& edge_points);

/// Runs mergePoints over every grid edge in deterministic order (all
/// horizontal edges in (i,j) order, then all vertical).
FeaturePointSet collectSparseFeatures(const BoundarySet& boundary, const SamplingGrid& grid);

/// Appends landmarks verbatim, dropping any non-landmark point within the
/// dedup tolerance of a landmark. Landmarks are never moved or merged.
FeaturePointSet addLandmarks(const FeaturePointSet& features,
                             const std::vector<Eigen::Vector2d>& landmarks, double dedup_tolerance,
                             std::vector<std::string>* warnings = nullptr);

/// Appends the four image corners plus border points at the grid spacing,
/// deduped against existing points within the grid tolerance.
FeaturePointSet addFramePoints(const FeaturePointSet& features, const SamplingGrid& grid);

void writeFeaturePointsText(std::ostream& os, const FeaturePointSet& set);
FeaturePointSet readFeaturePointsText(std::istream& is, double width, double height);

}  // namespace trim
