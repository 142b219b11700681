#pragma once

#include "trim/mesh.hpp"
#include "trim/sampling.hpp"

namespace trim {

/// Delaunay triangulation with exact predicates. Points closer than 1e-9 px
/// are collapsed first (landmarks win collisions); every surviving point
/// appears as a vertex. Cocircular configurations are resolved toward the
/// lexicographically smallest diagonal endpoint pair.
/// Throws when fewer than 3 distinct points remain or all are collinear.
TriMesh delaunay(const std::vector<Eigen::Vector2d>& points,
                 const std::vector<int>& landmark_indices = {});

TriMesh delaunay(const FeaturePointSet& features);

}  // namespace trim
