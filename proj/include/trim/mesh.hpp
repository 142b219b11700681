#pragma once

#include <Eigen/Dense>

#include <vector>

namespace trim {

/// Planar triangle mesh in pixel coordinates. Triangles are index triples in
/// positive orientation (signed area > 0 with y pointing down the image).
struct TriMesh {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<Eigen::Vector3i> triangles;
  std::vector<Eigen::Vector3d> colors;  // per triangle; empty when unassigned
  std::vector<int> landmark_vertices;
  std::vector<int> boundary_vertices;
  Eigen::Vector2i image_size = Eigen::Vector2i::Zero();  // (w, h) of the source image

  int vertexCount() const { return static_cast<int>(vertices.size()); }
  int triangleCount() const { return static_cast<int>(triangles.size()); }
  bool hasColors() const { return !colors.empty(); }

  double signedArea(int t) const {
    const auto& tri = triangles[t];
    const Eigen::Vector2d e1 = vertices[tri[1]] - vertices[tri[0]];
    const Eigen::Vector2d e2 = vertices[tri[2]] - vertices[tri[0]];
    return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
  }

  double totalArea() const {
    double a = 0;
    for (int t = 0; t < triangleCount(); ++t) a += signedArea(t);
    return a;
  }
};

/// Vertex indices on edges adjacent to exactly one triangle, deduplicated and
/// sorted ascending.
std::vector<int> hullVertices(const TriMesh& mesh);

/// Regular grid mesh of right triangles over [0,w] x [0,h]. Columns sit at
/// i*spacing with the final column snapped to w (same for rows), giving
/// (floor(w/spacing)+1) * (floor(h/spacing)+1) vertices covering the full
/// rectangle.
TriMesh uniformGridMesh(double width, double height, double spacing);

/// Grid mesh with explicit node positions along each axis.
TriMesh gridMeshFromAxes(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace trim
