#pragma once

#include "trim/image.hpp"
#include "trim/mesh.hpp"

namespace trim {

/// True when the pixel center q is covered by triangle t under the shared
/// top-left style fill rule: exact edge tests, ties owned by edges whose
/// direction d satisfies d.y > 0 or (d.y == 0 and d.x > 0). Along an edge
/// shared by two triangles exactly one of them covers q.
bool coversPixel(const TriMesh& mesh, int t, const Eigen::Vector2d& q);

/// Mean RGB over the pixel centers each triangle covers; triangles covering
/// no center sample the image at their centroid.
TriMesh assignColors(TriMesh mesh, const RasterImage& img);

/// Flat-shaded fill of the assigned colors into a raster of the given size
/// (defaults to the mesh image_size / hull bounding box).
RasterImage rasterizeMesh(const TriMesh& mesh, int width = 0, int height = 0,
                          const Eigen::Vector3d& background = Eigen::Vector3d::Zero());

}  // namespace trim
