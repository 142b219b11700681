#include "trim/mesh.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace trim {

std::vector<int> hullVertices(const TriMesh& mesh) {
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      const int u = t[k], v = t[(k + 1) % 3];
      edge_count[{std::min(u, v), std::max(u, v)}]++;
    }
  std::set<int> verts;
  for (const auto& [e, n] : edge_count)
    if (n == 1) {
      verts.insert(e.first);
      verts.insert(e.second);
    }
  return {verts.begin(), verts.end()};
}

TriMesh gridMeshFromAxes(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2 || ys.size() < 2)
    throw std::invalid_argument("gridMeshFromAxes: need at least 2 nodes per axis");
  TriMesh mesh;
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  mesh.vertices.reserve(size_t(nx) * ny);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) mesh.vertices.emplace_back(xs[ix], ys[iy]);
  auto id = [nx](int ix, int iy) { return iy * nx + ix; };
  for (int iy = 0; iy + 1 < ny; ++iy)
    for (int ix = 0; ix + 1 < nx; ++ix) {
      // positive signed area with y pointing down
      mesh.triangles.emplace_back(id(ix, iy), id(ix + 1, iy + 1), id(ix, iy + 1));
      mesh.triangles.emplace_back(id(ix, iy), id(ix + 1, iy), id(ix + 1, iy + 1));
    }
  mesh.boundary_vertices = hullVertices(mesh);
  return mesh;
}

TriMesh uniformGridMesh(double width, double height, double spacing) {
  if (spacing < 2) throw std::invalid_argument("uniformGridMesh: spacing must be >= 2");
  auto axis = [](double extent, double s) {
    std::vector<double> xs;
    const int n = static_cast<int>(std::floor(extent / s)) + 1;
    for (int i = 0; i < n - 1; ++i) xs.push_back(i * s);
    xs.push_back(extent);  // snap the last node so the mesh covers the rectangle
    return xs;
  };
  return gridMeshFromAxes(axis(width, spacing), axis(height, spacing));
}

}  // namespace trim
