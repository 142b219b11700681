#include "trim/mesh_color.hpp"

#include "trim/predicates.hpp"

#include <stdexcept>

namespace trim {

namespace {

bool tieOwned(const Eigen::Vector2d& d) { return d.y() > 0 || (d.y() == 0 && d.x() > 0); }

struct PixelBounds {
  int x0, x1, y0, y1;  // half-open pixel index ranges
};

PixelBounds pixelRange(const TriMesh& mesh, int t, int width, int height) {
  const auto& tri = mesh.triangles[t];
  double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
  for (int k = 0; k < 3; ++k) {
    const auto& p = mesh.vertices[tri[k]];
    minx = std::min(minx, p.x());
    maxx = std::max(maxx, p.x());
    miny = std::min(miny, p.y());
    maxy = std::max(maxy, p.y());
  }
  PixelBounds b;
  b.x0 = std::max(0, static_cast<int>(std::floor(minx - 0.5)));
  b.x1 = std::min(width, static_cast<int>(std::ceil(maxx + 0.5)));
  b.y0 = std::max(0, static_cast<int>(std::floor(miny - 0.5)));
  b.y1 = std::min(height, static_cast<int>(std::ceil(maxy + 0.5)));
  return b;
}

}  // namespace

bool coversPixel(const TriMesh& mesh, int t, const Eigen::Vector2d& q) {
  const auto& tri = mesh.triangles[t];
  for (int k = 0; k < 3; ++k) {
    const int ia = tri[(k + 1) % 3], ib = tri[(k + 2) % 3];
    const Eigen::Vector2d& a = mesh.vertices[ia];
    const Eigen::Vector2d& b = mesh.vertices[ib];
    const double o = orient2d(a, b, q);
    if (o < 0) return false;
    if (o == 0 && !tieOwned(b - a)) return false;
  }
  return true;
}

TriMesh assignColors(TriMesh mesh, const RasterImage& img) {
  const RasterImage rgb = img.channels() == 3 ? img : img.toThreeChannel();
  mesh.colors.assign(mesh.triangles.size(), Eigen::Vector3d::Zero());
  for (int t = 0; t < mesh.triangleCount(); ++t) {
    const auto b = pixelRange(mesh, t, rgb.width, rgb.height);
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    std::int64_t count = 0;
    for (int y = b.y0; y < b.y1; ++y)
      for (int x = b.x0; x < b.x1; ++x) {
        if (!coversPixel(mesh, t, {x + 0.5, y + 0.5})) continue;
        sum += Eigen::Vector3d(rgb.planes[0](y, x), rgb.planes[1](y, x), rgb.planes[2](y, x));
        ++count;
      }
    if (count > 0) {
      mesh.colors[t] = sum / double(count);
    } else {
      const auto& tri = mesh.triangles[t];
      const Eigen::Vector2d c =
          (mesh.vertices[tri[0]] + mesh.vertices[tri[1]] + mesh.vertices[tri[2]]) / 3.0;
      const int cx = std::clamp(static_cast<int>(std::floor(c.x())), 0, rgb.width - 1);
      const int cy = std::clamp(static_cast<int>(std::floor(c.y())), 0, rgb.height - 1);
      mesh.colors[t] = Eigen::Vector3d(rgb.planes[0](cy, cx), rgb.planes[1](cy, cx),
                                       rgb.planes[2](cy, cx));
    }
  }
  return mesh;
}

RasterImage rasterizeMesh(const TriMesh& mesh, int width, int height,
                          const Eigen::Vector3d& background) {
  if (!mesh.hasColors()) throw std::invalid_argument("rasterizeMesh: mesh has no colors");
  if (width <= 0 || height <= 0) {
    double maxx = 0, maxy = 0;
    for (const auto& v : mesh.vertices) {
      maxx = std::max(maxx, v.x());
      maxy = std::max(maxy, v.y());
    }
    width = std::max(1, static_cast<int>(std::ceil(maxx)));
    height = std::max(1, static_cast<int>(std::ceil(maxy)));
  }
  RasterImage out(width, height, 3);
  for (int c = 0; c < 3; ++c) out.planes[c].setConstant(background[c]);
  for (int t = 0; t < mesh.triangleCount(); ++t) {
    const auto b = pixelRange(mesh, t, width, height);
    const auto& col = mesh.colors[t];
    for (int y = b.y0; y < b.y1; ++y)
      for (int x = b.x0; x < b.x1; ++x) {
        if (!coversPixel(mesh, t, {x + 0.5, y + 0.5})) continue;
        for (int c = 0; c < 3; ++c) out.planes[c](y, x) = col[c];
      }
  }
  return out;
}

}  // namespace trim
