#include "trim/mesh_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace trim {

namespace {

double round6(double x) { return std::round(x * 1e6) / 1e6; }

int lineOfByte(const std::string& text, size_t byte) {
  int line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

std::string meshToJson(const TriMesh& mesh) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : mesh.vertices) j["vertices"].push_back({round6(v.x()), round6(v.y())});
  j["triangles"] = nlohmann::json::array();
  for (const auto& t : mesh.triangles) j["triangles"].push_back({t[0], t[1], t[2]});
  if (mesh.hasColors()) {
    j["colors"] = nlohmann::json::array();
    for (const auto& c : mesh.colors) j["colors"].push_back({c[0], c[1], c[2]});
  } else {
    j["colors"] = nullptr;
  }
  j["landmarks"] = mesh.landmark_vertices;
  j["image_size"] = {mesh.image_size.x(), mesh.image_size.y()};
  return j.dump(2);
}

void exportMesh(const TriMesh& mesh, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("exportMesh: cannot open " + path);
  f << meshToJson(mesh) << '\n';
}

TriMesh meshFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("mesh parse error at line " +
                             std::to_string(lineOfByte(text, e.byte)) + ": " + e.what());
  }
  TriMesh mesh;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_array() || v.size() != 2)
      throw std::runtime_error("mesh parse error: vertex entries must be [x, y]");
    mesh.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  const int nv = mesh.vertexCount();
  for (const auto& t : j.at("triangles")) {
    if (!t.is_array() || t.size() != 3)
      throw std::runtime_error("mesh parse error: triangle entries must be [i, j, k]");
    Eigen::Vector3i tri(t[0].get<int>(), t[1].get<int>(), t[2].get<int>());
    for (int k = 0; k < 3; ++k)
      if (tri[k] < 0 || tri[k] >= nv)
        throw std::runtime_error("mesh parse error: triangle index " + std::to_string(tri[k]) +
                                 " out of range [0, " + std::to_string(nv) + ")");
    mesh.triangles.push_back(tri);
  }
  if (j.contains("colors") && !j["colors"].is_null()) {
    for (const auto& c : j["colors"])
      mesh.colors.emplace_back(c[0].get<double>(), c[1].get<double>(), c[2].get<double>());
    if (mesh.colors.size() != mesh.triangles.size())
      throw std::runtime_error("mesh parse error: colors count does not match triangles");
  }
  if (j.contains("landmarks"))
    for (const auto& li : j["landmarks"]) {
      const int v = li.get<int>();
      if (v < 0 || v >= nv)
        throw std::runtime_error("mesh parse error: landmark index " + std::to_string(v) +
                                 " out of range [0, " + std::to_string(nv) + ")");
      mesh.landmark_vertices.push_back(v);
    }
  if (j.contains("image_size") && j["image_size"].is_array())
    mesh.image_size = Eigen::Vector2i(j["image_size"][0].get<int>(), j["image_size"][1].get<int>());
  mesh.boundary_vertices = hullVertices(mesh);
  return mesh;
}

TriMesh importMesh(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("importMesh: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return meshFromJson(ss.str());
}

}  // namespace trim
