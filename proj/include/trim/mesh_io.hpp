#pragma once

#include "trim/mesh.hpp"

#include <string>

namespace trim {

/// Mesh JSON: {"vertices": [[x,y],...], "triangles": [[i,j,k],...],
/// "colors": [[r,g,b],...] | null, "landmarks": [i,...], "image_size": [w,h]}.
/// Vertex coordinates persist with 6 decimal places.
void exportMesh(const TriMesh& mesh, const std::string& path);
std::string meshToJson(const TriMesh& mesh);

/// Throws with the offending line on malformed JSON and names any
/// out-of-range triangle or landmark index.
TriMesh importMesh(const std::string& path);
TriMesh meshFromJson(const std::string& text);

}  // namespace trim
