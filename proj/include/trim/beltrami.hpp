#pragma once

#include "trim/mesh.hpp"

#include <complex>

namespace trim {

/// Piecewise-linear map on a TriMesh: one target position per vertex.
struct PLMap {
  Eigen::Matrix<double, Eigen::Dynamic, 2> targets;

  static PLMap identity(const TriMesh& mesh) {
    PLMap m;
    m.targets.resize(mesh.vertexCount(), 2);
    for (int v = 0; v < mesh.vertexCount(); ++v) m.targets.row(v) = mesh.vertices[v].transpose();
    return m;
  }

  Eigen::Vector2d at(int v) const { return targets.row(v).transpose(); }
};

/// Beltrami coefficient seen per face (mu) and smoothed per vertex (nu).
struct BeltramiField {
  Eigen::VectorXcd faces;
  Eigen::VectorXcd vertices;
};

inline double supNorm(const Eigen::VectorXcd& field) {
  double m = 0;
  for (int i = 0; i < field.size(); ++i) m = std::max(m, std::abs(field[i]));
  return m;
}

/// Beltrami coefficient of the affine map each face induces,
/// mu = (df/dz̄)/(df/dz). Faces whose target collapses entirely get mu = 0 and
/// are listed in degenerate_faces when requested.
Eigen::VectorXcd faceBeltrami(const TriMesh& mesh, const PLMap& map,
                              std::vector<int>* degenerate_faces = nullptr);

/// Area-weighted average of incident faces.
Eigen::VectorXcd faceToVertex(const TriMesh& mesh, const Eigen::VectorXcd& face_field);

/// Mean of the three corner values.
Eigen::VectorXcd vertexToFace(const TriMesh& mesh, const Eigen::VectorXcd& vertex_field);

/// Radially rescales any value with modulus above 1 - delta down to 1 - delta.
Eigen::VectorXcd clampNu(const Eigen::VectorXcd& nu, double delta);

/// nu + t * (mu - nu), clamped to the feasible ball.
Eigen::VectorXcd stepNu(const Eigen::VectorXcd& nu, const Eigen::VectorXcd& mu, double t,
                        double delta);

}  // namespace trim
