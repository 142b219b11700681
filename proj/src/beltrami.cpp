#include "trim/beltrami.hpp"

#include <stdexcept>

namespace trim {

Eigen::VectorXcd faceBeltrami(const TriMesh& mesh, const PLMap& map,
                              std::vector<int>* degenerate_faces) {
  if (map.targets.rows() != mesh.vertexCount())
    throw std::invalid_argument("faceBeltrami: map size does not match mesh");
  Eigen::VectorXcd mu(mesh.triangleCount());
  for (int t = 0; t < mesh.triangleCount(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Eigen::Vector2d& p0 = mesh.vertices[tri[0]];
    const Eigen::Vector2d& p1 = mesh.vertices[tri[1]];
    const Eigen::Vector2d& p2 = mesh.vertices[tri[2]];
    Eigen::Matrix2d S;
    S.col(0) = p1 - p0;
    S.col(1) = p2 - p0;
    Eigen::Matrix2d T;
    T.col(0) = (map.at(tri[1]) - map.at(tri[0]));
    T.col(1) = (map.at(tri[2]) - map.at(tri[0]));
    const Eigen::Matrix2d J = T * S.inverse();  // [[u_x, u_y], [v_x, v_y]]
    const double ux = J(0, 0), uy = J(0, 1), vx = J(1, 0), vy = J(1, 1);
    const std::complex<double> fz(0.5 * (ux + vy), 0.5 * (vx - uy));
    const std::complex<double> fzbar(0.5 * (ux - vy), 0.5 * (vx + uy));
    if (fz == std::complex<double>(0, 0) && fzbar == std::complex<double>(0, 0)) {
      mu[t] = 0.0;
      if (degenerate_faces) degenerate_faces->push_back(t);
    } else {
      mu[t] = fzbar / fz;
      if (!std::isfinite(mu[t].real()) || !std::isfinite(mu[t].imag())) {
        // anti-conformal collapse: push far outside the feasible ball
        const double mag = std::abs(fzbar);
        mu[t] = mag > 0 ? fzbar / mag * 1e6 : std::complex<double>(1e6, 0);
        if (degenerate_faces) degenerate_faces->push_back(t);
      }
    }
  }
  return mu;
}

Eigen::VectorXcd faceToVertex(const TriMesh& mesh, const Eigen::VectorXcd& face_field) {
  if (face_field.size() != mesh.triangleCount())
    throw std::invalid_argument("faceToVertex: field size does not match face count");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(mesh.vertexCount());
  Eigen::VectorXd weight = Eigen::VectorXd::Zero(mesh.vertexCount());
  for (int t = 0; t < mesh.triangleCount(); ++t) {
    const double a = std::abs(mesh.signedArea(t));
    for (int k = 0; k < 3; ++k) {
      out[mesh.triangles[t][k]] += a * face_field[t];
      weight[mesh.triangles[t][k]] += a;
    }
  }
  for (int v = 0; v < mesh.vertexCount(); ++v)
    if (weight[v] > 0) out[v] /= weight[v];
  return out;
}

Eigen::VectorXcd vertexToFace(const TriMesh& mesh, const Eigen::VectorXcd& vertex_field) {
  if (vertex_field.size() != mesh.vertexCount())
    throw std::invalid_argument("vertexToFace: field size does not match vertex count");
  Eigen::VectorXcd out(mesh.triangleCount());
  for (int t = 0; t < mesh.triangleCount(); ++t) {
    const auto& tri = mesh.triangles[t];
    out[t] = (vertex_field[tri[0]] + vertex_field[tri[1]] + vertex_field[tri[2]]) / 3.0;
  }
  return out;
}

Eigen::VectorXcd clampNu(const Eigen::VectorXcd& nu, double delta) {
  if (!(delta > 0 && delta <= 0.1)) throw std::invalid_argument("clampNu: delta must be in (0, 0.1]");
  Eigen::VectorXcd out = nu;
  const double cap = 1.0 - delta;
  for (int i = 0; i < out.size(); ++i) {
    const double m = std::abs(out[i]);
    if (m > cap) out[i] *= cap / m;
  }
  return out;
}

Eigen::VectorXcd stepNu(const Eigen::VectorXcd& nu, const Eigen::VectorXcd& mu, double t,
                        double delta) {
  return clampNu(nu + t * (mu - nu), delta);
}

}  // namespace trim
