#include "trim/lbs.hpp"

#include <Eigen/SparseCholesky>

#include <stdexcept>

namespace trim {

namespace {

constexpr double kFrameTol = 1e-9;
constexpr double kNuHardCap = 1.0 - 1e-6;

/// Gradients of the three P1 basis functions on one face.
void faceGradients(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                   double area, Eigen::Matrix<double, 2, 3>& grads) {
  const auto perp = [](const Eigen::Vector2d& e) { return Eigen::Vector2d(-e.y(), e.x()); };
  grads.col(0) = perp(p2 - p1) / (2.0 * area);
  grads.col(1) = perp(p0 - p2) / (2.0 * area);
  grads.col(2) = perp(p1 - p0) / (2.0 * area);
}

Eigen::Matrix2d diffusionMatrix(const std::complex<double>& nu) {
  const double rho = nu.real(), tau = nu.imag();
  const double denom = 1.0 - rho * rho - tau * tau;
  Eigen::Matrix2d a;
  a << ((rho - 1) * (rho - 1) + tau * tau) / denom, -2.0 * tau / denom, -2.0 * tau / denom,
      ((1 + rho) * (1 + rho) + tau * tau) / denom;
  return a;
}

Eigen::VectorXd solveComponent(const Eigen::SparseMatrix<double>& stiffness,
                               const std::map<int, double>& fixed, const char* component) {
  const int n = static_cast<int>(stiffness.rows());
  if (fixed.empty())
    throw std::runtime_error(std::string("lbsSolve: ") + component +
                             " component has no constraints; system is singular");
  std::vector<int> global_to_free(n, -1);
  std::vector<int> free_idx;
  for (int i = 0; i < n; ++i)
    if (!fixed.count(i)) {
      global_to_free[i] = static_cast<int>(free_idx.size());
      free_idx.push_back(i);
    }
  const int nf = static_cast<int>(free_idx.size());

  Eigen::VectorXd x(n);
  for (const auto& [i, val] : fixed) x(i) = val;
  if (nf == 0) return x;

  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf);
  for (int col = 0; col < stiffness.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(stiffness, col); it; ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      if (global_to_free[r] < 0) continue;
      if (global_to_free[c] >= 0)
        trips.emplace_back(global_to_free[r], global_to_free[c], it.value());
      else
        rhs(global_to_free[r]) -= it.value() * x(c);
    }
  Eigen::SparseMatrix<double> kff(nf, nf);
  kff.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(kff);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error(std::string("lbsSolve: factorization failed for ") + component);
  const Eigen::VectorXd xf = solver.solve(rhs);
  for (int k = 0; k < nf; ++k) x(free_idx[k]) = xf(k);
  return x;
}

}  // namespace

DirichletConstraints identityBoundary(const TriMesh& mesh) {
  DirichletConstraints c;
  for (int v : mesh.boundary_vertices.empty() ? hullVertices(mesh) : mesh.boundary_vertices)
    c.pin(v, mesh.vertices[v]);
  return c;
}

DirichletConstraints boundaryFromMap(
    const TriMesh& mesh, const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& f) {
  DirichletConstraints c;
  for (int v : mesh.boundary_vertices.empty() ? hullVertices(mesh) : mesh.boundary_vertices)
    c.pin(v, f(mesh.vertices[v]));
  return c;
}

DirichletConstraints frameSlidingConstraints(const TriMesh& mesh, const Eigen::Vector2d& src_size,
                                             const Eigen::Vector2d& dst_size) {
  DirichletConstraints c;
  const auto boundary = mesh.boundary_vertices.empty() ? hullVertices(mesh) : mesh.boundary_vertices;
  for (int v : boundary) {
    const auto& p = mesh.vertices[v];
    if (std::abs(p.x()) <= kFrameTol) c.u[v] = 0.0;
    if (std::abs(p.x() - src_size.x()) <= kFrameTol) c.u[v] = dst_size.x();
    if (std::abs(p.y()) <= kFrameTol) c.v[v] = 0.0;
    if (std::abs(p.y() - src_size.y()) <= kFrameTol) c.v[v] = dst_size.y();
  }
  return c;
}

Eigen::SparseMatrix<double> cotangentLaplacian(const TriMesh& mesh) {
  std::vector<Eigen::Triplet<double>> trips;
  for (int t = 0; t < mesh.triangleCount(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int apex = tri[k], i = tri[(k + 1) % 3], j = tri[(k + 2) % 3];
      const Eigen::Vector2d u = mesh.vertices[i] - mesh.vertices[apex];
      const Eigen::Vector2d w = mesh.vertices[j] - mesh.vertices[apex];
      const double cross = u.x() * w.y() - u.y() * w.x();
      const double cot = u.dot(w) / std::abs(cross);
      const double half = 0.5 * cot;
      trips.emplace_back(i, j, -half);
      trips.emplace_back(j, i, -half);
      trips.emplace_back(i, i, half);
      trips.emplace_back(j, j, half);
    }
  }
  Eigen::SparseMatrix<double> lap(mesh.vertexCount(), mesh.vertexCount());
  lap.setFromTriplets(trips.begin(), trips.end());
  return lap;
}

Eigen::VectorXd lumpedVertexAreas(const TriMesh& mesh) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(mesh.vertexCount());
  for (int t = 0; t < mesh.triangleCount(); ++t) {
    const double a = std::abs(mesh.signedArea(t)) / 3.0;
    for (int k = 0; k < 3; ++k) m(mesh.triangles[t][k]) += a;
  }
  return m;
}

PLMap lbsSolve(const TriMesh& mesh, const Eigen::VectorXcd& face_nu,
               const DirichletConstraints& constraints) {
  if (face_nu.size() != mesh.triangleCount())
    throw std::invalid_argument("lbsSolve: nu must have one value per face");
  for (int t = 0; t < mesh.triangleCount(); ++t)
    if (std::abs(face_nu[t]) >= kNuHardCap)
      throw std::runtime_error("lbsSolve: |nu| too close to 1 on face " + std::to_string(t));
  if (constraints.empty()) throw std::runtime_error("lbsSolve: no constraints; system is singular");

  std::vector<Eigen::Triplet<double>> trips;
  Eigen::Matrix<double, 2, 3> grads;
  for (int t = 0; t < mesh.triangleCount(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double area = mesh.signedArea(t);
    if (!(area > 0))
      throw std::runtime_error("lbsSolve: degenerate or flipped source face " + std::to_string(t));
    faceGradients(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]], area, grads);
    const Eigen::Matrix2d a = diffusionMatrix(face_nu[t]);
    const Eigen::Matrix3d local = area * grads.transpose() * a * grads;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) trips.emplace_back(tri[r], tri[c], local(r, c));
  }
  Eigen::SparseMatrix<double> stiffness(mesh.vertexCount(), mesh.vertexCount());
  stiffness.setFromTriplets(trips.begin(), trips.end());

  PLMap map;
  map.targets.resize(mesh.vertexCount(), 2);
  map.targets.col(0) = solveComponent(stiffness, constraints.u, "u");
  map.targets.col(1) = solveComponent(stiffness, constraints.v, "v");
  return map;
}

}  // namespace trim
