#pragma once

#include "trim/beltrami.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <map>

namespace trim {

/// Component-wise Dirichlet data: landmark pins fix both components, frame
/// sliding fixes only the coordinate normal to the frame edge.
struct DirichletConstraints {
  std::map<int, double> u, v;

  void pin(int vertex, const Eigen::Vector2d& target) {
    u[vertex] = target.x();
    v[vertex] = target.y();
  }
  bool empty() const { return u.empty() && v.empty(); }
};

/// All hull vertices pinned to their own positions.
DirichletConstraints identityBoundary(const TriMesh& mesh);

/// All hull vertices pinned through an arbitrary map.
DirichletConstraints boundaryFromMap(const TriMesh& mesh,
                                     const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& f);

/// Frame sliding between two rectangles: corners pinned, other border
/// vertices keep their normal coordinate on the target frame edge and slide
/// tangentially. Vertices are matched to the frame within 1e-9 px.
DirichletConstraints frameSlidingConstraints(const TriMesh& mesh, const Eigen::Vector2d& src_size,
                                             const Eigen::Vector2d& dst_size);

/// Cotangent stiffness matrix (positive semi-definite, Dirichlet energy form).
Eigen::SparseMatrix<double> cotangentLaplacian(const TriMesh& mesh);

/// Lumped vertex areas (incident face areas / 3); sums to the mesh area.
Eigen::VectorXd lumpedVertexAreas(const TriMesh& mesh);

/// Linear Beltrami Solver: the piecewise-linear map whose components minimize
/// the generalized Dirichlet energies with per-face diffusion matrix A(nu),
/// subject to the given component-wise Dirichlet data (enforced by
/// elimination, hence exact).
PLMap lbsSolve(const TriMesh& mesh, const Eigen::VectorXcd& face_nu,
               const DirichletConstraints& constraints);

}  // namespace trim
