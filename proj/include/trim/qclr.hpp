#pragma once

#include "trim/lbs.hpp"

#include <string>

namespace trim {

/// Prescribed point correspondences p_i <-> q_i; sources are mesh vertices.
struct LandmarkCorrespondence {
  std::vector<int> src_vertices;
  std::vector<Eigen::Vector2d> targets;

  size_t size() const { return src_vertices.size(); }
  void validate(int vertex_count) const;
};

struct QclrParams {
  double alpha = 1.0;   // smoothness weight
  double rho = 1.0;     // penalty weight (doubles every rho_period iterations)
  double t = 0.5;       // nu step size
  double delta = 1e-3;  // sup-norm clamp margin
  int max_outer = 50;
  double tolerance = -1.0;  // max vertex displacement; < 0 -> 1e-4 * diagonal
  int rho_period = 5;
  double rho_cap_factor = 64.0;

  void validate() const;
};

struct QclrDiagnostics {
  std::vector<double> energy;             // split energy per outer iteration
  std::vector<double> nu_sup;             // ||nu||_inf per iteration
  std::vector<double> landmark_residual;  // max_i |f(p_i) - q_i| per iteration
  int fold_count = 0;                     // target faces with non-positive area
  bool converged = false;
  int iterations = 0;
};

struct QclrResult {
  PLMap map;
  BeltramiField nu;
  QclrDiagnostics diagnostics;
};

/// Euler-Lagrange smoothing step: solves
/// (L_cot + 2 alpha I + 2 rho I) nu = 2 rho mu_v for the vertex field, where
/// mu_v is the area-weighted face-to-vertex average of mu. Real and imaginary
/// parts solve independently against the same factorization.
Eigen::VectorXcd smoothUpdateNu(const TriMesh& mesh, const Eigen::VectorXcd& mu_faces,
                                double alpha, double rho);

/// Discretized split energy
/// |∇nu|^2 (cotangent Dirichlet) + alpha |nu|^2 + rho |nu - mu(f)|^2
/// with vertex-lumped area mass for the zero-order terms.
double splitEnergy(const TriMesh& mesh, const Eigen::VectorXcd& nu_vertices, const PLMap& map,
                   double alpha, double rho);

/// Landmark-constrained quasi-conformal registration by alternating the
/// Linear Beltrami Solver with the smoothed nu update. Landmarks are enforced
/// by elimination and hold exactly at every iterate; the boundary slides
/// along the target frame with pinned corners.
QclrResult qclrRegister(const TriMesh& mesh, const LandmarkCorrespondence& landmarks,
                        const QclrParams& params, const Eigen::Vector2d& src_size,
                        const Eigen::Vector2d& dst_size);

/// Same solve with fully custom Dirichlet data instead of the frame defaults.
QclrResult qclrRegister(const TriMesh& mesh, const DirichletConstraints& base_constraints,
                        const LandmarkCorrespondence& landmarks, const QclrParams& params);

}  // namespace trim
