#include "trim/qclr.hpp"

#include <Eigen/SparseCholesky>

#include <set>
#include <stdexcept>

namespace trim {

void LandmarkCorrespondence::validate(int vertex_count) const {
  if (src_vertices.size() != targets.size())
    throw std::invalid_argument("LandmarkCorrespondence: sources and targets differ in length");
  std::set<int> seen;
  for (int v : src_vertices) {
    if (v < 0 || v >= vertex_count)
      throw std::invalid_argument("LandmarkCorrespondence: source vertex " + std::to_string(v) +
                                  " out of range");
    if (!seen.insert(v).second)
      throw std::invalid_argument("LandmarkCorrespondence: duplicate source vertex " +
                                  std::to_string(v));
  }
  for (const auto& q : targets)
    if (!q.allFinite())
      throw std::invalid_argument("LandmarkCorrespondence: non-finite target");
}

void QclrParams::validate() const {
  if (!(alpha > 0) || !(rho > 0)) throw std::invalid_argument("QclrParams: alpha, rho must be > 0");
  if (!(t > 0 && t <= 1)) throw std::invalid_argument("QclrParams: t must be in (0, 1]");
  if (!(delta > 0 && delta <= 0.1))
    throw std::invalid_argument("QclrParams: delta must be in (0, 0.1]");
  if (max_outer < 1) throw std::invalid_argument("QclrParams: iteration cap must be >= 1");
}

namespace {

void requireConnected(const TriMesh& mesh) {
  if (mesh.vertexCount() == 0) throw std::invalid_argument("mesh is empty");
  std::vector<std::vector<int>> adj(mesh.vertexCount());
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      adj[t[k]].push_back(t[(k + 1) % 3]);
      adj[t[(k + 1) % 3]].push_back(t[k]);
    }
  std::vector<bool> seen(mesh.vertexCount(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int visited = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++visited;
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  if (visited != mesh.vertexCount())
    throw std::runtime_error("mesh is disconnected; Laplacian is singular");
}

int countFolds(const TriMesh& mesh, const PLMap& map) {
  int folds = 0;
  for (int t = 0; t < mesh.triangleCount(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Eigen::Vector2d e1 = map.at(tri[1]) - map.at(tri[0]);
    const Eigen::Vector2d e2 = map.at(tri[2]) - map.at(tri[0]);
    if (e1.x() * e2.y() - e1.y() * e2.x() <= 0) ++folds;
  }
  return folds;
}

}  // namespace

Eigen::VectorXcd smoothUpdateNu(const TriMesh& mesh, const Eigen::VectorXcd& mu_faces,
                                double alpha, double rho) {
  requireConnected(mesh);
  const int n = mesh.vertexCount();
  Eigen::SparseMatrix<double> system = cotangentLaplacian(mesh);
  Eigen::SparseMatrix<double> identity(n, n);
  identity.setIdentity();
  system += 2.0 * (alpha + rho) * identity;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(system);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("smoothUpdateNu: factorization failed");
  const Eigen::VectorXcd mu_v = faceToVertex(mesh, mu_faces);
  const Eigen::VectorXd re = solver.solve((2.0 * rho * mu_v.real()).eval());
  const Eigen::VectorXd im = solver.solve((2.0 * rho * mu_v.imag()).eval());
  Eigen::VectorXcd nu(n);
  nu.real() = re;
  nu.imag() = im;
  return nu;
}

double splitEnergy(const TriMesh& mesh, const Eigen::VectorXcd& nu_vertices, const PLMap& map,
                   double alpha, double rho) {
  const Eigen::SparseMatrix<double> lap = cotangentLaplacian(mesh);
  const Eigen::VectorXd mass = lumpedVertexAreas(mesh);
  const Eigen::VectorXd re = nu_vertices.real(), im = nu_vertices.imag();
  double energy = re.dot(lap * re) + im.dot(lap * im);
  energy += alpha * (mass.array() * (re.array().square() + im.array().square())).sum();
  const Eigen::VectorXcd mu_v = faceToVertex(mesh, faceBeltrami(mesh, map));
  const Eigen::VectorXcd diff = nu_vertices - mu_v;
  energy += rho * (mass.array() * diff.array().abs2()).sum();
  return energy;
}

QclrResult qclrRegister(const TriMesh& mesh, const DirichletConstraints& base_constraints,
                        const LandmarkCorrespondence& landmarks, const QclrParams& params) {
  params.validate();
  landmarks.validate(mesh.vertexCount());
  if (landmarks.size() == 0)
    throw std::invalid_argument("qclrRegister: landmark set must be nonempty");

  DirichletConstraints constraints = base_constraints;
  for (size_t i = 0; i < landmarks.size(); ++i)
    constraints.pin(landmarks.src_vertices[i], landmarks.targets[i]);

  double tol = params.tolerance;
  if (tol < 0) {
    Eigen::Vector2d lo(1e300, 1e300), hi(-1e300, -1e300);
    for (const auto& p : mesh.vertices) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    tol = 1e-4 * (hi - lo).norm();
  }

  QclrResult result;
  auto& diag = result.diagnostics;
  Eigen::VectorXcd nu = Eigen::VectorXcd::Zero(mesh.vertexCount());
  PLMap map = lbsSolve(mesh, vertexToFace(mesh, nu), constraints);
  double rho = params.rho;
  const double rho_cap = params.rho * params.rho_cap_factor;

  auto record = [&](const PLMap& m) {
    diag.energy.push_back(splitEnergy(mesh, nu, m, params.alpha, rho));
    diag.nu_sup.push_back(supNorm(nu));
    double res = 0;
    for (size_t i = 0; i < landmarks.size(); ++i)
      res = std::max(res, (m.at(landmarks.src_vertices[i]) - landmarks.targets[i]).norm());
    diag.landmark_residual.push_back(res);
  };

  for (int iter = 1; iter <= params.max_outer; ++iter) {
    diag.iterations = iter;
    const Eigen::VectorXcd mu = faceBeltrami(mesh, map);
    nu = clampNu(smoothUpdateNu(mesh, mu, params.alpha, rho), params.delta);
    PLMap next = lbsSolve(mesh, vertexToFace(mesh, nu), constraints);
    const Eigen::VectorXcd mu_next = faceBeltrami(mesh, next);
    nu = stepNu(nu, faceToVertex(mesh, mu_next), params.t, params.delta);

    const double disp = (next.targets - map.targets).cwiseAbs().maxCoeff();
    map = std::move(next);
    record(map);
    if (disp < tol) {
      diag.converged = true;
      break;
    }
    if (iter % params.rho_period == 0) rho = std::min(rho * 2.0, rho_cap);
  }

  diag.fold_count = countFolds(mesh, map);
  result.map = std::move(map);
  result.nu.vertices = nu;
  result.nu.faces = vertexToFace(mesh, nu);
  return result;
}

QclrResult qclrRegister(const TriMesh& mesh, const LandmarkCorrespondence& landmarks,
                        const QclrParams& params, const Eigen::Vector2d& src_size,
                        const Eigen::Vector2d& dst_size) {
  return qclrRegister(mesh, frameSlidingConstraints(mesh, src_size, dst_size), landmarks, params);
}

}  // namespace trim
