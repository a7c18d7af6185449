#pragma once

// Tangent frames and Gauss-Newton projections onto the equilibrium manifold
// E = { z in R^{n+2} : f(z) = 0 }, which is two-dimensional wherever the full
// Jacobian has rank n.

#include <Eigen/Dense>
#include <optional>

#include "cuspid/model.hpp"

namespace cuspid {

struct TangentFrame {
  Eigen::MatrixXd tangent;  // (n+2) x 2, orthonormal basis of ker Df
  Eigen::MatrixXd normal;   // (n+2) x n, orthonormal basis of (ker Df)^perp
};

// Orthonormal kernel/row-space split of the full Jacobian at z. Throws
// RankDeficient when the numerical rank of Df drops below n.
inline TangentFrame tangent_frame(const EquilibriumModel& md, const Eigen::VectorXd& z,
                                  double rank_tol = 1e-9) {
  Eigen::MatrixXd j = md.jacobian(z);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv[0] > 0.0) || sv[md.n - 1] < rank_tol * sv[0]) throw RankDeficient("tangent_frame");
  TangentFrame fr;
  fr.normal = svd.matrixV().leftCols(md.n);
  fr.tangent = svd.matrixV().rightCols(2);
  return fr;
}

struct ProjectionResult {
  Eigen::VectorXd z;
  double residual = 0.0;
  int iterations = 0;
};

// Correct `guess` back to the manifold moving only inside the given normal
// space (the Gauss-Newton step of the continuation: corrections are taken
// perpendicular to the reference tangent plane).
inline ProjectionResult project_along_normal(const EquilibriumModel& md, const Eigen::VectorXd& guess,
                                             const Eigen::MatrixXd& normal, double tol, int max_iter = 20) {
  Eigen::VectorXd z = guess;
  for (int it = 0; it <= max_iter; ++it) {
    Eigen::VectorXd f = md.f(z);
    double res = f.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(res)) throw NoConvergence("project_along_normal");
    if (res <= tol) return {z, res, it};
    Eigen::MatrixXd jn = md.jacobian(z) * normal;  // n x n
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jn);
    if (!lu.isInvertible()) throw RankDeficient("project_along_normal");
    z -= normal * lu.solve(f);
  }
  throw NoConvergence("project_along_normal");
}

// Nearest-point style projection: every step is the minimum-norm Gauss-Newton
// correction, i.e. perpendicular to the tangent plane at the current iterate.
inline ProjectionResult project_min_norm(const EquilibriumModel& md, const Eigen::VectorXd& guess,
                                         double tol, int max_iter = 20) {
  Eigen::VectorXd z = guess;
  for (int it = 0; it <= max_iter; ++it) {
    Eigen::VectorXd f = md.f(z);
    double res = f.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(res)) throw NoConvergence("project_min_norm");
    if (res <= tol) return {z, res, it};
    Eigen::MatrixXd j = md.jacobian(z);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(j);
    if (cod.rank() < md.n) throw RankDeficient("project_min_norm");
    z -= cod.solve(f);
  }
  throw NoConvergence("project_min_norm");
}

// largest principal angle between two orthonormal 2-column bases, in radians
inline double tangent_angle(const Eigen::MatrixXd& t1, const Eigen::MatrixXd& t2) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t1.transpose() * t2);
  double c = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace cuspid
