#pragma once

#include <Eigen/Sparse>

#include <cstddef>
#include <span>
#include <utility>

#include "polybench/mesh.hpp"
#include "polybench/vem.hpp"

namespace polybench {

struct SolverReport {
  double eps_inf = 0.0;
  double eps_2 = 0.0;
  double eps_S = 0.0;
  double kappa1 = 0.0;
  double h = 0.0;
  std::size_t n_dofs = 0;
};

/// max_i |u(p_i) - uh_i| / max_i |u(p_i)| over mesh vertices.
double error_linf(const ScalarField& u, const Eigen::VectorXd& uh, const PolygonMesh& mesh);

/// ||u - Pi uh||_2 / ||u||_2 with Pi uh the elementwise affine projection,
/// integrated on each cell's ear-clip triangles with the order-4 rule.
double error_l2(const ScalarField& u, const Eigen::VectorXd& uh, const PolygonMesh& mesh);

/// sqrt(e^T S e) / sqrt(u^T S u) with e = u - uh at the vertices and S the
/// stiffness before boundary conditions.
double error_energy(const ScalarField& u, const Eigen::VectorXd& uh, const LinearSystem& system);

/// Matrices up to this size get the exact ||A^-1||_1; larger ones the
/// Hager-Higham estimate.
inline constexpr Eigen::Index kExactConditionLimit = 20000;

/// ||A||_1 ||A^-1||_1 for a symmetric positive definite A.
double condition_number_l1(const Eigen::SparseMatrix<double>& a,
                           Eigen::Index exact_limit = kExactConditionLimit);

struct ConvergenceFit {
  double C = 0.0;
  double p = 0.0;
  double residual = 0.0;  ///< largest absolute deviation of a sample from the fitted line (log scale)
};

/// Least squares fit of log eps = log C + p log h. Samples are (h, eps).
ConvergenceFit fit_convergence(std::span<const std::pair<double, double>> samples);

/// Assemble, solve and measure one mesh.
SolverReport evaluate_mesh(const PolygonMesh& mesh, const ModelProblem& problem,
                           Eigen::Index exact_limit = kExactConditionLimit);

}  // namespace polybench
