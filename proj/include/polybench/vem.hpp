#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polybench/geom.hpp"
#include "polybench/mesh.hpp"

namespace polybench {

using ScalarField = std::function<double(Point2)>;

/// -Laplace(u) = f on the unit square with u = g on the boundary.
struct ModelProblem {
  std::string name;
  ScalarField exact;
  ScalarField load;
  ScalarField dirichlet;
};

/// u = sin(pi x) sin(pi y) / (2 pi^2), f = sin(pi x) sin(pi y), g = 0.
ModelProblem sinsin_problem();
/// u = 1 + 2x + 3y, f = 0, g = u. Reproduced exactly by the method.
ModelProblem patch_problem();
/// Looks up `sinsin` or `patch`.
std::optional<ModelProblem> find_problem(std::string_view name);

struct VemOptions {
  /// Scale the stabilization by trace(consistency)/n instead of 1.
  bool trace_scaled_stabilization = false;
};

/// Lowest-order element matrices. Monomials are 1, (x - xK)/hK, (y - yK)/hK
/// with xK the area centroid and hK the diameter.
struct LocalElement {
  double diameter = 0.0;
  Point2 center;
  Eigen::MatrixXd D;          ///< n x 3
  Eigen::MatrixXd B;          ///< 3 x n
  Eigen::Matrix3d G;          ///< B * D
  Eigen::MatrixXd proj_star;  ///< 3 x n, G^-1 B
  Eigen::MatrixXd proj;       ///< n x n, D * proj_star
};

inline constexpr double kMaxProjectorCondition = 1e14;

/// Throws SingularG when cond(G) exceeds kMaxProjectorCondition.
LocalElement local_projector(const Polygon2& p);
Eigen::MatrixXd local_stiffness(const LocalElement& e, const VemOptions& opts = {});
Eigen::MatrixXd local_stiffness(const Polygon2& p, const VemOptions& opts = {});

/// Global system. Dofs are mesh vertices in mesh order.
struct LinearSystem {
  std::vector<Point2> nodes;
  Eigen::SparseMatrix<double> stiffness;  ///< before boundary conditions
  Eigen::VectorXd load;                   ///< before boundary conditions
  Eigen::SparseMatrix<double> matrix;     ///< Dirichlet rows/cols replaced by identity
  Eigen::VectorXd rhs;
  std::vector<std::size_t> dirichlet_dofs;
  Eigen::VectorXd dirichlet_values;       ///< aligned with dirichlet_dofs
  std::vector<std::ptrdiff_t> free_index; ///< vertex -> free dof, -1 if prescribed

  std::size_t free_count() const;
  /// Free-dof block of `matrix`.
  Eigen::SparseMatrix<double> reduced() const;
};

/// Throws SingularG naming the offending cell.
LinearSystem assemble(const PolygonMesh& mesh, const ModelProblem& problem, const VemOptions& opts = {});

/// Sparse LDL^T solve of the reduced system. Throws SolveFailed on
/// breakdown or when the residual exceeds 1e-10 relative.
Eigen::VectorXd solve(const LinearSystem& system);

/// Per-element shape constants: gamma0 = kernel inradius / hK, gamma1 =
/// shortest vertex distance / hK. gamma0 is 0 for non-star-shaped cells.
struct ShapeConstants {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
};
std::vector<ShapeConstants> shape_constants(const PolygonMesh& mesh);

}  // namespace polybench
