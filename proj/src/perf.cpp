#include "polybench/perf.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "polybench/error.hpp"

namespace polybench {

namespace {

using Ldlt = Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>;

double norm1(const Eigen::SparseMatrix<double>& a) {
  double best = 0.0;
  for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
    double sum = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, c); it; ++it) sum += std::abs(it.value());
    best = std::max(best, sum);
  }
  return best;
}

double exact_inverse_norm1(const Ldlt& ldlt, Eigen::Index n) {
  constexpr Eigen::Index kBlock = 64;
  double best = 0.0;
  for (Eigen::Index start = 0; start < n; start += kBlock) {
    const Eigen::Index width = std::min(kBlock, n - start);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, width);
    for (Eigen::Index k = 0; k < width; ++k) rhs(start + k, k) = 1.0;
    const Eigen::MatrixXd cols = ldlt.solve(rhs);
    best = std::max(best, cols.cwiseAbs().colwise().sum().maxCoeff());
  }
  return best;
}

// Hager's method with Higham's safeguards; A^-1 is symmetric so every
// transposed solve is a plain solve.
double estimate_inverse_norm1(const Ldlt& ldlt, Eigen::Index n) {
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  Eigen::Index last_j = -1;
  for (int iter = 0; iter < 5; ++iter) {
    const Eigen::VectorXd y = ldlt.solve(x);
    const double next = y.lpNorm<1>();
    if (iter > 0 && next <= estimate) break;
    estimate = next;
    const Eigen::VectorXd xi = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
    const Eigen::VectorXd z = ldlt.solve(xi);
    Eigen::Index j = 0;
    z.cwiseAbs().maxCoeff(&j);
    if (iter > 0 && (j == last_j || std::abs(z(j)) <= z.dot(x))) break;
    last_j = j;
    x.setZero();
    x(j) = 1.0;
  }
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = 1.0 + (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0);
    b(i) = (i % 2 == 0) ? mag : -mag;
  }
  const double alt = 2.0 * ldlt.solve(b).lpNorm<1>() / (3.0 * static_cast<double>(n));
  return std::max(estimate, alt);
}

Eigen::VectorXd vertex_values(const ScalarField& u, const std::vector<Point2>& nodes) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) v(static_cast<Eigen::Index>(i)) = u(nodes[i]);
  return v;
}

}  // namespace

double error_linf(const ScalarField& u, const Eigen::VectorXd& uh, const PolygonMesh& mesh) {
  double num = 0.0, den = 0.0;
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    const double exact = u(mesh.vertex(v));
    num = std::max(num, std::abs(exact - uh(static_cast<Eigen::Index>(v))));
    den = std::max(den, std::abs(exact));
  }
  if (den < 1e-300) throw Error(ErrorKind::ZeroNormalizer, "exact solution vanishes at every vertex");
  return num / den;
}

double error_l2(const ScalarField& u, const Eigen::VectorXd& uh, const PolygonMesh& mesh) {
  const TriangleQuadrature& rule = triangle_quadrature(4);
  double num = 0.0, den = 0.0;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cell(c);
    const Polygon2 poly(mesh.cell_points(c));
    const LocalElement e = local_projector(poly);
    Eigen::VectorXd local(static_cast<Eigen::Index>(cell.size()));
    for (std::size_t i = 0; i < cell.size(); ++i) local(static_cast<Eigen::Index>(i)) = uh(static_cast<Eigen::Index>(cell[i]));
    const Eigen::Vector3d coef = e.proj_star * local;
    auto projected = [&](Point2 q) {
      return coef(0) + coef(1) * (q.x - e.center.x) / e.diameter + coef(2) * (q.y - e.center.y) / e.diameter;
    };
    for (const auto& tri : sub_triangulate(poly)) {
      const Point2 a = poly[tri[0]], b = poly[tri[1]], d = poly[tri[2]];
      const double area = 0.5 * std::abs(orient2d(a, b, d));
      for (const auto& node : rule.nodes) {
        const auto& l = node.barycentric;
        const Point2 q = l[0] * a + l[1] * b + l[2] * d;
        const double exact = u(q);
        const double diff = exact - projected(q);
        num += node.weight * area * diff * diff;
        den += node.weight * area * exact * exact;
      }
    }
  }
  if (den < 1e-300) throw Error(ErrorKind::ZeroNormalizer, "exact solution has zero L2 norm");
  return std::sqrt(num / den);
}

double error_energy(const ScalarField& u, const Eigen::VectorXd& uh, const LinearSystem& system) {
  const Eigen::VectorXd exact = vertex_values(u, system.nodes);
  const Eigen::VectorXd e = exact - uh;
  const double ese = e.dot(system.stiffness * e);
  const double scale = norm1(system.stiffness) * e.squaredNorm();
  if (ese < -1e-10 * scale) {
    throw Error(ErrorKind::NegativeQuadraticForm, "e^T S e = " + std::to_string(ese));
  }
  const double usu = exact.dot(system.stiffness * exact);
  if (!(usu > 0.0)) throw Error(ErrorKind::ZeroNormalizer, "exact solution has zero energy");
  return std::sqrt(std::max(ese, 0.0) / usu);
}

double condition_number_l1(const Eigen::SparseMatrix<double>& a, Eigen::Index exact_limit) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 1.0;
  Ldlt ldlt(a);
  if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::SolveFailed, "LDL^T factorization failed");
  const double inv = n <= exact_limit ? exact_inverse_norm1(ldlt, n) : estimate_inverse_norm1(ldlt, n);
  if (!std::isfinite(inv)) throw Error(ErrorKind::SolveFailed, "inverse norm is not finite");
  return norm1(a) * inv;
}

ConvergenceFit fit_convergence(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 2) throw Error(ErrorKind::InvalidSamples, "need at least two (h, eps) pairs");
  std::set<double> seen;
  for (const auto& [h, eps] : samples) {
    if (!(h > 0.0) || !(eps > 0.0)) throw Error(ErrorKind::InvalidSamples, "h and eps must be positive");
    if (!seen.insert(h).second) throw Error(ErrorKind::InvalidSamples, "duplicate mesh size");
  }
  const double n = static_cast<double>(samples.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [h, eps] : samples) {
    sx += std::log(h);
    sy += std::log(eps);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [h, eps] : samples) {
    const double dx = std::log(h) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(eps) - my);
  }
  ConvergenceFit fit;
  fit.p = sxy / sxx;
  const double intercept = my - fit.p * mx;
  fit.C = std::exp(intercept);
  for (const auto& [h, eps] : samples) {
    fit.residual = std::max(fit.residual, std::abs(std::log(eps) - intercept - fit.p * std::log(h)));
  }
  return fit;
}

SolverReport evaluate_mesh(const PolygonMesh& mesh, const ModelProblem& problem, Eigen::Index exact_limit) {
  const LinearSystem system = assemble(mesh, problem);
  const Eigen::VectorXd uh = solve(system);
  SolverReport r;
  r.eps_inf = error_linf(problem.exact, uh, mesh);
  r.eps_2 = error_l2(problem.exact, uh, mesh);
  r.eps_S = error_energy(problem.exact, uh, system);
  r.kappa1 = condition_number_l1(system.reduced(), exact_limit);
  r.h = mesh_size(mesh);
  r.n_dofs = mesh.vertex_count();
  return r;
}

}  // namespace polybench
