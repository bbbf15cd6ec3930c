#include "polybench/vem.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "polybench/error.hpp"
#include "polybench/metrics.hpp"

namespace polybench {

ModelProblem sinsin_problem() {
  constexpr double pi = std::numbers::pi;
  return {"sinsin",
          [](Point2 p) { return std::sin(pi * p.x) * std::sin(pi * p.y) / (2 * pi * pi); },
          [](Point2 p) { return std::sin(pi * p.x) * std::sin(pi * p.y); },
          [](Point2) { return 0.0; }};
}

ModelProblem patch_problem() {
  auto u = [](Point2 p) { return 1.0 + 2.0 * p.x + 3.0 * p.y; };
  return {"patch", u, [](Point2) { return 0.0; }, u};
}

std::optional<ModelProblem> find_problem(std::string_view name) {
  if (name == "sinsin") return sinsin_problem();
  if (name == "patch") return patch_problem();
  return std::nullopt;
}

LocalElement local_projector(const Polygon2& p) {
  const std::size_t n = p.size();
  LocalElement e;
  e.diameter = diameter(p);
  e.center = centroid(p);
  const double h = e.diameter;

  e.D.resize(n, 3);
  e.B.resize(3, n);
  for (std::size_t i = 0; i < n; ++i) {
    e.D(i, 0) = 1.0;
    e.D(i, 1) = (p[i].x - e.center.x) / h;
    e.D(i, 2) = (p[i].y - e.center.y) / h;

    // Trapezoid rule on the two edges meeting at vertex i; the scaled
    // normal of edge a->b is (b.y - a.y, a.x - b.x).
    const Point2 before = p.vertex(i + n - 1);
    const Point2 after = p.vertex(i + 1);
    const Point2 normals{after.y - before.y, before.x - after.x};
    e.B(0, i) = 1.0 / static_cast<double>(n);
    e.B(1, i) = normals.x / (2.0 * h);
    e.B(2, i) = normals.y / (2.0 * h);
  }
  e.G = e.B * e.D;

  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(e.G);
  const auto& sv = svd.singularValues();
  if (!(sv(2) > 0.0) || sv(0) / sv(2) > kMaxProjectorCondition) {
    throw Error(ErrorKind::SingularG, "projector matrix G is numerically singular");
  }
  e.proj_star = e.G.partialPivLu().solve(e.B);
  e.proj = e.D * e.proj_star;
  return e;
}

Eigen::MatrixXd local_stiffness(const LocalElement& e, const VemOptions& opts) {
  const Eigen::Index n = e.D.rows();
  Eigen::Matrix3d g = e.G;
  g.row(0).setZero();
  g.col(0).setZero();
  Eigen::MatrixXd k = e.proj_star.transpose() * g * e.proj_star;
  const Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n) - e.proj;
  const double alpha = opts.trace_scaled_stabilization ? k.trace() / static_cast<double>(n) : 1.0;
  k += alpha * r.transpose() * r;
  return 0.5 * (k + k.transpose());
}

Eigen::MatrixXd local_stiffness(const Polygon2& p, const VemOptions& opts) {
  return local_stiffness(local_projector(p), opts);
}

std::size_t LinearSystem::free_count() const {
  return static_cast<std::size_t>(std::count_if(free_index.begin(), free_index.end(),
                                                [](std::ptrdiff_t i) { return i >= 0; }));
}

Eigen::SparseMatrix<double> LinearSystem::reduced() const {
  const auto m = static_cast<Eigen::Index>(free_count());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(matrix.nonZeros()));
  for (Eigen::Index c = 0; c < matrix.outerSize(); ++c) {
    const std::ptrdiff_t fc = free_index[static_cast<std::size_t>(c)];
    if (fc < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, c); it; ++it) {
      const std::ptrdiff_t fr = free_index[static_cast<std::size_t>(it.row())];
      if (fr >= 0) entries.emplace_back(fr, fc, it.value());
    }
  }
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

LinearSystem assemble(const PolygonMesh& mesh, const ModelProblem& problem, const VemOptions& opts) {
  const auto nv = static_cast<Eigen::Index>(mesh.vertex_count());
  LinearSystem sys;
  sys.nodes = mesh.vertices();
  sys.load = Eigen::VectorXd::Zero(nv);

  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cell(c);
    const Polygon2 poly(mesh.cell_points(c));
    Eigen::MatrixXd k;
    try {
      k = local_stiffness(poly, opts);
    } catch (const Error& err) {
      throw Error(err.kind(), "cell " + std::to_string(c) + ": " + err.what());
    }
    const std::size_t n = cell.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        entries.emplace_back(cell[i], cell[j], k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      }
    }
    const double share = signed_area(poly) * problem.load(centroid(poly)) / static_cast<double>(n);
    for (std::size_t v : cell) sys.load(static_cast<Eigen::Index>(v)) += share;
  }
  sys.stiffness.resize(nv, nv);
  sys.stiffness.setFromTriplets(entries.begin(), entries.end());

  sys.free_index.assign(mesh.vertex_count(), -1);
  Eigen::VectorXd prescribed = Eigen::VectorXd::Zero(nv);
  std::vector<bool> fixed(mesh.vertex_count(), false);
  std::ptrdiff_t next_free = 0;
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.is_boundary_vertex(v)) {
      fixed[v] = true;
      sys.dirichlet_dofs.push_back(v);
      prescribed(static_cast<Eigen::Index>(v)) = problem.dirichlet(mesh.vertex(v));
    } else {
      sys.free_index[v] = next_free++;
    }
  }
  sys.dirichlet_values.resize(static_cast<Eigen::Index>(sys.dirichlet_dofs.size()));
  for (std::size_t k = 0; k < sys.dirichlet_dofs.size(); ++k) {
    sys.dirichlet_values(static_cast<Eigen::Index>(k)) = prescribed(static_cast<Eigen::Index>(sys.dirichlet_dofs[k]));
  }

  sys.rhs = sys.load - sys.stiffness * prescribed;
  std::vector<Eigen::Triplet<double>> kept;
  kept.reserve(static_cast<std::size_t>(sys.stiffness.nonZeros()));
  for (Eigen::Index c = 0; c < sys.stiffness.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.stiffness, c); it; ++it) {
      if (!fixed[static_cast<std::size_t>(it.row())] && !fixed[static_cast<std::size_t>(it.col())]) {
        kept.emplace_back(it.row(), it.col(), it.value());
      }
    }
  }
  for (std::size_t v : sys.dirichlet_dofs) {
    const auto i = static_cast<Eigen::Index>(v);
    kept.emplace_back(i, i, 1.0);
    sys.rhs(i) = prescribed(i);
  }
  sys.matrix.resize(nv, nv);
  sys.matrix.setFromTriplets(kept.begin(), kept.end());
  return sys;
}

Eigen::VectorXd solve(const LinearSystem& system) {
  const auto nv = static_cast<Eigen::Index>(system.nodes.size());
  Eigen::VectorXd u = Eigen::VectorXd::Zero(nv);
  for (std::size_t k = 0; k < system.dirichlet_dofs.size(); ++k) {
    u(static_cast<Eigen::Index>(system.dirichlet_dofs[k])) = system.dirichlet_values(static_cast<Eigen::Index>(k));
  }
  const auto m = static_cast<Eigen::Index>(system.free_count());
  if (m == 0) return u;

  Eigen::VectorXd b(m);
  for (Eigen::Index v = 0; v < nv; ++v) {
    const std::ptrdiff_t f = system.free_index[static_cast<std::size_t>(v)];
    if (f >= 0) b(f) = system.rhs(v);
  }
  const Eigen::SparseMatrix<double> a = system.reduced();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
  if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::SolveFailed, "LDL^T factorization failed");
  const Eigen::VectorXd x = ldlt.solve(b);
  if (ldlt.info() != Eigen::Success || !x.allFinite()) throw Error(ErrorKind::SolveFailed, "back substitution failed");
  for (Eigen::Index v = 0; v < nv; ++v) {
    const std::ptrdiff_t f = system.free_index[static_cast<std::size_t>(v)];
    if (f >= 0) u(v) = x(f);
  }
  const double residual = (system.matrix * u - system.rhs).norm();
  if (residual > 1e-10 * std::max(system.rhs.norm(), 1e-300) && residual > 1e-300) {
    throw Error(ErrorKind::SolveFailed, "residual " + std::to_string(residual) + " above tolerance");
  }
  return u;
}

std::vector<ShapeConstants> shape_constants(const PolygonMesh& mesh) {
  std::vector<ShapeConstants> out(mesh.cell_count());
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const Polygon2 p = mesh.cell_polygon(c);
    const double h = diameter(p);
    out[c].gamma1 = min_vertex_distance(p) / h;
    if (const auto k = kernel(p)) out[c].gamma0 = inscribed_circle(*k).radius / h;
  }
  return out;
}

}  // namespace polybench
