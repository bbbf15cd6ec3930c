#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polybench/error.hpp"
#include "polybench/generators.hpp"
#include "polybench/mesher.hpp"
#include "polybench/perf.hpp"

using namespace polybench;

namespace {

Eigen::VectorXd interpolant(const ScalarField& u, const PolygonMesh& mesh) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(mesh.vertex_count()));
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) v(static_cast<Eigen::Index>(i)) = u(mesh.vertex(i));
  return v;
}

Eigen::SparseMatrix<double> sparse(const Eigen::MatrixXd& d) { return d.sparseView(); }

}  // namespace

TEST_CASE("errors vanish on the exact interpolant of a linear field") {
  const PolygonMesh mesh = build_canvas_mesh(make_polygon({FamilyId::Comb, 0.5, 0}));
  const ModelProblem patch = patch_problem();
  const LinearSystem sys = assemble(mesh, patch);
  const Eigen::VectorXd u = interpolant(patch.exact, mesh);
  CHECK(error_linf(patch.exact, u, mesh) == 0.0);
  CHECK(error_l2(patch.exact, u, mesh) < 1e-14);
  CHECK(error_energy(patch.exact, u, sys) < 1e-7);
}

TEST_CASE("patch test solve") {
  const PolygonMesh mesh = build_canvas_mesh(make_polygon({FamilyId::Zeta, 0.8, 0}));
  const SolverReport r = evaluate_mesh(mesh, patch_problem());
  CHECK(r.eps_inf <= 1e-10);
  CHECK(r.eps_2 <= 1e-10);
  CHECK(r.kappa1 >= 1.0);
  CHECK(r.n_dofs == mesh.vertex_count());
  CHECK(r.h == mesh_size(mesh));
}

TEST_CASE("single perturbation of the max error") {
  const PolygonMesh mesh = build_reference_mesh();
  const ModelProblem p = sinsin_problem();
  Eigen::VectorXd u = interpolant(p.exact, mesh);
  std::size_t interior = 0;
  while (mesh.is_boundary_vertex(interior)) ++interior;
  u(static_cast<Eigen::Index>(interior)) += 0.1;
  const double umax = interpolant(p.exact, mesh).cwiseAbs().maxCoeff();
  CHECK(error_linf(p.exact, u, mesh) == doctest::Approx(0.1 / umax).epsilon(1e-12));
}

TEST_CASE("zero normalizers are reported") {
  const PolygonMesh mesh = build_reference_mesh();
  const ScalarField zero = [](Point2) { return 0.0; };
  const Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.vertex_count()));
  CHECK_THROWS_AS(error_linf(zero, u, mesh), Error);
  CHECK_THROWS_AS(error_l2(zero, u, mesh), Error);
}

TEST_CASE("l2 quadrature integrates one to the domain area") {
  const PolygonMesh mesh = build_canvas_mesh(make_polygon({FamilyId::Star, 0.6, 0}));
  // With u = 1 and u_h = 0 the numerator equals the denominator, both the area.
  const ScalarField one = [](Point2) { return 1.0; };
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.vertex_count()));
  CHECK(error_l2(one, zero, mesh) == doctest::Approx(1.0).epsilon(1e-12));
  double area = 0;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const Polygon2 p = mesh.cell_polygon(c);
    for (const auto& t : sub_triangulate(p)) area += 0.5 * orient2d(p[t[0]], p[t[1]], p[t[2]]);
  }
  CHECK(area == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("energy error ignores constants") {
  const PolygonMesh mesh = build_reference_mesh();
  const ModelProblem p = sinsin_problem();
  const LinearSystem sys = assemble(mesh, p);
  const Eigen::VectorXd shifted = interpolant(p.exact, mesh).array() + 0.25;
  CHECK(error_energy(p.exact, shifted, sys) < 1e-7);
}

TEST_CASE("errors shrink under one mirror level") {
  const PolygonMesh coarse = build_reference_mesh();
  const PolygonMesh fine = mirror(coarse);
  const SolverReport a = evaluate_mesh(coarse, sinsin_problem());
  const SolverReport b = evaluate_mesh(fine, sinsin_problem());
  CHECK(a.eps_2 / b.eps_2 >= 3.3);
  CHECK(a.eps_2 / b.eps_2 <= 4.7);
  CHECK(b.eps_S > 0);
  CHECK(b.eps_S < a.eps_S);
  CHECK(b.h == doctest::Approx(a.h / 2).epsilon(1e-12));
}

TEST_CASE("condition number") {
  CHECK(condition_number_l1(sparse(Eigen::MatrixXd::Identity(5, 5))) == doctest::Approx(1.0));
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 10;
  CHECK(condition_number_l1(sparse(d)) == doctest::Approx(10.0).epsilon(1e-14));

  std::mt19937_64 gen(4);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(50, 50);
  for (Eigen::Index i = 0; i < 50; ++i) {
    for (Eigen::Index j = 0; j < 50; ++j) m(i, j) = g(gen);
  }
  const Eigen::MatrixXd spd = m * m.transpose() + 0.5 * Eigen::MatrixXd::Identity(50, 50);
  CHECK(condition_number_l1(sparse(spd)) == doctest::Approx(oracle::explicit_kappa1(spd)).epsilon(1e-8));
}

TEST_CASE("condition number estimate tracks the exact value") {
  const LinearSystem sys = assemble(build_canvas_mesh(make_polygon({FamilyId::Isotropy, 0.5, 0})), sinsin_problem());
  const Eigen::SparseMatrix<double> a = sys.reduced();
  const double exact = condition_number_l1(a);
  const double estimate = condition_number_l1(a, 0);
  CHECK(estimate <= exact * (1 + 1e-12));
  CHECK(estimate >= exact / 3);
}

TEST_CASE("condition number is invariant under symmetric permutation") {
  const LinearSystem sys = assemble(build_canvas_mesh(make_polygon({FamilyId::Star, 0.5, 0})), sinsin_problem());
  const Eigen::SparseMatrix<double> a = sys.reduced();
  Eigen::VectorXi idx = Eigen::VectorXi::LinSpaced(static_cast<int>(a.rows()), 0, static_cast<int>(a.rows()) - 1);
  std::mt19937 gen(2);
  std::shuffle(idx.data(), idx.data() + idx.size(), gen);
  const Eigen::PermutationMatrix<Eigen::Dynamic> perm(idx);
  const Eigen::SparseMatrix<double> b = perm * a * perm.transpose();
  CHECK(condition_number_l1(b) == doctest::Approx(condition_number_l1(a)).epsilon(1e-9));
}

TEST_CASE("fit on exact power-law data") {
  const std::vector<std::pair<double, double>> s = {{0.25, 3 * 0.0625}, {0.125, 3 * 0.015625}, {0.0625, 3 * 0.00390625}};
  const ConvergenceFit f = fit_convergence(s);
  CHECK(f.C == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.p == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.residual < 1e-12);
  const std::vector<std::pair<double, double>> r = {s[2], s[0], s[1]};
  CHECK(fit_convergence(r).p == doctest::Approx(f.p).epsilon(1e-14));
}

TEST_CASE("fit residual bounds every sample") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> noise(-0.2, 0.2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<double, double>> s;
    for (int k = 0; k < 5; ++k) {
      const double h = std::pow(0.5, k);
      s.emplace_back(h, 2 * h * h * std::exp(noise(gen)));
    }
    const ConvergenceFit f = fit_convergence(s);
    for (const auto& [h, e] : s) CHECK(std::abs(std::log(e) - std::log(f.C) - f.p * std::log(h)) <= f.residual + 1e-12);
  }
}

TEST_CASE("fit rejects bad samples") {
  using S = std::vector<std::pair<double, double>>;
  CHECK_THROWS_AS(fit_convergence(S{{0.5, 0.1}}), Error);
  CHECK_THROWS_AS(fit_convergence(S{{0.5, 0.1}, {0.5, 0.2}}), Error);
  CHECK_THROWS_AS(fit_convergence(S{{0.5, 0.1}, {0.25, 0.0}}), Error);
  CHECK_THROWS_AS(fit_convergence(S{{-0.5, 0.1}, {0.25, 0.1}}), Error);
}

TEST_CASE("solver report values are finite and non-negative") {
  for (FamilyId f : kParametricFamilies) {
    const SolverReport r = evaluate_mesh(build_canvas_mesh(make_polygon({f, 0.5, 0})), sinsin_problem());
    for (double v : {r.eps_inf, r.eps_2, r.eps_S, r.h}) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0);
    }
    CHECK(r.kappa1 >= 1);
  }
}
