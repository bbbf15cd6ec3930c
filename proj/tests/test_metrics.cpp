#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "polybench/error.hpp"
#include "polybench/generators.hpp"
#include "polybench/mesh.hpp"
#include "polybench/mesher.hpp"
#include "polybench/metrics.hpp"

using namespace polybench;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<Point2> loop_of(const Polygon2& p) { return {p.vertices().begin(), p.vertices().end()}; }

Polygon2 l_shape() { return Polygon2({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }

Polygon2 transformed(const Polygon2& p, double s, double angle, Point2 shift) {
  std::vector<Point2> v;
  for (Point2 q : p.vertices()) {
    v.push_back({s * (std::cos(angle) * q.x - std::sin(angle) * q.y) + shift.x,
                 s * (std::sin(angle) * q.x + std::cos(angle) * q.y) + shift.y});
  }
  return Polygon2(v);
}

}  // namespace

TEST_CASE("unit square record") {
  const MetricsRecord r = compute_polygon_metrics(Polygon2({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(r[Metric::IC] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r[Metric::CC] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(r[Metric::CR] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(r[Metric::AR] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r[Metric::KE] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r[Metric::KAR] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r[Metric::PAR] == doctest::Approx(2 * pi / 16).epsilon(1e-14));
  CHECK(r[Metric::MA] == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(r[Metric::SE] == 1.0);
  CHECK(r[Metric::ER] == 1.0);
  CHECK(r[Metric::MPD] == 1.0);
  CHECK(r[Metric::NPD] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("inscribed circle") {
  const Circle sq = inscribed_circle(Polygon2({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(sq.radius == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sq.center.x == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sq.center.y == doctest::Approx(0.5).epsilon(1e-9));

  const Circle tri = inscribed_circle(Polygon2({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}));
  CHECK(tri.radius == doctest::Approx(1 / (2 * std::sqrt(3.0))).epsilon(1e-9));

  const Polygon2 l = l_shape();
  const Circle c = inscribed_circle(l);
  CHECK(c.radius == doctest::Approx(oracle::grid_inradius(loop_of(l))).epsilon(1e-6));
  CHECK(oracle::boundary_dist(c.center, loop_of(l)) == doctest::Approx(c.radius).epsilon(1e-9));
}

TEST_CASE("zero-area input is rejected") {
  CHECK_THROWS_AS(Polygon2({{0, 0}, {1, 0}, {2, 0}}), Error);
}

TEST_CASE("enclosing circle") {
  const Circle sq = min_enclosing_circle(Polygon2({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(sq.radius == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  const Circle skinny = min_enclosing_circle(Polygon2({{0, 0}, {1, 0}, {0.5, 0.05}}));
  CHECK(skinny.radius == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(skinny.center.x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(skinny.center.y) < 1e-12);

  const Polygon2 p = make_random_polygon(12, 77);
  const Circle c = min_enclosing_circle(p);
  for (Point2 v : p.vertices()) CHECK(distance(v, c.center) <= c.radius + 1e-12);
}

TEST_CASE("inscribed, enclosing and kernel match the brute-force oracles on random polygons") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const Polygon2 p = make_random_polygon(6 + static_cast<int>(seed % 7), seed);
    const auto loop = loop_of(p);
    const MetricsRecord r = compute_polygon_metrics(p);
    CHECK(r[Metric::IC] == doctest::Approx(oracle::grid_inradius(loop, 200)).epsilon(1e-4));
    CHECK(r[Metric::CC] == doctest::Approx(oracle::enclosing_radius(loop)).epsilon(1e-9));
    const double ke = oracle::visibility_kernel_area(loop);
    if (ke > 1e-3 * r[Metric::AR]) {
      CHECK(r[Metric::KE] == doctest::Approx(ke).epsilon(1e-3));
    } else {
      CHECK(r[Metric::KE] <= 2e-3 * r[Metric::AR]);
    }
  }
}

TEST_CASE("kernel") {
  SUBCASE("convex polygon is its own kernel") {
    const Polygon2 hex(oracle::regular_polygon(6, 1.0));
    const auto k = kernel(hex);
    REQUIRE(k);
    CHECK(signed_area(*k) == doctest::Approx(signed_area(hex)).epsilon(1e-12));
  }
  SUBCASE("L shape kernel is the unit square") {
    const auto k = kernel(l_shape());
    REQUIRE(k);
    CHECK(signed_area(*k) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(signed_area(*k) == doctest::Approx(oracle::visibility_kernel_area(loop_of(l_shape()))).epsilon(1e-3));
  }
  SUBCASE("zeta at t = 0.9 has none") {
    CHECK_FALSE(kernel(make_polygon({FamilyId::Zeta, 0.9, 0})));
    CHECK(compute_polygon_metrics(make_polygon({FamilyId::Zeta, 0.9, 0}))[Metric::KE] == 0.0);
  }
  SUBCASE("kernel is convex") {
    const auto k = kernel(make_polygon({FamilyId::Star, 0.5, 0}));
    REQUIRE(k);
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Polygon2& kp = *k;
    auto sample = [&] {
      const auto tris = sub_triangulate(kp);
      const auto& t = tris[static_cast<std::size_t>(u(gen) * static_cast<double>(tris.size())) % tris.size()];
      double a = u(gen), b = u(gen);
      if (a + b > 1) a = 1 - a, b = 1 - b;
      return kp[t[0]] + a * (kp[t[1]] - kp[t[0]]) + b * (kp[t[2]] - kp[t[0]]);
    };
    for (int i = 0; i < 1000; ++i) {
      const Point2 m = 0.5 * (sample() + sample());
      CHECK(point_in_polygon(m, kp) != Location::Outside);
    }
  }
}

TEST_CASE("star at t = 0.5 has KAR strictly inside (0, 1)") {
  const MetricsRecord r = compute_polygon_metrics(make_polygon({FamilyId::Star, 0.5, 0}));
  CHECK(r[Metric::KAR] > 0.0);
  CHECK(r[Metric::KAR] < 1.0);
}

TEST_CASE("regular polygons approach the circle limits") {
  double last_par = 0;
  for (int n = 3; n <= 64; ++n) {
    const MetricsRecord r = compute_polygon_metrics(Polygon2(oracle::regular_polygon(n, 1.0)));
    CHECK(r[Metric::PAR] > last_par);
    CHECK(r[Metric::PAR] < 0.5);
    last_par = r[Metric::PAR];
  }
  const MetricsRecord big = compute_polygon_metrics(Polygon2(oracle::regular_polygon(96, 1.0)));
  CHECK(big[Metric::CR] > 0.99);
  CHECK(big[Metric::PAR] > 0.499);
}

TEST_CASE("hexagon and triangle closed forms") {
  const MetricsRecord hex = compute_polygon_metrics(Polygon2(oracle::regular_polygon(6, 1.0)));
  CHECK(hex[Metric::IC] == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-9));
  CHECK(hex[Metric::CC] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hex[Metric::AR] == doctest::Approx(3 * std::sqrt(3.0) / 2).epsilon(1e-12));
  const MetricsRecord tri = compute_polygon_metrics(Polygon2({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}));
  CHECK(tri[Metric::CC] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(tri[Metric::MA] == doctest::Approx(pi / 3).epsilon(1e-12));
}

TEST_CASE("similarity transforms") {
  const double s = 2.5;
  for (FamilyId f : kParametricFamilies) {
    const Polygon2 p = make_polygon({f, 0.4, 0});
    const MetricsRecord a = compute_polygon_metrics(p);
    const MetricsRecord b = compute_polygon_metrics(transformed(p, s, 0.7, {3, -1}));
    for (Metric m : kScaleInvariantMetrics) CHECK(b[m] == doctest::Approx(a[m]).epsilon(1e-9));
    for (Metric m : {Metric::IC, Metric::CC, Metric::SE, Metric::MPD}) {
      CHECK(b[m] == doctest::Approx(s * a[m]).epsilon(1e-9));
    }
    for (Metric m : {Metric::AR, Metric::KE}) CHECK(b[m] == doctest::Approx(s * s * a[m]).epsilon(1e-9));
  }
}

TEST_CASE("metric orderings hold on every sample") {
  std::vector<Polygon2> polys;
  for (FamilyId f : kParametricFamilies) {
    for (int i = 0; i <= 10; ++i) polys.push_back(make_polygon({f, i / 10.0, 0}));
  }
  for (std::uint64_t s = 0; s < 30; ++s) polys.push_back(make_polygon({FamilyId::Random, 0, s}));
  for (const Polygon2& p : polys) {
    const MetricsRecord r = compute_polygon_metrics(p);
    CHECK(r[Metric::IC] <= r[Metric::CC]);
    CHECK(r[Metric::KE] <= r[Metric::AR] * (1 + 1e-12));
    CHECK(r[Metric::MPD] <= r[Metric::SE]);
    CHECK(r[Metric::CR] > 0);
    CHECK(r[Metric::CR] < 1);
    CHECK(r[Metric::KAR] >= 0);
    CHECK(r[Metric::KAR] <= 1);
    CHECK(r[Metric::ER] > 0);
    CHECK(r[Metric::ER] <= 1);
    CHECK(r[Metric::NPD] > 0);
    CHECK(r[Metric::NPD] <= 1);
  }
}

TEST_CASE("aggregation") {
  SUBCASE("identical squares give flat statistics") {
    const PolygonMesh m({{0, 0}, {0.5, 0}, {1, 0}, {0, 1}, {0.5, 1}, {1, 1}},
                        {{0, 1, 4, 3}, {1, 2, 5, 4}}, {CellTag::CentralPolygon, CellTag::CentralPolygon});
    const MeshMetricsRecord r = aggregate_mesh_metrics(m, ElementSelector::All);
    for (Metric k : kAllMetrics) {
      CHECK(r[k].min == r[k].avg);
      CHECK(r[k].avg == r[k].max);
    }
  }
  SUBCASE("polygon selector is the central polygon") {
    const Polygon2 p = make_polygon({FamilyId::Star, 0.3, 0});
    const PolygonMesh mesh = build_canvas_mesh(p);
    const MeshMetricsRecord r = aggregate_mesh_metrics(mesh, ElementSelector::NonTriangle);
    const MetricsRecord direct = compute_polygon_metrics(place_on_canvas(p));
    CHECK(r.element_count == 1);
    for (Metric k : kAllMetrics) {
      CHECK(r[k].min == doctest::Approx(direct[k]).epsilon(1e-12));
      CHECK(r[k].max == doctest::Approx(direct[k]).epsilon(1e-12));
    }
  }
  SUBCASE("worst selector on convexity at t = 0.9") {
    const PolygonMesh mesh = build_canvas_mesh(make_polygon({FamilyId::Convexity, 0.9, 0}));
    const MeshMetricsRecord worst = aggregate_mesh_metrics(mesh, ElementSelector::Worst);
    const MeshMetricsRecord poly = aggregate_mesh_metrics(mesh, ElementSelector::NonTriangle);
    CHECK(worst.worst_of(Metric::KAR) <= poly[Metric::KAR].min);

    // Direct scan over the polygon and the triangles touching it.
    std::vector<bool> touched(mesh.vertex_count(), false);
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
      if (mesh.cell_tag(c) == CellTag::CentralPolygon) {
        for (std::size_t v : mesh.cell(c)) touched[v] = true;
      }
    }
    double min_ma = 10;
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
      bool use = mesh.cell_tag(c) == CellTag::CentralPolygon;
      for (std::size_t v : mesh.cell(c)) use = use || touched[v];
      if (use) min_ma = std::min(min_ma, compute_polygon_metrics(mesh.cell_polygon(c))[Metric::MA]);
    }
    CHECK(worst.worst_of(Metric::MA) == min_ma);
  }
  SUBCASE("min <= avg <= max") {
    const PolygonMesh mesh = build_canvas_mesh(make_polygon({FamilyId::Maze, 0.5, 0}));
    const MeshMetricsRecord r = aggregate_mesh_metrics(mesh, ElementSelector::All);
    for (Metric k : kAllMetrics) {
      CHECK(r[k].min <= r[k].avg);
      CHECK(r[k].avg <= r[k].max);
    }
  }
}
