#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "polybench/error.hpp"
#include "polybench/generators.hpp"
#include "polybench/geom.hpp"

using namespace polybench;

namespace {

constexpr double pi = std::numbers::pi;

Polygon2 unit_square() { return Polygon2({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
Polygon2 l_shape() { return Polygon2({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }
Polygon2 hexagon(double r = 1.0) { return Polygon2(oracle::regular_polygon(6, r)); }

std::vector<Polygon2> sample_polygons() {
  std::vector<Polygon2> out;
  for (FamilyId f : kParametricFamilies) {
    for (double t : {0.0, 0.5, 0.95}) out.push_back(make_polygon({f, t, 0}));
  }
  for (std::uint64_t s = 0; s < 10; ++s) out.push_back(make_random_polygon(6 + static_cast<int>(s), s));
  return out;
}

}  // namespace

TEST_CASE("signed area of simple shapes") {
  CHECK(signed_area(unit_square()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(signed_area(Polygon2({{0, 0}, {1, 0}, {0, 1}})) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("clockwise input is flipped to counter-clockwise") {
  const Polygon2 p({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  CHECK(signed_area(p) > 0);
}

TEST_CASE("self-crossing input is rejected") {
  CHECK_FALSE(is_simple(std::vector<Point2>{{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  CHECK(is_simple(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK_THROWS_AS(Polygon2({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), Error);
}

TEST_CASE("20-gon area matches a Monte-Carlo estimate") {
  const Polygon2 p = make_random_polygon(20, 11);
  const std::vector<Point2> loop(p.vertices().begin(), p.vertices().end());
  const double mc = oracle::monte_carlo_area(loop, 1000000, 5);
  CHECK(std::abs(signed_area(p) - mc) <= 0.01 * signed_area(p));
}

TEST_CASE("interior angles") {
  for (double a : interior_angles(unit_square())) CHECK(a == doctest::Approx(pi / 2).epsilon(1e-14));
  for (double a : interior_angles(hexagon())) CHECK(a == doctest::Approx(2 * pi / 3).epsilon(1e-14));

  const auto l = interior_angles(l_shape());
  int right = 0, reflex = 0;
  for (double a : l) {
    if (std::abs(a - pi / 2) < 1e-12) ++right;
    if (std::abs(a - 3 * pi / 2) < 1e-12) ++reflex;
  }
  CHECK(right == 5);
  CHECK(reflex == 1);
}

TEST_CASE("angle sum is (n-2) pi for every sample polygon") {
  for (const Polygon2& p : sample_polygons()) {
    double sum = 0;
    for (double a : interior_angles(p)) sum += a;
    CHECK(sum == doctest::Approx((static_cast<double>(p.size()) - 2) * pi).epsilon(1e-9));
  }
}

TEST_CASE("generated polygons are simple at t = 0, 0.5, 0.95") {
  for (const Polygon2& p : sample_polygons()) CHECK(is_simple(p.vertices()));
}

TEST_CASE("ear clipping") {
  SUBCASE("square gives two halves") {
    const auto tris = sub_triangulate(unit_square());
    REQUIRE(tris.size() == 2);
    for (const auto& t : tris) {
      const double a = 0.5 * orient2d(unit_square()[t[0]], unit_square()[t[1]], unit_square()[t[2]]);
      CHECK(a == doctest::Approx(0.5).epsilon(1e-15));
    }
  }
  SUBCASE("convex pentagon gives three triangles") {
    const Polygon2 p(oracle::regular_polygon(5, 1.0));
    CHECK(sub_triangulate(p).size() == 3);
  }
  SUBCASE("triangle areas sum to the polygon area") {
    for (const Polygon2& p : sample_polygons()) {
      double sum = 0;
      for (const auto& t : sub_triangulate(p)) {
        const double a = 0.5 * orient2d(p[t[0]], p[t[1]], p[t[2]]);
        CHECK(a > 0);
        sum += a;
      }
      CHECK(sum == doctest::Approx(signed_area(p)).epsilon(1e-12));
    }
  }
  SUBCASE("ulike at t = 0.5 is covered exactly once") {
    const Polygon2 p = make_polygon({FamilyId::ULike, 0.5, 0});
    const std::vector<Point2> loop(p.vertices().begin(), p.vertices().end());
    const auto tris = sub_triangulate(p);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int tested = 0;
    while (tested < 2000) {
      const Point2 q{u(gen), u(gen)};
      if (!oracle::inside(q, loop)) continue;
      ++tested;
      int hits = 0;
      for (const auto& t : tris) {
        const double o1 = oracle::orient(p[t[0]], p[t[1]], q);
        const double o2 = oracle::orient(p[t[1]], p[t[2]], q);
        const double o3 = oracle::orient(p[t[2]], p[t[0]], q);
        if (o1 > 0 && o2 > 0 && o3 > 0) ++hits;
      }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("point location") {
  CHECK(point_in_polygon({0.5, 0.5}, unit_square()) == Location::Inside);
  CHECK(point_in_polygon({1.5, 0.5}, unit_square()) == Location::Outside);
  CHECK(point_in_polygon({1.0, 0.5}, unit_square()) == Location::Boundary);
  CHECK(point_in_polygon({1.0, 1.0}, unit_square()) == Location::Boundary);
  CHECK(point_in_polygon({1.5, 1.5}, l_shape()) == Location::Outside);
}

TEST_CASE("point location agrees with the ray-cast oracle") {
  const Polygon2 p = make_polygon({FamilyId::Maze, 0.3, 0});
  const std::vector<Point2> loop(p.vertices().begin(), p.vertices().end());
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-0.1, 1.1);
  for (int i = 0; i < 5000; ++i) {
    const Point2 q{u(gen), u(gen)};
    const Location loc = point_in_polygon(q, p);
    if (loc == Location::Boundary) continue;
    CHECK((loc == Location::Inside) == oracle::inside(q, loop));
  }
}

TEST_CASE("diameter") {
  CHECK(diameter(unit_square()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(diameter(hexagon()) == doctest::Approx(2.0).epsilon(1e-15));
  const Polygon2 comb = make_polygon({FamilyId::Comb, 0.0, 0});
  const std::vector<Point2> loop(comb.vertices().begin(), comb.vertices().end());
  CHECK(diameter(comb) == oracle::max_pair_distance(loop));
}

TEST_CASE("results do not depend on the starting vertex") {
  for (const Polygon2& p : sample_polygons()) {
    std::vector<Point2> v(p.vertices().begin(), p.vertices().end());
    std::rotate(v.begin(), v.begin() + 1, v.end());
    const Polygon2 q(v);
    CHECK(signed_area(q) == doctest::Approx(signed_area(p)).epsilon(1e-13));
    CHECK(perimeter(q) == doctest::Approx(perimeter(p)).epsilon(1e-13));
    CHECK(diameter(q) == diameter(p));
    auto a = interior_angles(p), b = interior_angles(q);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("area scales quadratically, diameter linearly") {
  const double s = 3.7;
  for (const Polygon2& p : sample_polygons()) {
    std::vector<Point2> v;
    for (Point2 q : p.vertices()) v.push_back(s * q);
    const Polygon2 q(v);
    CHECK(signed_area(q) == doctest::Approx(s * s * signed_area(p)).epsilon(1e-12));
    CHECK(diameter(q) == doctest::Approx(s * diameter(p)).epsilon(1e-12));
  }
}

TEST_CASE("quadrature rules integrate their degree exactly") {
  // Integral of x^a y^b over the reference triangle is a! b! / (a + b + 2)!.
  auto exact = [](int a, int b) { return std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 3); };
  for (int order = 1; order <= 4; ++order) {
    const TriangleQuadrature& rule = triangle_quadrature(order);
    double wsum = 0;
    for (const auto& n : rule.nodes) wsum += n.weight;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int a = 0; a <= order; ++a) {
      for (int b = 0; a + b <= order; ++b) {
        double q = 0;
        for (const auto& n : rule.nodes) q += n.weight * std::pow(n.barycentric[1], a) * std::pow(n.barycentric[2], b);
        CHECK(0.5 * q == doctest::Approx(exact(a, b)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("polygon text round trip is exact") {
  const Polygon2 p = make_random_polygon(9, 4);
  std::stringstream ss;
  write_polygon(ss, p);
  const Polygon2 q = read_polygon(ss);
  REQUIRE(q.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(q[i] == p[i]);
}
