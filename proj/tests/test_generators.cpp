#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "polybench/error.hpp"
#include "polybench/generators.hpp"
#include "polybench/metrics.hpp"

using namespace polybench;

namespace {

// Metrics each family degrades as t grows.
const std::map<FamilyId, std::vector<Metric>> kStressed = {
    {FamilyId::Comb, {Metric::IC, Metric::CR, Metric::AR, Metric::PAR, Metric::MA, Metric::MPD, Metric::NPD}},
    {FamilyId::Convexity,
     {Metric::IC, Metric::CR, Metric::AR, Metric::KE, Metric::KAR, Metric::MA, Metric::MPD, Metric::NPD}},
    {FamilyId::Isotropy,
     {Metric::IC, Metric::CR, Metric::AR, Metric::KE, Metric::KAR, Metric::SE, Metric::ER, Metric::MPD, Metric::NPD}},
    {FamilyId::Maze,
     {Metric::IC, Metric::CR, Metric::AR, Metric::PAR, Metric::MA, Metric::SE, Metric::ER, Metric::MPD, Metric::NPD}},
    {FamilyId::NSided, {Metric::SE, Metric::MPD, Metric::NPD}},
    {FamilyId::Star, {Metric::AR, Metric::KAR, Metric::MA, Metric::MPD, Metric::NPD}},
    {FamilyId::ULike,
     {Metric::IC, Metric::CR, Metric::AR, Metric::KE, Metric::KAR, Metric::PAR, Metric::MA, Metric::MPD,
      Metric::NPD}},
    {FamilyId::Zeta,
     {Metric::IC, Metric::CR, Metric::AR, Metric::KE, Metric::KAR, Metric::PAR, Metric::MA, Metric::MPD,
      Metric::NPD}},
};

std::string label(FamilyId f, Metric m) { return std::string(family_name(f)) + " " + std::string(metric_name(m)); }

}  // namespace

TEST_CASE("family names round trip") {
  for (FamilyId f : kParametricFamilies) CHECK(parse_family(family_name(f)) == f);
  CHECK(parse_family("random") == FamilyId::Random);
  CHECK_FALSE(parse_family("hexagon"));
}

TEST_CASE("t outside [0, 1] is rejected") {
  CHECK_THROWS_AS(make_polygon({FamilyId::Star, -0.1, 0}), Error);
  CHECK_THROWS_AS(make_polygon({FamilyId::Star, 1.1, 0}), Error);
}

TEST_CASE("every family polygon on a 101-point grid is simple, CCW and not tiny") {
  for (FamilyId f : kParametricFamilies) {
    for (int i = 0; i <= 100; ++i) {
      const Polygon2 p = make_polygon({f, i / 100.0, 0});
      CHECK(is_simple(p.vertices()));
      CHECK(loop_signed_area(p.vertices()) >= 1e-5);
      for (Point2 v : p.vertices()) {
        CHECK(v.x >= 0.0);
        CHECK(v.x <= 1.0);
        CHECK(v.y >= 0.0);
        CHECK(v.y <= 1.0);
      }
    }
  }
}

TEST_CASE("stressed metrics degrade monotonically in t") {
  for (const auto& [family, metrics] : kStressed) {
    std::vector<MetricsRecord> records;
    for (int i = 0; i <= 10; ++i) records.push_back(compute_polygon_metrics(make_polygon({family, i / 10.0, 0})));
    for (Metric m : metrics) {
      for (std::size_t i = 1; i < records.size(); ++i) {
        INFO(label(family, m), " at step ", i);
        CHECK(records[i][m] <= records[i - 1][m] * (1 + 1e-9) + 1e-15);
      }
      // Square corners pin MA at a right angle for the maze and the U.
      const bool pinned = m == Metric::MA && (family == FamilyId::Maze || family == FamilyId::ULike);
      INFO(label(family, m));
      if (!pinned) CHECK(records.back()[m] < records.front()[m]);
    }
  }
}

TEST_CASE("baselines are benign") {
  for (FamilyId f : kParametricFamilies) {
    const MetricsRecord r = compute_polygon_metrics(make_polygon({f, 0.0, 0}));
    INFO(family_name(f));
    CHECK(r[Metric::MA] >= std::numbers::pi / 6 - 1e-12);
    // The maze corridor and the comb teeth are thin by construction.
    if (f != FamilyId::Maze) CHECK(r[Metric::CR] >= 0.3);
    if (f != FamilyId::Comb && f != FamilyId::Zeta && f != FamilyId::Maze) CHECK(r[Metric::KAR] >= 0.5);
  }
  CHECK(compute_polygon_metrics(make_polygon({FamilyId::Star, 0.0, 0}))[Metric::KAR] ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("nsided starts as the inscribed triangle") {
  const Polygon2 p = make_polygon({FamilyId::NSided, 0.0, 0});
  REQUIRE(p.size() == 3);
  for (Point2 v : p.vertices()) CHECK(std::hypot(v.x - 0.5, v.y - 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(make_polygon({FamilyId::NSided, 1.0, 0}).size() == 60);
}

TEST_CASE("isotropy area follows the shrink factor") {
  const double a0 = signed_area(make_polygon({FamilyId::Isotropy, 0.0, 0}));
  for (double t : {0.1, 0.37, 0.5, 0.9, 0.96, 1.0}) {
    const double a = signed_area(make_polygon({FamilyId::Isotropy, t, 0}));
    CHECK(a / a0 == doctest::Approx(std::max(1.0 - t, 0.05)).epsilon(1e-12));
  }
}

TEST_CASE("zeta at t = 0.9 is not star-shaped") {
  CHECK_FALSE(kernel(make_polygon({FamilyId::Zeta, 0.9, 0})));
}

TEST_CASE("vertices move continuously with t") {
  const double dt = 1e-3;
  for (FamilyId f : kParametricFamilies) {
    if (f == FamilyId::NSided) continue;
    for (double t : {0.0, 0.25, 0.5, 0.75, 0.949, 0.998}) {
      const Polygon2 a = make_polygon({f, t, 0});
      const Polygon2 b = make_polygon({f, t + dt, 0});
      REQUIRE(a.size() == b.size());
      double worst = 0;
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, distance(a[i], b[i]));
      INFO(family_name(f), " t=", t);
      CHECK(worst <= 2.0 * dt);
    }
  }
}

TEST_CASE("random polygons") {
  SUBCASE("deterministic per seed") {
    const Polygon2 a = make_random_polygon(6, 1), b = make_random_polygon(6, 1);
    REQUIRE(a.size() == 6);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
  SUBCASE("simple") {
    const Polygon2 p = make_random_polygon(20, 7);
    CHECK(p.size() == 20);
    CHECK(is_simple(p.vertices()));
  }
  SUBCASE("vertex count bounds") {
    CHECK_THROWS_AS(make_random_polygon(5, 0), Error);
    CHECK_THROWS_AS(make_random_polygon(41, 0), Error);
    CHECK(make_random_polygon(40, 3).size() == 40);
  }
  SUBCASE("the first hundred seeds span convex to very non-convex") {
    bool convex = false, wild = false;
    for (std::uint64_t s = 0; s < 100; ++s) {
      const MetricsRecord r = compute_polygon_metrics(make_polygon({FamilyId::Random, 0, s}));
      convex = convex || r[Metric::KAR] > 1 - 1e-9;
      wild = wild || r[Metric::KAR] < 0.5;
      const int n = random_vertex_count(s);
      CHECK(n >= 6);
      CHECK(n <= 20);
    }
    CHECK(convex);
    CHECK(wild);
  }
}

TEST_CASE("rng is reproducible and bounded") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(c.below(13) < 13);
  }
}
