#include "polybench/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "polybench/error.hpp"

namespace polybench {

namespace {

constexpr std::array<std::string_view, 9> kFamilyNames = {
    "comb", "convexity", "isotropy", "maze", "nsided", "star", "ulike", "zeta", "random"};

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Teeth of equal width on a base bar; gaps close and the teeth lean as t grows.
std::vector<Point2> comb(double t) {
  const double s = shrink_factor(t);
  const double tooth = 0.16;
  const double gap = 0.1 * s;
  const double base = 0.1 + 0.3 * s;
  const double height = 0.6;
  const double shear = 0.12 * t;
  const double width = 4 * tooth + 3 * gap;
  std::vector<Point2> v{{0.0, 0.0}, {width, 0.0}};
  for (int k = 3; k >= 0; --k) {
    const double x = k * (tooth + gap);
    v.push_back({x + tooth, base});
    v.push_back({x + tooth + shear, base + height});
    v.push_back({x + shear, base + height});
    v.push_back({x, base});
  }
  return v;
}

// Unit square whose top midpoint sinks toward an extra bottom midpoint.
std::vector<Point2> convexity(double t) {
  return {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.5, 1.0 - 0.95 * t}, {0.0, 1.0}};
}

std::vector<Point2> isotropy(double t) {
  const double s = shrink_factor(t);
  std::vector<Point2> v;
  for (int k = 0; k < 6; ++k) {
    const double a = k * std::numbers::pi / 3.0;
    v.push_back({0.5 + 0.5 * std::cos(a), 0.5 + 0.5 * s * std::sin(a)});
  }
  return v;
}

// Corridor of constant width around a rectangular spiral centerline.
std::vector<Point2> maze(double t) {
  const double half = 0.5 * 0.12 * shrink_factor(t);
  const std::vector<Point2> path{{0.1, 0.1},   {0.9, 0.1},   {0.9, 0.9},   {0.1, 0.9},
                                 {0.1, 0.35},  {0.65, 0.35}, {0.65, 0.65}, {0.35, 0.65}};
  const std::size_t m = path.size();
  std::vector<Point2> normals;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const Point2 d = path[k + 1] - path[k];
    const double len = norm(d);
    normals.push_back({-d.y / len, d.x / len});
  }
  std::vector<Point2> left, right;
  for (std::size_t k = 0; k < m; ++k) {
    Point2 offset;
    if (k == 0) offset = normals.front();
    else if (k == m - 1) offset = normals.back();
    else offset = normals[k - 1] + normals[k];  // right-angle miter
    left.push_back(path[k] + half * offset);
    right.push_back(path[k] - half * offset);
  }
  std::vector<Point2> v(left);
  v.insert(v.end(), right.rbegin(), right.rend());
  return v;
}

std::vector<Point2> regular(int n) {
  std::vector<Point2> v;
  for (int k = 0; k < n; ++k) {
    const double a = std::numbers::pi / 2 + 2 * std::numbers::pi * k / n;
    v.push_back({0.5 + 0.5 * std::cos(a), 0.5 + 0.5 * std::sin(a)});
  }
  return v;
}

// Ten spikes with flat tips. At t = 0 every inner vertex sits on the chord
// between neighbouring tips, so the baseline is convex; as t grows the
// inner vertices sink and the tips narrow.
std::vector<Point2> star(double t) {
  const double half_tip = std::asin(0.1 * shrink_factor(t));
  const double spacing = std::numbers::pi / 5;
  const double inner = 0.5 * std::cos(0.5 * spacing - half_tip) * (1.0 - 0.9 * t);
  std::vector<Point2> v;
  for (int k = 0; k < 10; ++k) {
    const double a = std::numbers::pi / 2 + spacing * k;
    for (double b : {a - half_tip, a + half_tip}) {
      v.push_back({0.5 + 0.5 * std::cos(b), 0.5 + 0.5 * std::sin(b)});
    }
    const double m = a + 0.5 * spacing;
    v.push_back({0.5 + inner * std::cos(m), 0.5 + inner * std::sin(m)});
  }
  return v;
}

// Square with a V-shaped notch from the top that deepens while its bottom
// narrows toward a slit.
std::vector<Point2> ulike(double t) {
  const double bottom = 0.15 * shrink_factor(t);
  const double top = 0.55 - 0.15 * t;
  const double depth = 0.05 + 0.8 * t;
  return {{0.0, 0.0},
          {1.0, 0.0},
          {1.0, 1.0},
          {0.5 + 0.5 * top, 1.0},
          {0.5 + 0.5 * bottom, 1.0 - depth},
          {0.5 - 0.5 * bottom, 1.0 - depth},
          {0.5 - 0.5 * top, 1.0},
          {0.0, 1.0}};
}

// Square with two point-symmetric side notches ending in short flat tips.
// Deepening and tilting the notches leaves a thin diagonal bar between two
// wedges, a Z.
std::vector<Point2> zeta(double t) {
  const double depth = 0.2 + 0.7 * t;
  const double height = 0.45 - 0.4 * t;
  const double half_tip = 0.05 * shrink_factor(t);
  return {{0.0, 0.0},
          {1.0, 0.0},
          {1.0 - depth, height - half_tip},
          {1.0 - depth, height + half_tip},
          {1.0, 1.0},
          {0.0, 1.0},
          {depth, 1.0 - height + half_tip},
          {depth, 1.0 - height - half_tip}};
}

std::vector<Point2> random_points(int n, Rng& rng) {
  const auto mode = rng.below(4);
  const double jitter = rng.uniform() * 0.8;
  std::vector<Point2> pts;
  int attempts = 0;
  while (static_cast<int>(pts.size()) < n) {
    if (++attempts > 100000) throw Error(ErrorKind::GenerationFailed, "point sampling stalled");
    Point2 q;
    if (mode <= 1) {
      q = {0.05 + 0.9 * rng.uniform(), 0.05 + 0.9 * rng.uniform()};
    } else {
      const double a = 2 * std::numbers::pi * rng.uniform();
      const double r = 0.45 * (mode == 2 ? 1.0 - jitter * rng.uniform() : 1.0);
      q = {0.5 + r * std::cos(a), 0.5 + r * std::sin(a)};
    }
    const bool crowded = std::any_of(pts.begin(), pts.end(), [&](Point2 p) { return distance(p, q) < 0.02; });
    if (!crowded) pts.push_back(q);
  }
  return pts;
}

bool untangle(std::vector<Point2>& v, Rng& rng) {
  const std::size_t n = v.size();
  std::vector<std::pair<std::size_t, std::size_t>> crossings;
  for (int swaps = 0; swaps < 100000; ++swaps) {
    crossings.clear();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (segments_intersect(v[i], v[i + 1], v[j], v[(j + 1) % n])) crossings.emplace_back(i, j);
      }
    }
    if (crossings.empty()) return true;
    const auto [i, j] = crossings[rng.below(crossings.size())];
    std::reverse(v.begin() + static_cast<std::ptrdiff_t>(i + 1), v.begin() + static_cast<std::ptrdiff_t>(j + 1));
  }
  return false;
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

std::string_view family_name(FamilyId f) { return kFamilyNames[static_cast<int>(f)]; }

std::optional<FamilyId> parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (kFamilyNames[i] == name) return static_cast<FamilyId>(i);
  }
  return std::nullopt;
}

int random_vertex_count(std::uint64_t seed) {
  Rng rng(seed ^ 0x5eed5eed5eed5eedull);
  return 6 + static_cast<int>(rng.below(15));
}

Polygon2 make_random_polygon(int n, std::uint64_t seed) {
  if (n < 6 || n > 40) throw Error(ErrorKind::InvalidParameter, "random polygon needs 6 <= n <= 40");
  for (std::uint64_t attempt = 0; attempt <= 10; ++attempt) {
    Rng rng(seed + attempt * 0x100000001b3ull);
    auto pts = random_points(n, rng);
    if (untangle(pts, rng)) return Polygon2(std::move(pts));
  }
  throw Error(ErrorKind::GenerationFailed, "2-opt did not converge for seed " + std::to_string(seed));
}

Polygon2 make_polygon(const PolygonSpec& spec) {
  if (!(spec.t >= 0.0 && spec.t <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "t must lie in [0, 1], got " + std::to_string(spec.t));
  }
  const double t = spec.t;
  switch (spec.family) {
    case FamilyId::Comb: return Polygon2(comb(t));
    case FamilyId::Convexity: return Polygon2(convexity(t));
    case FamilyId::Isotropy: return Polygon2(isotropy(t));
    case FamilyId::Maze: return Polygon2(maze(t));
    case FamilyId::NSided: return Polygon2(regular(3 + static_cast<int>(std::lround(57.0 * t))));
    case FamilyId::Star: return Polygon2(star(t));
    case FamilyId::ULike: return Polygon2(ulike(t));
    case FamilyId::Zeta: return Polygon2(zeta(t));
    case FamilyId::Random: return make_random_polygon(random_vertex_count(spec.seed), spec.seed);
  }
  throw Error(ErrorKind::InvalidParameter, "unknown family");
}

}  // namespace polybench
