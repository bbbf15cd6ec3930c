#include "polybench/geom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "polybench/error.hpp"

namespace polybench {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidPolygon: return "InvalidPolygon";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::RefinementFailed: return "RefinementFailed";
    case ErrorKind::SingularG: return "SingularG";
    case ErrorKind::SolveFailed: return "SolveFailed";
    case ErrorKind::ZeroNormalizer: return "ZeroNormalizer";
    case ErrorKind::NegativeQuadraticForm: return "NegativeQuadraticForm";
    case ErrorKind::InvalidSamples: return "InvalidSamples";
    case ErrorKind::ConstantColumn: return "ConstantColumn";
    case ErrorKind::MissingJoin: return "MissingJoin";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

double norm(Point2 a) { return std::hypot(a.x, a.y); }
double distance(Point2 a, Point2 b) { return norm(b - a); }

double segment_distance(Point2 q, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(q, a);
  const double t = std::clamp(dot(q - a, ab) / len2, 0.0, 1.0);
  return distance(q, a + t * ab);
}

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// c lies on the closed segment [a,b], given that a, b, c are collinear.
bool within_box(Point2 a, Point2 b, Point2 c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int o1 = sign(orient2d(a, b, c));
  const int o2 = sign(orient2d(a, b, d));
  const int o3 = sign(orient2d(c, d, a));
  const int o4 = sign(orient2d(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && within_box(a, b, c)) return true;
  if (o2 == 0 && within_box(a, b, d)) return true;
  if (o3 == 0 && within_box(c, d, a)) return true;
  if (o4 == 0 && within_box(c, d, b)) return true;
  return false;
}

double loop_signed_area(std::span<const Point2> loop) {
  double twice = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(loop[i], loop[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Polygon2::Polygon2(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw Error(ErrorKind::InvalidPolygon, "fewer than 3 vertices");
  for (const Point2& v : vertices_) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw Error(ErrorKind::InvalidPolygon, "non-finite vertex coordinate");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices_[i] == vertices_[(i + 1) % n]) {
      throw Error(ErrorKind::InvalidPolygon, "zero-length edge at vertex " + std::to_string(i));
    }
  }
  const double area = loop_signed_area(vertices_);
  if (area == 0.0) throw Error(ErrorKind::InvalidPolygon, "zero signed area");
  if (area < 0.0) std::reverse(vertices_.begin(), vertices_.end());
  if (!is_simple(vertices_)) throw Error(ErrorKind::InvalidPolygon, "polygon is not simple");
}

double signed_area(const Polygon2& p) { return loop_signed_area(p.vertices()); }

double perimeter(const Polygon2& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += distance(p[i], p.vertex(i + 1));
  return total;
}

Point2 centroid(const Polygon2& p) {
  double cx = 0.0;
  double cy = 0.0;
  double twice_area = 0.0;
  // Shift to the first vertex to limit cancellation on small far-away cells.
  const Point2 o = p[0];
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2 a = p[i] - o;
    const Point2 b = p.vertex(i + 1) - o;
    const double w = cross(a, b);
    twice_area += w;
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  return {o.x + cx / (3.0 * twice_area), o.y + cy / (3.0 * twice_area)};
}

std::vector<double> edge_lengths(const Polygon2& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = distance(p[i], p.vertex(i + 1));
  return out;
}

std::vector<double> interior_angles(const Polygon2& p) {
  const std::size_t n = p.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 prev = p.vertex(i + n - 1);
    const Point2 cur = p[i];
    const Point2 next = p.vertex(i + 1);
    const Point2 to_next = next - cur;
    const Point2 to_prev = prev - cur;
    // Counter-clockwise sweep from the outgoing edge to the incoming edge.
    double angle = std::atan2(cross(to_next, to_prev), dot(to_next, to_prev));
    if (angle <= 0.0) angle += 2.0 * std::numbers::pi;
    out[i] = angle;
  }
  return out;
}

bool is_simple(std::span<const Point2> v) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % n];
    const Point2 c = v[(i + 2) % n];
    if (a == b) return false;
    // Consecutive edges folding back onto each other.
    if (orient2d(a, b, c) == 0.0 && dot(b - a, c - b) < 0.0) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
    }
  }
  return true;
}

namespace {

double triangle_min_angle(Point2 a, Point2 b, Point2 c) {
  const double la = distance(b, c);
  const double lb = distance(c, a);
  const double lc = distance(a, b);
  const double twice = std::abs(orient2d(a, b, c));
  // Smallest angle is opposite the shortest side: sin = 2A / (product of the others).
  const double lmin = std::min({la, lb, lc});
  const double lmax = std::max({la, lb, lc});
  const double lmid = la + lb + lc - lmin - lmax;
  return std::asin(std::clamp(twice / (lmid * lmax), 0.0, 1.0));
}

bool in_closed_triangle(Point2 q, Point2 a, Point2 b, Point2 c) {
  return orient2d(a, b, q) >= 0.0 && orient2d(b, c, q) >= 0.0 && orient2d(c, a, q) >= 0.0;
}

}  // namespace

std::vector<TriangleIndices> sub_triangulate(const Polygon2& p) {
  const std::size_t n = p.size();
  const double diam = diameter(p);
  if (signed_area(p) <= 1e-14 * diam * diam) {
    throw Error(ErrorKind::DegenerateGeometry, "polygon area is numerically zero");
  }
  std::vector<TriangleIndices> out;
  out.reserve(n - 2);
  std::vector<std::size_t> ring(n);
  for (std::size_t i = 0; i < n; ++i) ring[i] = i;

  while (ring.size() > 3) {
    const std::size_t m = ring.size();
    std::size_t best = m;
    double best_quality = -1.0;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t ia = ring[(k + m - 1) % m];
      const std::size_t ib = ring[k];
      const std::size_t ic = ring[(k + 1) % m];
      const Point2 a = p[ia], b = p[ib], c = p[ic];
      if (orient2d(a, b, c) <= 0.0) continue;
      bool blocked = false;
      for (std::size_t r : ring) {
        if (r == ia || r == ib || r == ic) continue;
        if (in_closed_triangle(p[r], a, b, c)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      const double quality = triangle_min_angle(a, b, c);
      if (quality > best_quality) {
        best_quality = quality;
        best = k;
      }
    }
    if (best == m) throw Error(ErrorKind::DegenerateGeometry, "ear clipping found no ear");
    out.push_back({ring[(best + m - 1) % m], ring[best], ring[(best + 1) % m]});
    ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(best));
  }
  if (orient2d(p[ring[0]], p[ring[1]], p[ring[2]]) <= 0.0) {
    throw Error(ErrorKind::DegenerateGeometry, "last ear has non-positive area");
  }
  out.push_back({ring[0], ring[1], ring[2]});
  return out;
}

Location point_in_loop(Point2 q, std::span<const Point2> loop) {
  const std::size_t n = loop.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = loop[i];
    const Point2 b = loop[j];
    if (segment_distance(q, a, b) <= kBoundaryTolerance) return Location::Boundary;
    if ((a.y > q.y) != (b.y > q.y) && q.x < (b.x - a.x) * (q.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

Location point_in_polygon(Point2 q, const Polygon2& p) { return point_in_loop(q, p.vertices()); }

double diameter(std::span<const Point2> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, distance(points[i], points[j]));
    }
  }
  return best;
}

double diameter(const Polygon2& p) { return diameter(p.vertices()); }

double min_vertex_distance(const Polygon2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) best = std::min(best, distance(p[i], p[j]));
  }
  return best;
}

const TriangleQuadrature& triangle_quadrature(int order) {
  static const TriangleQuadrature kOrder1{1, {{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 1.0}}};
  static const TriangleQuadrature kOrder2{
      2,
      {{{2.0 / 3, 1.0 / 6, 1.0 / 6}, 1.0 / 3},
       {{1.0 / 6, 2.0 / 3, 1.0 / 6}, 1.0 / 3},
       {{1.0 / 6, 1.0 / 6, 2.0 / 3}, 1.0 / 3}}};
  // Dunavant degree-4 rule.
  static const TriangleQuadrature kOrder4 = [] {
    constexpr double a = 0.44594849091596488632;
    constexpr double wa = 0.22338158967801146570;
    constexpr double b = 0.091576213509770743460;
    constexpr double wb = 0.10995174365532186764;
    TriangleQuadrature q;
    q.order = 4;
    q.nodes = {{{a, a, 1 - 2 * a}, wa}, {{a, 1 - 2 * a, a}, wa}, {{1 - 2 * a, a, a}, wa},
               {{b, b, 1 - 2 * b}, wb}, {{b, 1 - 2 * b, b}, wb}, {{1 - 2 * b, b, b}, wb}};
    return q;
  }();
  if (order <= 1) return kOrder1;
  if (order == 2) return kOrder2;
  if (order <= 4) return kOrder4;
  throw Error(ErrorKind::InvalidParameter, "quadrature order > 4 not available");
}

void write_polygon(std::ostream& os, const Polygon2& p) {
  os << p.size() << '\n';
  char buf[64];
  for (const Point2& v : p.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
    os << buf;
  }
}

Polygon2 read_polygon(std::istream& is) {
  std::size_t n = 0;
  if (!(is >> n)) throw Error(ErrorKind::Io, "missing vertex count");
  std::vector<Point2> v(n);
  for (auto& pt : v) {
    if (!(is >> pt.x >> pt.y)) throw Error(ErrorKind::Io, "truncated vertex list");
  }
  return Polygon2(std::move(v));
}

}  // namespace polybench
