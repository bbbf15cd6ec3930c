#include "polybench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "polybench/error.hpp"
#include "polybench/mesh.hpp"

namespace polybench {

namespace {

// Boundary feature a maximal inscribed circle can touch: the supporting
// line of an edge (inward unit normal) or a reflex vertex.
struct Site {
  bool is_line;
  Point2 normal;  // line: inward unit normal
  double offset;  // line: normal . x = offset on the line
  Point2 point;   // vertex site
};

double line_distance(const Site& s, Point2 c) { return dot(s.normal, c) - s.offset; }

double boundary_clearance(const Polygon2& p, Point2 c) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    best = std::min(best, segment_distance(c, p[i], p.vertex(i + 1)));
  }
  return best;
}

// Roots of a*x^2 + b*x + c = 0, tolerant to a vanishing leading term.
std::vector<double> solve_quadratic(double a, double b, double c) {
  std::vector<double> roots;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), 1e-300});
  if (std::abs(a) <= 1e-12 * scale) {
    if (std::abs(b) > 1e-300) roots.push_back(-c / b);
    return roots;
  }
  double disc = b * b - 4 * a * c;
  if (disc < 0.0) {
    if (disc > -1e-12 * b * b) disc = 0.0;
    else return roots;
  }
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  if (q != 0.0) {
    roots.push_back(q / a);
    roots.push_back(c / q);
  } else {
    roots.push_back(0.0);
  }
  return roots;
}

// Centers on the line base + tau*dir whose distance to `q` equals
// r0 + slope*tau (dir has unit length).
void centers_on_line_equidistant_to_point(Point2 base, Point2 dir, double r0, double slope,
                                          Point2 q, std::vector<Point2>& out) {
  const Point2 w = base - q;
  const double a = 1.0 - slope * slope;
  const double b = 2.0 * (dot(dir, w) - r0 * slope);
  const double c = dot(w, w) - r0 * r0;
  for (double tau : solve_quadratic(a, b, c)) {
    if (r0 + slope * tau > 0.0) out.push_back(base + tau * dir);
  }
}

void tangent_centers(const Site& s1, const Site& s2, const Site& s3, std::vector<Point2>& out) {
  const int lines = s1.is_line + s2.is_line + s3.is_line;
  if (lines == 3) {
    // n_i . c - r = offset_i
    const double m[3][3] = {{s1.normal.x, s1.normal.y, -1.0},
                            {s2.normal.x, s2.normal.y, -1.0},
                            {s3.normal.x, s3.normal.y, -1.0}};
    const double rhs[3] = {s1.offset, s2.offset, s3.offset};
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (std::abs(det) < 1e-14) return;
    auto replaced = [&](int col) {
      double a[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = (j == col) ? rhs[i] : m[i][j];
      return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
             a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const double r = replaced(2) / det;
    if (r > 0.0) out.push_back({replaced(0) / det, replaced(1) / det});
    return;
  }
  if (lines == 2) {
    const Site* l1 = nullptr;
    const Site* l2 = nullptr;
    const Site* pt = nullptr;
    for (const Site* s : {&s1, &s2, &s3}) {
      if (!s->is_line) pt = s;
      else if (!l1) l1 = s;
      else l2 = s;
    }
    // Bisector of the two lines: (n1 - n2) . c = o1 - o2.
    const Point2 dn = l1->normal - l2->normal;
    const double len = norm(dn);
    if (len < 1e-12) return;
    const Point2 u = (1.0 / len) * dn;
    const Point2 base = ((l1->offset - l2->offset) / len) * u;
    const Point2 dir{-u.y, u.x};
    centers_on_line_equidistant_to_point(base, dir, line_distance(*l1, base),
                                         dot(l1->normal, dir), pt->point, out);
    return;
  }
  if (lines == 1) {
    const Site* ln = nullptr;
    const Site* p1 = nullptr;
    const Site* p2 = nullptr;
    for (const Site* s : {&s1, &s2, &s3}) {
      if (s->is_line) ln = s;
      else if (!p1) p1 = s;
      else p2 = s;
    }
    const Point2 d = p2->point - p1->point;
    const double len = norm(d);
    if (len == 0.0) return;
    const Point2 base = 0.5 * (p1->point + p2->point);
    const Point2 dir{-d.y / len, d.x / len};
    centers_on_line_equidistant_to_point(base, dir, line_distance(*ln, base),
                                         dot(ln->normal, dir), p1->point, out);
    return;
  }
  const Point2 a = s1.point, b = s2.point, c = s3.point;
  const double d = 2.0 * orient2d(a, b, c);
  if (std::abs(d) < 1e-300) return;
  const Point2 ab = b - a, ac = c - a;
  const double ab2 = dot(ab, ab), ac2 = dot(ac, ac);
  out.push_back({a.x + (ac.y * ab2 - ab.y * ac2) / d, a.y + (ab.x * ac2 - ac.x * ab2) / d});
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Circle circle_from_two(Point2 a, Point2 b) { return {0.5 * (a + b), 0.5 * distance(a, b)}; }

Circle circle_from_three(Point2 a, Point2 b, Point2 c) {
  const Point2 ab = b - a, ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double scale = std::max({dot(ab, ab), dot(ac, ac), dot(c - b, c - b)});
  if (std::abs(d) <= 1e-14 * scale) {
    // Collinear: the farthest pair spans the circle.
    Circle best = circle_from_two(a, b);
    for (Circle cand : {circle_from_two(a, c), circle_from_two(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = dot(ab, ab), ac2 = dot(ac, ac);
  const Point2 center{a.x + (ac.y * ab2 - ab.y * ac2) / d, a.y + (ab.x * ac2 - ac.x * ab2) / d};
  return {center, std::max({distance(center, a), distance(center, b), distance(center, c)})};
}

bool outside(const Circle& c, Point2 p) {
  return distance(c.center, p) > c.radius * (1.0 + 1e-14) + 1e-300;
}

std::vector<Point2> clip_half_plane(const std::vector<Point2>& poly, Point2 a, Point2 b) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 cur = poly[i];
    const Point2 nxt = poly[(i + 1) % n];
    const double sc = orient2d(a, b, cur);
    const double sn = orient2d(a, b, nxt);
    if (sc >= 0.0) out.push_back(cur);
    if ((sc >= 0.0) != (sn >= 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

std::vector<Point2> kernel_loop(const Polygon2& p) {
  double xmin = p[0].x, xmax = p[0].x, ymin = p[0].y, ymax = p[0].y;
  for (const Point2& v : p.vertices()) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const double pad = std::max(xmax - xmin, ymax - ymin);
  std::vector<Point2> region{{xmin - pad, ymin - pad},
                             {xmax + pad, ymin - pad},
                             {xmax + pad, ymax + pad},
                             {xmin - pad, ymax + pad}};
  for (std::size_t i = 0; i < p.size() && !region.empty(); ++i) {
    region = clip_half_plane(region, p[i], p.vertex(i + 1));
  }
  // Drop near-duplicate points left behind by clipping through vertices.
  const double eps = 1e-12 * pad;
  std::vector<Point2> clean;
  for (const Point2& v : region) {
    if (clean.empty() || distance(clean.back(), v) > eps) clean.push_back(v);
  }
  while (clean.size() > 1 && distance(clean.front(), clean.back()) <= eps) clean.pop_back();
  return clean;
}

double kernel_area(const Polygon2& p) {
  const auto loop = kernel_loop(p);
  if (loop.size() < 3) return 0.0;
  const double area = loop_signed_area(loop);
  return area < 1e-14 ? 0.0 : area;
}

}  // namespace

Circle inscribed_circle(const Polygon2& p, double tol) {
  const double area = signed_area(p);
  if (area < 1e-14) throw Error(ErrorKind::DegenerateGeometry, "polygon area below 1e-14");

  const std::size_t n = p.size();
  std::vector<Site> sites;
  const auto angles = interior_angles(p);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = p[i];
    const Point2 e = p.vertex(i + 1) - a;
    const double len = norm(e);
    const Point2 normal{-e.y / len, e.x / len};
    sites.push_back({true, normal, dot(normal, a), {}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (angles[i] > std::numbers::pi * (1.0 + 1e-12)) sites.push_back({false, {}, 0.0, p[i]});
  }

  Circle best{centroid(p), 0.0};
  if (point_in_polygon(best.center, p) == Location::Inside) {
    best.radius = boundary_clearance(p, best.center);
  }
  std::vector<Point2> centers;
  const std::size_t m = sites.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        centers.clear();
        tangent_centers(sites[i], sites[j], sites[k], centers);
        for (const Point2& c : centers) {
          if (!std::isfinite(c.x) || !std::isfinite(c.y)) continue;
          // Cheap rejection: a candidate cannot beat the incumbent if it is
          // already closer than that to one of the tangent lines.
          if (sites[i].is_line && line_distance(sites[i], c) <= best.radius - tol) continue;
          if (point_in_polygon(c, p) != Location::Inside) continue;
          const double clearance = boundary_clearance(p, c);
          if (clearance > best.radius) best = {c, clearance};
        }
      }
    }
  }
  if (best.radius <= 0.0) throw Error(ErrorKind::DegenerateGeometry, "no interior circle found");
  return best;
}

Circle inscribed_circle(const Polygon2& p) { return inscribed_circle(p, 1e-9 * diameter(p)); }

Circle min_enclosing_circle(std::span<const Point2> points, std::uint64_t seed) {
  std::vector<Point2> pts(points.begin(), points.end());
  if (pts.empty()) return {};
  std::uint64_t state = seed;
  for (std::size_t i = pts.size() - 1; i > 0; --i) {
    const std::size_t j = splitmix64(state) % (i + 1);
    std::swap(pts[i], pts[j]);
  }
  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!outside(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (!outside(c, pts[j])) continue;
      c = circle_from_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (outside(c, pts[k])) c = circle_from_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

Circle min_enclosing_circle(const Polygon2& p) { return min_enclosing_circle(p.vertices()); }

std::optional<Polygon2> kernel(const Polygon2& p) {
  auto loop = kernel_loop(p);
  if (loop.size() < 3 || loop_signed_area(loop) < 1e-14) return std::nullopt;
  try {
    return Polygon2(std::move(loop));
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string_view metric_name(Metric m) {
  static constexpr std::array<std::string_view, kMetricCount> kNames = {
      "IC", "CC", "CR", "AR", "KE", "KAR", "PAR", "MA", "SE", "ER", "MPD", "NPD"};
  return kNames[static_cast<int>(m)];
}

bool worse_when_smaller(Metric m) { return m != Metric::CC; }

MetricsRecord compute_polygon_metrics(const Polygon2& p) {
  MetricsRecord r;
  const Circle ic = inscribed_circle(p);
  const Circle cc = min_enclosing_circle(p);
  const double area = signed_area(p);
  const double ke = kernel_area(p);
  const auto lengths = edge_lengths(p);
  const auto angles = interior_angles(p);
  const double per = perimeter(p);
  const auto [se, le] = std::minmax_element(lengths.begin(), lengths.end());
  const double mpd = min_vertex_distance(p);

  r[Metric::IC] = ic.radius;
  r[Metric::CC] = cc.radius;
  r[Metric::CR] = ic.radius / cc.radius;
  r[Metric::AR] = area;
  r[Metric::KE] = std::min(ke, area);
  r[Metric::KAR] = std::min(ke / area, 1.0);
  r[Metric::PAR] = 2.0 * std::numbers::pi * area / (per * per);
  r[Metric::MA] = *std::min_element(angles.begin(), angles.end());
  r[Metric::SE] = *se;
  r[Metric::ER] = *se / *le;
  r[Metric::MPD] = mpd;
  r[Metric::NPD] = mpd / (2.0 * cc.radius);
  return r;
}

MeshMetricsRecord aggregate_metrics(std::span<const MetricsRecord> records) {
  MeshMetricsRecord out;
  out.element_count = records.size();
  if (records.empty()) return out;
  for (std::size_t k = 0; k < kMetricCount; ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (const auto& r : records) {
      lo = std::min(lo, r.values[k]);
      hi = std::max(hi, r.values[k]);
      sum += r.values[k];
    }
    // Clamp keeps min <= avg <= max exact despite summation rounding.
    out.stats[k] = {lo, std::clamp(sum / static_cast<double>(records.size()), lo, hi), hi};
    out.worst[k] = worse_when_smaller(kAllMetrics[k]) ? lo : hi;
  }
  return out;
}

MeshMetricsRecord aggregate_mesh_metrics(const PolygonMesh& mesh, ElementSelector selector) {
  std::vector<std::size_t> chosen;
  const std::size_t nc = mesh.cell_count();
  switch (selector) {
    case ElementSelector::All:
      for (std::size_t c = 0; c < nc; ++c) chosen.push_back(c);
      break;
    case ElementSelector::NonTriangle:
      for (std::size_t c = 0; c < nc; ++c) {
        if (mesh.cell_tag(c) == CellTag::CentralPolygon) chosen.push_back(c);
      }
      break;
    case ElementSelector::Worst: {
      std::vector<bool> touched(mesh.vertex_count(), false);
      for (std::size_t c = 0; c < nc; ++c) {
        if (mesh.cell_tag(c) != CellTag::CentralPolygon) continue;
        for (std::size_t v : mesh.cell(c)) touched[v] = true;
      }
      for (std::size_t c = 0; c < nc; ++c) {
        const auto& cell = mesh.cell(c);
        if (mesh.cell_tag(c) == CellTag::CentralPolygon ||
            std::any_of(cell.begin(), cell.end(), [&](std::size_t v) { return touched[v]; })) {
          chosen.push_back(c);
        }
      }
      break;
    }
  }
  if (chosen.empty()) {
    for (std::size_t c = 0; c < nc; ++c) chosen.push_back(c);
  }
  std::vector<MetricsRecord> records;
  records.reserve(chosen.size());
  for (std::size_t c : chosen) records.push_back(compute_polygon_metrics(mesh.cell_polygon(c)));
  return aggregate_metrics(records);
}

}  // namespace polybench
