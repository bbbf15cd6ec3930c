#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace polybench {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a);
double distance(Point2 a, Point2 b);

/// Twice the signed area of triangle abc (positive when counter-clockwise).
inline double orient2d(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

/// Euclidean distance from q to the closed segment [a, b].
double segment_distance(Point2 q, Point2 a, Point2 b);

/// True when the closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

struct Circle {
  Point2 center;
  double radius = 0.0;
};

/// Simple polygon with counter-clockwise vertex order and no repeated closing
/// vertex. Construction validates the invariants and flips clockwise input.
class Polygon2 {
 public:
  explicit Polygon2(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }
  const Point2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

 private:
  std::vector<Point2> vertices_;
};

/// Shoelace area of an arbitrary vertex loop (sign follows orientation).
double loop_signed_area(std::span<const Point2> loop);

double signed_area(const Polygon2& p);
double perimeter(const Polygon2& p);
Point2 centroid(const Polygon2& p);
std::vector<double> edge_lengths(const Polygon2& p);

/// Interior angle at each vertex in (0, 2*pi); reflex vertices exceed pi.
std::vector<double> interior_angles(const Polygon2& p);

/// Brute-force O(n^2) test: no pair of non-adjacent edges meets and adjacent
/// edges meet only at their shared vertex.
bool is_simple(std::span<const Point2> vertices);

using TriangleIndices = std::array<std::size_t, 3>;

/// Ear-clipping triangulation. Among the valid ears the one with the largest
/// minimum angle is cut first, which keeps sub-triangles well shaped.
std::vector<TriangleIndices> sub_triangulate(const Polygon2& p);

enum class Location { Inside, Boundary, Outside };

inline constexpr double kBoundaryTolerance = 1e-12;

Location point_in_polygon(Point2 q, const Polygon2& p);
Location point_in_loop(Point2 q, std::span<const Point2> loop);

/// Maximum pairwise vertex distance.
double diameter(const Polygon2& p);
double diameter(std::span<const Point2> points);

/// Minimum pairwise vertex distance over all (not only consecutive) pairs.
double min_vertex_distance(const Polygon2& p);

/// Symmetric triangle quadrature on barycentric coordinates; weights sum to 1.
struct TriangleQuadrature {
  struct Node {
    std::array<double, 3> barycentric;
    double weight;
  };
  int order = 0;
  std::vector<Node> nodes;
};

/// Returns a rule exact for polynomials of total degree <= order (order <= 4).
const TriangleQuadrature& triangle_quadrature(int order);

/// Polygon text format: vertex count, then one "x y" line per vertex.
void write_polygon(std::ostream& os, const Polygon2& p);
Polygon2 read_polygon(std::istream& is);

}  // namespace polybench
