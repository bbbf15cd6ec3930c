#pragma once

#include <cstddef>

#include "polybench/geom.hpp"
#include "polybench/mesh.hpp"

namespace polybench {

struct CanvasOptions {
  double polygon_span = 0.4;     ///< bounding-box side of the embedded polygon
  double min_angle_deg = 20.0;   ///< quality target away from the polygon
  double max_area = 0.01;
  std::size_t max_steiner = 100000;
};

/// Maps p into the canvas: bounding box centered at (0.5, 0.5), longest
/// side equal to `span`.
Polygon2 place_on_canvas(const Polygon2& p, double span = 0.4);

/// Unit-square mesh with p (rescaled) as its single central cell and a
/// constrained Delaunay triangulation of the rest. Edges of p are never
/// split, so two kinds of triangle are not held to the angle target: those
/// sharing a vertex with p, and those whose circumcenter encroaches an edge
/// of p. Every triangle obeys the area bound.
PolygonMesh build_canvas_mesh(const Polygon2& p, const CanvasOptions& opts = {});

/// The same refinement applied to the empty square: a triangle-only mesh.
PolygonMesh build_reference_mesh(const CanvasOptions& opts = {});

/// Single-cell mesh holding p as is (for `--no-canvas`).
PolygonMesh bare_polygon_mesh(const Polygon2& p);

/// Smallest angle (radians) over triangles held to the angle target, using
/// the exemption rule of build_canvas_mesh. Returns pi when there are none.
double min_unexempt_angle(const PolygonMesh& mesh);

}  // namespace polybench
