#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "polybench/geom.hpp"

namespace polybench {

enum class CellTag : char { CentralPolygon = 'P', CanvasTriangle = 'T' };

/// Polygonal tessellation of the unit square. Cells are CCW vertex loops.
class PolygonMesh {
 public:
  PolygonMesh() = default;
  PolygonMesh(std::vector<Point2> vertices, std::vector<std::vector<std::size_t>> cells,
              std::vector<CellTag> tags);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t cell_count() const { return cells_.size(); }

  const std::vector<Point2>& vertices() const { return vertices_; }
  const Point2& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<std::size_t>& cell(std::size_t c) const { return cells_[c]; }
  const std::vector<std::vector<std::size_t>>& cells() const { return cells_; }
  CellTag cell_tag(std::size_t c) const { return tags_[c]; }
  const std::vector<CellTag>& tags() const { return tags_; }
  const std::vector<bool>& boundary_vertex_flags() const { return boundary_; }
  bool is_boundary_vertex(std::size_t v) const { return boundary_[v]; }

  Polygon2 cell_polygon(std::size_t c) const;
  std::vector<Point2> cell_points(std::size_t c) const;

  friend bool operator==(const PolygonMesh&, const PolygonMesh&) = default;

 private:
  std::vector<Point2> vertices_;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<CellTag> tags_;
  std::vector<bool> boundary_;
};

/// Maximum cell diameter.
double mesh_size(const PolygonMesh& mesh);

/// Reflect across x = 1, reflect the strip across y = 1, scale by 1/2.
PolygonMesh mirror(const PolygonMesh& mesh);

struct MeshHierarchy {
  std::vector<PolygonMesh> levels;
  std::vector<double> level_sizes;
};

MeshHierarchy build_hierarchy(const PolygonMesh& mesh, int levels);

/// Mesh consistency report used by tests and the generate command.
struct MeshCheck {
  double total_area = 0.0;
  bool indices_in_range = true;
  bool cells_valid = true;      ///< every cell simple and CCW
  bool conforming = true;       ///< every undirected edge used once (boundary) or twice
  bool boundary_flags_ok = true;
};

MeshCheck check_mesh(const PolygonMesh& mesh);

/// OFF with z = 0 and 0-based cell loops; tags go to a sidecar file.
void write_off(std::ostream& os, const PolygonMesh& mesh);
void write_tags(std::ostream& os, const PolygonMesh& mesh);
PolygonMesh read_off(std::istream& off, std::istream* tags);
void save_mesh(const std::filesystem::path& off_path, const PolygonMesh& mesh);
PolygonMesh load_mesh(const std::filesystem::path& off_path);

}  // namespace polybench
