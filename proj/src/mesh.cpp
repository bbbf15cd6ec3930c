#include "polybench/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "polybench/error.hpp"

namespace polybench {

namespace {

bool on_unit_square_boundary(Point2 p) {
  return p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
}

}  // namespace

PolygonMesh::PolygonMesh(std::vector<Point2> vertices, std::vector<std::vector<std::size_t>> cells,
                         std::vector<CellTag> tags)
    : vertices_(std::move(vertices)), cells_(std::move(cells)), tags_(std::move(tags)) {
  if (tags_.size() != cells_.size()) {
    throw Error(ErrorKind::InvalidParameter, "cell tag count does not match cell count");
  }
  boundary_.resize(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    boundary_[v] = on_unit_square_boundary(vertices_[v]);
  }
}

std::vector<Point2> PolygonMesh::cell_points(std::size_t c) const {
  std::vector<Point2> pts;
  pts.reserve(cells_[c].size());
  for (std::size_t v : cells_[c]) pts.push_back(vertices_[v]);
  return pts;
}

Polygon2 PolygonMesh::cell_polygon(std::size_t c) const { return Polygon2(cell_points(c)); }

double mesh_size(const PolygonMesh& mesh) {
  double h = 0.0;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    h = std::max(h, diameter(mesh.cell_points(c)));
  }
  return h;
}

PolygonMesh mirror(const PolygonMesh& mesh) {
  std::vector<Point2> vertices;
  std::vector<std::vector<std::size_t>> cells;
  std::vector<CellTag> tags;
  std::map<std::pair<long long, long long>, std::size_t> index;
  cells.reserve(4 * mesh.cell_count());
  tags.reserve(4 * mesh.cell_count());

  for (int copy = 0; copy < 4; ++copy) {
    const bool flip_x = copy & 1;
    const bool flip_y = copy & 2;
    std::vector<std::size_t> remap(mesh.vertex_count());
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
      const Point2 p = mesh.vertex(v);
      const Point2 q{flip_x ? 1.0 - 0.5 * p.x : 0.5 * p.x, flip_y ? 1.0 - 0.5 * p.y : 0.5 * p.y};
      // Seam vertices coincide up to rounding; 1e-12 buckets merge them.
      const std::pair<long long, long long> key{std::llround(q.x * 1e12), std::llround(q.y * 1e12)};
      auto [it, inserted] = index.try_emplace(key, vertices.size());
      if (inserted) vertices.push_back(q);
      remap[v] = it->second;
    }
    const bool reversed = flip_x != flip_y;
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
      std::vector<std::size_t> loop;
      loop.reserve(mesh.cell(c).size());
      for (std::size_t v : mesh.cell(c)) loop.push_back(remap[v]);
      if (reversed) std::reverse(loop.begin(), loop.end());
      cells.push_back(std::move(loop));
      tags.push_back(mesh.cell_tag(c));
    }
  }
  return PolygonMesh(std::move(vertices), std::move(cells), std::move(tags));
}

MeshHierarchy build_hierarchy(const PolygonMesh& mesh, int levels) {
  if (levels < 1) throw Error(ErrorKind::InvalidParameter, "hierarchy needs at least one level");
  MeshHierarchy h;
  h.levels.push_back(mesh);
  h.level_sizes.push_back(mesh_size(mesh));
  for (int l = 1; l < levels; ++l) {
    h.levels.push_back(mirror(h.levels.back()));
    h.level_sizes.push_back(mesh_size(h.levels.back()));
  }
  return h;
}

MeshCheck check_mesh(const PolygonMesh& mesh) {
  MeshCheck out;
  std::map<std::pair<std::size_t, std::size_t>, int> edge_use;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cell(c);
    if (std::any_of(cell.begin(), cell.end(), [&](std::size_t v) { return v >= mesh.vertex_count(); })) {
      out.indices_in_range = false;
      continue;
    }
    const auto pts = mesh.cell_points(c);
    const double area = loop_signed_area(pts);
    out.total_area += area;
    if (area <= 0.0 || !is_simple(pts)) out.cells_valid = false;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const std::size_t a = cell[i];
      const std::size_t b = cell[(i + 1) % cell.size()];
      ++edge_use[{std::min(a, b), std::max(a, b)}];
    }
  }
  for (const auto& [edge, count] : edge_use) {
    if (count == 2) continue;
    if (count > 2) {
      out.conforming = false;
      continue;
    }
    const Point2 a = mesh.vertex(edge.first);
    const Point2 b = mesh.vertex(edge.second);
    const bool on_side = (a.x == 0.0 && b.x == 0.0) || (a.x == 1.0 && b.x == 1.0) ||
                         (a.y == 0.0 && b.y == 0.0) || (a.y == 1.0 && b.y == 1.0);
    if (!on_side) out.conforming = false;
  }
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.is_boundary_vertex(v) != on_unit_square_boundary(mesh.vertex(v))) {
      out.boundary_flags_ok = false;
    }
  }
  return out;
}

void write_off(std::ostream& os, const PolygonMesh& mesh) {
  os << "OFF\n" << mesh.vertex_count() << ' ' << mesh.cell_count() << " 0\n";
  char buf[80];
  for (const Point2& v : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g 0.0\n", v.x, v.y);
    os << buf;
  }
  for (const auto& cell : mesh.cells()) {
    os << cell.size();
    for (std::size_t v : cell) os << ' ' << v;
    os << '\n';
  }
}

void write_tags(std::ostream& os, const PolygonMesh& mesh) {
  for (CellTag t : mesh.tags()) os << static_cast<char>(t) << '\n';
}

PolygonMesh read_off(std::istream& off, std::istream* tags) {
  std::string header;
  off >> header;
  if (header != "OFF") throw Error(ErrorKind::Io, "missing OFF header");
  std::size_t nv = 0, nf = 0, ne = 0;
  if (!(off >> nv >> nf >> ne)) throw Error(ErrorKind::Io, "bad OFF counts line");
  std::vector<Point2> vertices(nv);
  for (auto& v : vertices) {
    double z = 0.0;
    if (!(off >> v.x >> v.y >> z)) throw Error(ErrorKind::Io, "truncated OFF vertex list");
  }
  std::vector<std::vector<std::size_t>> cells(nf);
  for (auto& cell : cells) {
    std::size_t k = 0;
    if (!(off >> k)) throw Error(ErrorKind::Io, "truncated OFF face list");
    cell.resize(k);
    for (auto& v : cell) {
      if (!(off >> v)) throw Error(ErrorKind::Io, "truncated OFF face");
    }
  }
  std::vector<CellTag> cell_tags(nf, CellTag::CanvasTriangle);
  if (tags) {
    for (auto& t : cell_tags) {
      char ch = 0;
      if (!(*tags >> ch)) throw Error(ErrorKind::Io, "tag file shorter than face list");
      if (ch != 'P' && ch != 'T') throw Error(ErrorKind::Io, std::string("unknown cell tag ") + ch);
      t = static_cast<CellTag>(ch);
    }
  }
  return PolygonMesh(std::move(vertices), std::move(cells), std::move(cell_tags));
}

void save_mesh(const std::filesystem::path& off_path, const PolygonMesh& mesh) {
  std::ofstream off(off_path);
  std::ofstream tags(off_path.string() + ".tags");
  if (!off || !tags) throw Error(ErrorKind::Io, "cannot write " + off_path.string());
  write_off(off, mesh);
  write_tags(tags, mesh);
}

PolygonMesh load_mesh(const std::filesystem::path& off_path) {
  std::ifstream off(off_path);
  if (!off) throw Error(ErrorKind::Io, "cannot read " + off_path.string());
  std::ifstream tags(off_path.string() + ".tags");
  return read_off(off, tags ? &tags : nullptr);
}

}  // namespace polybench
