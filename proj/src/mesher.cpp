#include "polybench/mesher.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numbers>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polybench/error.hpp"

namespace polybench {

namespace {

enum class Seg : unsigned char { None, Boundary, Polygon };

// Edge i of a triangle is the one opposite v[i], running v[i+1] -> v[i+2].
struct Tri {
  std::array<int, 3> v{};
  std::array<int, 3> nb{-1, -1, -1};
  std::array<Seg, 3> seg{Seg::None, Seg::None, Seg::None};
  bool alive = true;
  bool hole = false;
};

int nxt(int i) { return (i + 1) % 3; }
int prv(int i) { return (i + 2) % 3; }

double incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  return (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
         (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
         (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
}

bool properly_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  return orient2d(a, b, c) * orient2d(a, b, d) < 0.0 && orient2d(c, d, a) * orient2d(c, d, b) < 0.0;
}

Point2 circumcenter(Point2 a, Point2 b, Point2 c) {
  const Point2 ab = b - a, ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double ab2 = dot(ab, ab), ac2 = dot(ac, ac);
  return {a.x + (ac.y * ab2 - ab.y * ac2) / d, a.y + (ab.x * ac2 - ac.x * ab2) / d};
}

double min_angle(Point2 a, Point2 b, Point2 c) {
  auto angle = [](Point2 p, Point2 q, Point2 r) {
    const Point2 u = q - p, w = r - p;
    return std::atan2(std::abs(cross(u, w)), dot(u, w));
  };
  return std::min({angle(a, b, c), angle(b, c, a), angle(c, a, b)});
}

bool encroaches(Point2 q, Point2 a, Point2 b) { return dot(a - q, b - q) < 0.0; }

// True when q lies inside the diametral circle of an edge of the loop. Such a
// point would force a split of a protected edge, so its triangle is left alone.
bool shielded(Point2 q, const std::vector<Point2>& pts, const std::vector<std::size_t>& loop) {
  for (std::size_t k = 0; k < loop.size(); ++k) {
    if (encroaches(q, pts[loop[k]], pts[loop[(k + 1) % loop.size()]])) return true;
  }
  return false;
}

class Canvas {
 public:
  explicit Canvas(const CanvasOptions& opts) : opts_(opts) {
    pts_ = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    on_polygon_.assign(4, false);
    tris_.resize(2);
    tris_[0].v = {0, 1, 2};
    tris_[1].v = {0, 2, 3};
    tris_[0].nb[1] = 1;
    tris_[1].nb[2] = 0;
    tris_[0].seg[0] = tris_[0].seg[2] = Seg::Boundary;
    tris_[1].seg[0] = tris_[1].seg[1] = Seg::Boundary;
    boundary_ = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  }

  void embed(const Polygon2& p) {
    const int first = static_cast<int>(pts_.size());
    for (const Point2& q : p.vertices()) {
      const int t = locate(q);
      if (t < 0) throw Error(ErrorKind::InvalidParameter, "polygon vertex outside the canvas");
      insert(q, t, std::nullopt);
      on_polygon_.back() = true;
    }
    const int n = static_cast<int>(p.size());
    for (int k = 0; k < n; ++k) recover(first + k, first + (k + 1) % n);
    make_delaunay();
    for (int k = 0; k < n; ++k) mark_hole(first + k, first + (k + 1) % n);
    polygon_.resize(n);
    for (int k = 0; k < n; ++k) polygon_[k] = static_cast<std::size_t>(first + k);
  }

  void refine() {
    const double min_angle_rad = opts_.min_angle_deg * std::numbers::pi / 180.0;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (tris_[t].alive && !tris_[t].hole) bad_.push_back(t);
    }
    for (std::size_t k = 0; k < boundary_.size(); ++k) check_segment(k);
    while (true) {
      if (steiner_ > opts_.max_steiner) {
        throw Error(ErrorKind::RefinementFailed, "Steiner point budget exhausted");
      }
      if (!encroached_.empty()) {
        const std::size_t k = encroached_.front();
        encroached_.pop_front();
        if (segment_encroached(k)) split_segment(k);
        continue;
      }
      if (bad_.empty()) break;
      const int t = bad_.front();
      bad_.pop_front();
      if (!is_bad(t, min_angle_rad)) continue;
      split_triangle(t);
    }
  }

  PolygonMesh to_mesh() const {
    std::vector<std::vector<std::size_t>> cells;
    std::vector<CellTag> tags;
    if (!polygon_.empty()) {
      cells.push_back(polygon_);
      tags.push_back(CellTag::CentralPolygon);
    }
    for (const Tri& t : tris_) {
      if (!t.alive || t.hole) continue;
      cells.push_back({static_cast<std::size_t>(t.v[0]), static_cast<std::size_t>(t.v[1]),
                       static_cast<std::size_t>(t.v[2])});
      tags.push_back(CellTag::CanvasTriangle);
    }
    return PolygonMesh(pts_, std::move(cells), std::move(tags));
  }

 private:
  struct SplitEdge {
    int tri;
    int edge;
  };

  Point2 at(int t, int k) const { return pts_[tris_[t].v[k]]; }

  int find_edge(int t, int a, int b) const {
    const Tri& T = tris_[t];
    for (int i = 0; i < 3; ++i) {
      const int p = T.v[nxt(i)], q = T.v[prv(i)];
      if ((p == a && q == b) || (p == b && q == a)) return i;
    }
    return -1;
  }

  void link(int t, int i, int o, Seg s) {
    tris_[t].nb[i] = o;
    tris_[t].seg[i] = s;
    if (o < 0) return;
    const int j = find_edge(o, tris_[t].v[nxt(i)], tris_[t].v[prv(i)]);
    tris_[o].nb[j] = t;
    tris_[o].seg[j] = s;
  }

  bool contains(int t, Point2 q) const {
    for (int i = 0; i < 3; ++i) {
      if (orient2d(at(t, nxt(i)), at(t, prv(i)), q) < 0.0) return false;
    }
    return true;
  }

  int locate(Point2 q) const {
    int t = last_;
    if (t < 0 || t >= static_cast<int>(tris_.size()) || !tris_[t].alive) t = 0;
    while (!tris_[t].alive) ++t;
    for (std::size_t step = 0; step < tris_.size(); ++step) {
      int move = -1;
      for (int i = 0; i < 3; ++i) {
        if (orient2d(at(t, nxt(i)), at(t, prv(i)), q) < 0.0) {
          move = tris_[t].nb[i];
          break;
        }
      }
      if (move < 0) {
        if (contains(t, q)) return t;
        break;
      }
      t = move;
    }
    for (int u = 0; u < static_cast<int>(tris_.size()); ++u) {
      if (tris_[u].alive && contains(u, q)) return u;
    }
    return -1;
  }

  // Bowyer-Watson insertion whose cavity never crosses a segment, except
  // the one being split.
  int insert(Point2 q, int seed, std::optional<SplitEdge> split) {
    std::vector<char> in(tris_.size(), 0);
    std::vector<int> seeds{seed};
    Seg split_kind = Seg::None;
    int split_a = -1, split_b = -1;
    if (split) {
      const Tri& T = tris_[split->tri];
      split_kind = T.seg[split->edge];
      split_a = T.v[nxt(split->edge)];
      split_b = T.v[prv(split->edge)];
      seeds = {split->tri};
      if (T.nb[split->edge] >= 0) seeds.push_back(T.nb[split->edge]);
    }
    for (int s : seeds) in[s] = 1;
    std::vector<int> cavity(seeds);
    for (std::size_t k = 0; k < cavity.size(); ++k) {
      const Tri& T = tris_[cavity[k]];
      for (int i = 0; i < 3; ++i) {
        const int o = T.nb[i];
        if (o < 0 || in[o] || T.seg[i] != Seg::None || tris_[o].hole) continue;
        if (incircle(at(o, 0), at(o, 1), at(o, 2), q) > 0.0) {
          in[o] = 1;
          cavity.push_back(o);
        }
      }
    }
    // Rounding can leave cavity edges that q does not see; shrink until the
    // cavity is star-shaped from q.
    for (bool changed = true; changed;) {
      changed = false;
      for (int c : cavity) {
        if (!in[c] || std::find(seeds.begin(), seeds.end(), c) != seeds.end()) continue;
        for (int i = 0; i < 3; ++i) {
          const int o = tris_[c].nb[i];
          if (o >= 0 && in[o]) continue;
          if (orient2d(at(c, nxt(i)), at(c, prv(i)), q) <= 0.0) {
            in[c] = 0;
            changed = true;
            break;
          }
        }
      }
      if (changed) {
        std::vector<char> reach(tris_.size(), 0);
        std::vector<int> kept(seeds);
        for (int s : seeds) reach[s] = 1;
        for (std::size_t k = 0; k < kept.size(); ++k) {
          for (int o : tris_[kept[k]].nb) {
            if (o >= 0 && in[o] && !reach[o]) {
              reach[o] = 1;
              kept.push_back(o);
            }
          }
        }
        for (int c : cavity) in[c] = reach[c];
        cavity = kept;
      }
    }

    struct Rim {
      int a, b, outer;
      Seg seg;
    };
    std::vector<Rim> rim;
    for (int c : cavity) {
      const Tri& T = tris_[c];
      for (int i = 0; i < 3; ++i) {
        const int o = T.nb[i];
        if (o >= 0 && in[o]) continue;
        if (o < 0 && split && find_edge(c, split_a, split_b) == i) continue;
        rim.push_back({T.v[nxt(i)], T.v[prv(i)], o, T.seg[i]});
      }
    }
    for (int c : cavity) tris_[c].alive = false;

    const int qv = static_cast<int>(pts_.size());
    pts_.push_back(q);
    on_polygon_.push_back(false);
    const int first = static_cast<int>(tris_.size());
    std::unordered_map<int, int> by_b;
    for (const Rim& r : rim) {
      const int id = static_cast<int>(tris_.size());
      tris_.push_back({});
      tris_[id].v = {qv, r.a, r.b};
      link(id, 0, r.outer, r.seg);
      if (!by_b.emplace(r.b, id).second) {
        throw Error(ErrorKind::RefinementFailed, "insertion cavity is not a disk");
      }
    }
    for (int id = first; id < static_cast<int>(tris_.size()); ++id) {
      const int a = tris_[id].v[1];
      const Seg s = (a == split_a || a == split_b) ? split_kind : Seg::None;
      const auto it = by_b.find(a);
      if (it == by_b.end()) {
        if (s == Seg::None) throw Error(ErrorKind::RefinementFailed, "insertion cavity is not closed");
        tris_[id].seg[2] = s;
        continue;
      }
      tris_[id].nb[2] = it->second;
      tris_[id].seg[2] = s;
      tris_[it->second].nb[1] = id;
      tris_[it->second].seg[1] = s;
    }
    for (int id = first; id < static_cast<int>(tris_.size()); ++id) {
      const int b = tris_[id].v[2];
      if (tris_[id].nb[1] < 0 && (b == split_a || b == split_b)) tris_[id].seg[1] = split_kind;
    }
    last_ = first;
    for (int id = first; id < static_cast<int>(tris_.size()); ++id) bad_.push_back(id);
    return qv;
  }

  void flip(int t, int i) {
    const int u = tris_[t].nb[i];
    const int x = tris_[t].v[i], a = tris_[t].v[nxt(i)], b = tris_[t].v[prv(i)];
    const int j = find_edge(u, a, b);
    const int y = tris_[u].v[j];
    const int n_xa = tris_[t].nb[prv(i)], n_bx = tris_[t].nb[nxt(i)];
    const Seg s_xa = tris_[t].seg[prv(i)], s_bx = tris_[t].seg[nxt(i)];
    const int n_yb = tris_[u].nb[prv(j)], n_ay = tris_[u].nb[nxt(j)];
    const Seg s_yb = tris_[u].seg[prv(j)], s_ay = tris_[u].seg[nxt(j)];
    tris_[t].v = {x, a, y};
    tris_[u].v = {y, b, x};
    link(t, 0, n_ay, s_ay);
    link(t, 2, n_xa, s_xa);
    link(u, 0, n_bx, s_bx);
    link(u, 2, n_yb, s_yb);
    tris_[t].nb[1] = u;
    tris_[t].seg[1] = Seg::None;
    tris_[u].nb[1] = t;
    tris_[u].seg[1] = Seg::None;
  }

  // Opposite vertices of the two triangles on edge i of t; nullopt on the rim.
  std::optional<std::pair<int, int>> quad(int t, int i) const {
    const int u = tris_[t].nb[i];
    if (u < 0) return std::nullopt;
    const int j = find_edge(u, tris_[t].v[nxt(i)], tris_[t].v[prv(i)]);
    return std::make_pair(tris_[t].v[i], tris_[u].v[j]);
  }

  int triangle_with_edge(int a, int b) const {
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (tris_[t].alive && find_edge(t, a, b) >= 0) return t;
    }
    return -1;
  }

  // Edge recovery by flipping the edges that cross a-b.
  void recover(int a, int b) {
    const Point2 pa = pts_[a], pb = pts_[b];
    std::deque<std::pair<int, int>> crossing;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (!tris_[t].alive) continue;
      for (int i = 0; i < 3; ++i) {
        const int u = tris_[t].v[nxt(i)], w = tris_[t].v[prv(i)];
        if (u < w && properly_cross(pa, pb, pts_[u], pts_[w])) crossing.emplace_back(u, w);
      }
    }
    std::size_t stalls = 0;
    while (!crossing.empty()) {
      if (stalls > 10 * (crossing.size() + 10)) {
        throw Error(ErrorKind::RefinementFailed, "cannot recover a polygon edge");
      }
      const auto [u, w] = crossing.front();
      crossing.pop_front();
      const int t = triangle_with_edge(u, w);
      const int i = find_edge(t, u, w);
      const auto q = quad(t, i);
      const Point2 px = pts_[q->first], py = pts_[q->second];
      if (!properly_cross(px, py, pts_[u], pts_[w])) {
        crossing.emplace_back(u, w);
        ++stalls;
        continue;
      }
      stalls = 0;
      flip(t, i);
      if (properly_cross(pa, pb, px, py)) crossing.emplace_back(q->first, q->second);
    }
    const int t = triangle_with_edge(a, b);
    if (t < 0) throw Error(ErrorKind::RefinementFailed, "polygon edge missing after recovery");
    link(t, find_edge(t, a, b), tris_[t].nb[find_edge(t, a, b)], Seg::Polygon);
  }

  void make_delaunay() {
    for (bool flipped = true; flipped;) {
      flipped = false;
      for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
        if (!tris_[t].alive) continue;
        for (int i = 0; i < 3; ++i) {
          if (tris_[t].seg[i] != Seg::None) continue;
          const auto q = quad(t, i);
          if (!q) continue;
          const Point2 py = pts_[q->second];
          if (incircle(at(t, 0), at(t, 1), at(t, 2), py) <= 1e-14) continue;
          if (!properly_cross(pts_[q->first], py, at(t, nxt(i)), at(t, prv(i)))) continue;
          flip(t, i);
          flipped = true;
          break;
        }
      }
    }
  }

  // Flood the polygon interior from the triangle left of the directed edge a->b.
  void mark_hole(int a, int b) {
    int start = -1;
    for (int t = 0; t < static_cast<int>(tris_.size()) && start < 0; ++t) {
      if (!tris_[t].alive || tris_[t].hole) continue;
      for (int i = 0; i < 3; ++i) {
        if (tris_[t].v[nxt(i)] == a && tris_[t].v[prv(i)] == b) start = t;
      }
    }
    if (start < 0) return;
    std::vector<int> stack{start};
    tris_[start].hole = true;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int i = 0; i < 3; ++i) {
        const int o = tris_[t].nb[i];
        if (o < 0 || tris_[t].seg[i] != Seg::None || tris_[o].hole) continue;
        tris_[o].hole = true;
        stack.push_back(o);
      }
    }
  }

  bool exempt(int t) const {
    const Tri& T = tris_[t];
    if (on_polygon_[T.v[0]] || on_polygon_[T.v[1]] || on_polygon_[T.v[2]]) return true;
    return shielded(circumcenter(at(t, 0), at(t, 1), at(t, 2)), pts_, polygon_);
  }

  bool is_bad(int t, double min_angle_rad) const {
    if (!tris_[t].alive || tris_[t].hole) return false;
    const Point2 a = at(t, 0), b = at(t, 1), c = at(t, 2);
    if (0.5 * orient2d(a, b, c) > opts_.max_area) return true;
    return !exempt(t) && min_angle(a, b, c) < min_angle_rad;
  }

  bool segment_encroached(std::size_t k) const {
    const auto [a, b] = boundary_[k];
    const int t = triangle_with_edge(a, b);
    if (t < 0) return false;
    const int i = find_edge(t, a, b);
    return encroaches(at(t, i), pts_[a], pts_[b]);
  }

  void check_segment(std::size_t k) {
    if (segment_encroached(k)) encroached_.push_back(k);
  }

  void split_segment(std::size_t k) {
    const auto [a, b] = boundary_[k];
    const int t = triangle_with_edge(a, b);
    const int i = find_edge(t, a, b);
    const Point2 m = 0.5 * (pts_[a] + pts_[b]);
    const int v = insert(m, t, SplitEdge{t, i});
    ++steiner_;
    boundary_[k] = {a, v};
    boundary_.emplace_back(v, b);
    check_segment(k);
    check_segment(boundary_.size() - 1);
    for (std::size_t s = 0; s < boundary_.size(); ++s) {
      if (s != k && s + 1 != boundary_.size()) check_point(v, s);
    }
  }

  void check_point(int v, std::size_t k) {
    const auto [a, b] = boundary_[k];
    if (v != a && v != b && encroaches(pts_[v], pts_[a], pts_[b])) encroached_.push_back(k);
  }

  std::optional<std::size_t> encroached_by(Point2 q) const {
    for (std::size_t k = 0; k < boundary_.size(); ++k) {
      if (encroaches(q, pts_[boundary_[k].first], pts_[boundary_[k].second])) return k;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> boundary_index(int a, int b) const {
    for (std::size_t k = 0; k < boundary_.size(); ++k) {
      const auto [p, q] = boundary_[k];
      if ((p == a && q == b) || (p == b && q == a)) return k;
    }
    return std::nullopt;
  }

  struct Walk {
    int tri = -1;            ///< triangle containing the target, if reached
    int hit_a = -1, hit_b = -1;
    Seg hit = Seg::None;
  };

  // Straight walk from the centroid of t toward q, stopping at segments.
  Walk walk(int t, Point2 q) const {
    const Point2 s = (1.0 / 3.0) * (at(t, 0) + at(t, 1) + at(t, 2));
    int cur = t, from = -1;
    Walk out;
    for (std::size_t step = 0; step <= tris_.size(); ++step) {
      if (contains(cur, q)) {
        out.tri = cur;
        return out;
      }
      int exit = -1;
      for (int i = 0; i < 3; ++i) {
        if (tris_[cur].nb[i] == from && from >= 0) continue;
        const Point2 a = at(cur, nxt(i)), b = at(cur, prv(i));
        if (orient2d(a, b, q) >= 0.0) continue;
        if (orient2d(s, q, a) * orient2d(s, q, b) <= 0.0) {
          exit = i;
          break;
        }
      }
      if (exit < 0) {
        out.hit = Seg::Polygon;
        return out;
      }
      if (tris_[cur].seg[exit] != Seg::None || tris_[cur].nb[exit] < 0) {
        out.hit = tris_[cur].seg[exit] == Seg::Boundary ? Seg::Boundary : Seg::Polygon;
        out.hit_a = tris_[cur].v[nxt(exit)];
        out.hit_b = tris_[cur].v[prv(exit)];
        return out;
      }
      from = cur;
      cur = tris_[cur].nb[exit];
    }
    out.hit = Seg::Polygon;
    return out;
  }

  void split_longest_edge(int t) {
    int best = 0;
    double len = -1.0;
    for (int i = 0; i < 3; ++i) {
      const double l = distance(at(t, nxt(i)), at(t, prv(i)));
      if (tris_[t].seg[i] != Seg::Polygon && l > len) {
        len = l;
        best = i;
      }
    }
    const int a = tris_[t].v[nxt(best)], b = tris_[t].v[prv(best)];
    if (tris_[t].seg[best] == Seg::Boundary) {
      split_segment(*boundary_index(a, b));
      return;
    }
    const int v = insert(0.5 * (pts_[a] + pts_[b]), t, SplitEdge{t, best});
    ++steiner_;
    for (std::size_t k = 0; k < boundary_.size(); ++k) check_point(v, k);
  }

  bool near_vertex(int t, Point2 q) const {
    for (int k = 0; k < 3; ++k) {
      if (distance(at(t, k), q) < 1e-12) return true;
    }
    return false;
  }

  void split_triangle(int t) {
    const Point2 c = circumcenter(at(t, 0), at(t, 1), at(t, 2));
    if (const auto k = encroached_by(c)) {
      split_segment(*k);
      return;
    }
    if (shielded(c, pts_, polygon_)) {
      split_longest_edge(t);
      return;
    }
    const Walk w = walk(t, c);
    if (w.hit == Seg::Boundary) {
      split_segment(*boundary_index(w.hit_a, w.hit_b));
      return;
    }
    if (w.tri < 0 || near_vertex(w.tri, c)) {
      split_longest_edge(t);
      return;
    }
    const int v = insert(c, w.tri, std::nullopt);
    ++steiner_;
    for (std::size_t k = 0; k < boundary_.size(); ++k) check_point(v, k);
  }

  CanvasOptions opts_;
  std::vector<Point2> pts_;
  std::vector<bool> on_polygon_;
  std::vector<Tri> tris_;
  std::vector<std::pair<int, int>> boundary_;
  std::vector<std::size_t> polygon_;
  std::deque<int> bad_;
  std::deque<std::size_t> encroached_;
  std::size_t steiner_ = 0;
  int last_ = 0;
};

}  // namespace

Polygon2 place_on_canvas(const Polygon2& p, double span) {
  double x0 = p[0].x, x1 = p[0].x, y0 = p[0].y, y1 = p[0].y;
  for (const Point2& q : p.vertices()) {
    x0 = std::min(x0, q.x);
    x1 = std::max(x1, q.x);
    y0 = std::min(y0, q.y);
    y1 = std::max(y1, q.y);
  }
  const double scale = span / std::max(x1 - x0, y1 - y0);
  const Point2 mid{0.5 * (x0 + x1), 0.5 * (y0 + y1)};
  std::vector<Point2> v;
  v.reserve(p.size());
  for (const Point2& q : p.vertices()) v.push_back(Point2{0.5, 0.5} + scale * (q - mid));
  return Polygon2(std::move(v));
}

PolygonMesh build_canvas_mesh(const Polygon2& p, const CanvasOptions& opts) {
  Canvas canvas(opts);
  canvas.embed(place_on_canvas(p, opts.polygon_span));
  canvas.refine();
  return canvas.to_mesh();
}

PolygonMesh build_reference_mesh(const CanvasOptions& opts) {
  Canvas canvas(opts);
  canvas.refine();
  return canvas.to_mesh();
}

PolygonMesh bare_polygon_mesh(const Polygon2& p) {
  std::vector<std::size_t> loop(p.size());
  for (std::size_t i = 0; i < loop.size(); ++i) loop[i] = i;
  return PolygonMesh(std::vector<Point2>(p.vertices().begin(), p.vertices().end()), {loop},
                     {CellTag::CentralPolygon});
}

double min_unexempt_angle(const PolygonMesh& mesh) {
  std::vector<bool> on_polygon(mesh.vertex_count(), false);
  std::vector<std::vector<std::size_t>> loops;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    if (mesh.cell_tag(c) != CellTag::CentralPolygon) continue;
    for (std::size_t v : mesh.cell(c)) on_polygon[v] = true;
    loops.push_back(mesh.cell(c));
  }
  double worst = std::numbers::pi;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cell(c);
    if (mesh.cell_tag(c) != CellTag::CanvasTriangle || cell.size() != 3) continue;
    if (on_polygon[cell[0]] || on_polygon[cell[1]] || on_polygon[cell[2]]) continue;
    const Point2 a = mesh.vertex(cell[0]), b = mesh.vertex(cell[1]), c2 = mesh.vertex(cell[2]);
    const Point2 center = circumcenter(a, b, c2);
    if (std::any_of(loops.begin(), loops.end(),
                    [&](const auto& loop) { return shielded(center, mesh.vertices(), loop); })) {
      continue;
    }
    worst = std::min(worst, min_angle(a, b, c2));
  }
  return worst;
}

}  // namespace polybench
