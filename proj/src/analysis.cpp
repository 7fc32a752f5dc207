#include "penta/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "node_geometry.hpp"
#include "penta/errors.hpp"

namespace penta {

namespace {

constexpr double kRelTol = 1e-6;
constexpr double kAngTol = 1e-7;

// Uniform grid over tile bounding boxes.
class TileIndex {
 public:
  explicit TileIndex(const std::vector<detail::Instance>& tiles) : tiles_(tiles) {
    for (const auto& t : tiles) cell_ = std::max(cell_, std::max(t.box.hi.x - t.box.lo.x, t.box.hi.y - t.box.lo.y));
    for (std::size_t i = 0; i < tiles.size(); ++i) {
      const auto [x0, y0] = key(tiles[i].box.lo);
      const auto [x1, y1] = key(tiles[i].box.hi);
      for (long x = x0; x <= x1; ++x) {
        for (long y = y0; y <= y1; ++y) grid_[pack(x, y)].push_back(static_cast<int>(i));
      }
    }
  }

  std::vector<int> query(const Box& b, double pad) const {
    std::vector<int> out;
    const auto [x0, y0] = key(b.lo - Vec2{pad, pad});
    const auto [x1, y1] = key(b.hi + Vec2{pad, pad});
    for (long x = x0; x <= x1; ++x) {
      for (long y = y0; y <= y1; ++y) {
        auto it = grid_.find(pack(x, y));
        if (it == grid_.end()) continue;
        for (int i : it->second) {
          if (tiles_[i].box.overlaps(b, pad)) out.push_back(i);
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<const detail::Instance*> near_point(Vec2 p, double pad) const {
    Box b;
    b.expand(p);
    std::vector<const detail::Instance*> out;
    for (int i : query(b, pad)) out.push_back(&tiles_[i]);
    return out;
  }

 private:
  const std::vector<detail::Instance>& tiles_;
  double cell_ = 1.0;
  std::unordered_map<long long, std::vector<int>> grid_;

  std::pair<long, long> key(Vec2 p) const {
    return {static_cast<long>(std::floor(p.x / cell_)), static_cast<long>(std::floor(p.y / cell_))};
  }
  static long long pack(long x, long y) { return (static_cast<long long>(x) << 32) ^ (y & 0xffffffffLL); }
};

struct PatchGeometry {
  const Patch& patch;
  std::vector<detail::Instance> tiles;
  double tol = 1e-6;
  TileIndex index;

  static std::vector<detail::Instance> build(const Patch& patch) {
    std::vector<detail::Instance> out;
    for (const auto& t : patch.tiles) {
      detail::Instance inst;
      inst.poly = ccw(t.vertices, t.iso.reflected);
      for (int k = 0; k < 5; ++k) inst.label[k] = t.iso.reflected ? 4 - k : k;
      inst.box = bounding_box(inst.poly);
      inst.reflected = t.iso.reflected;
      out.push_back(std::move(inst));
    }
    return out;
  }

  explicit PatchGeometry(const Patch& p)
      : patch(p), tiles(build(p)), tol(kRelTol * p.base.mean_edge()), index(tiles) {}

  detail::NodeState node(Vec2 P) const {
    return detail::node_state(P, index.near_point(P, tol), patch.base, tol, kAngTol);
  }

  // Distinct tile vertices.
  std::vector<Vec2> nodes() const {
    std::vector<Vec2> pts;
    std::unordered_map<long long, std::vector<int>> grid;
    const double q = tol * 10.0;
    auto cell = [&](double v) { return static_cast<long>(std::floor(v / q)); };
    for (const auto& t : tiles) {
      for (Vec2 v : t.poly) {
        const long cx = cell(v.x);
        const long cy = cell(v.y);
        bool dup = false;
        for (long dx = -1; dx <= 1 && !dup; ++dx) {
          for (long dy = -1; dy <= 1 && !dup; ++dy) {
            auto it = grid.find((static_cast<long long>(cx + dx) << 32) ^ ((cy + dy) & 0xffffffffLL));
            if (it == grid.end()) continue;
            for (int i : it->second) dup = dup || dist(pts[i], v) < tol;
          }
        }
        if (dup) continue;
        grid[(static_cast<long long>(cx) << 32) ^ (cy & 0xffffffffLL)].push_back(static_cast<int>(pts.size()));
        pts.push_back(v);
      }
    }
    return pts;
  }

  bool touching(int a, int b) const {
    const Polygon& p = tiles[a].poly;
    const Polygon& q = tiles[b].poly;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        if (point_segment_distance(p[i], q[j], q[(j + 1) % 5]) < tol) return true;
        if (point_segment_distance(q[j], p[i], p[(i + 1) % 5]) < tol) return true;
      }
    }
    return false;
  }

  std::vector<int> neighbours(int t) const {
    std::vector<int> out;
    for (int j : index.query(tiles[t].box, tol)) {
      if (j != t && touching(t, j)) out.push_back(j);
    }
    return out;
  }

  // Every point where the boundary of tile t meets another tile is a complete node.
  bool surrounded(int t, const std::vector<int>& nbrs) const {
    const Polygon& p = tiles[t].poly;
    std::vector<Vec2> pts(p.begin(), p.end());
    for (int j : nbrs) {
      for (Vec2 v : tiles[j].poly) {
        for (int k = 0; k < 5; ++k) {
          if (point_segment_distance(v, p[k], p[(k + 1) % 5]) < tol) {
            pts.push_back(v);
            break;
          }
        }
      }
    }
    for (Vec2 v : pts) {
      const auto st = node(v);
      if (!st.valid || !st.complete()) return false;
    }
    return true;
  }
};

std::vector<Isometry> base_symmetries(const PentagonShape& p, double tol) {
  const Polygon b = render_vertices(p);
  std::vector<Isometry> out;
  for (int refl = 0; refl < 2; ++refl) {
    for (int k = 0; k < 5; ++k) {
      auto target = [&](int i) { return b[refl ? ((k - i) % 5 + 5) % 5 : (i + k) % 5]; };
      Isometry s;
      s.reflected = refl == 1;
      const Vec2 m0 = s.reflected ? Vec2{b[0].x, -b[0].y} : b[0];
      const Vec2 m1 = s.reflected ? Vec2{b[1].x, -b[1].y} : b[1];
      s.rotation = wrap_angle(heading(target(1) - target(0)) - heading(m1 - m0));
      s.translation = target(0) - Isometry{s.reflected, s.rotation, {}}.apply(b[0]);
      bool ok = true;
      for (int i = 0; i < 5; ++i) ok = ok && dist(s.apply(b[i]), target(i)) < tol;
      if (ok) out.push_back(s);
    }
  }
  return out;
}

bool same_polygon(const Polygon& a, const Polygon& b, double tol) {
  if (a.size() != b.size()) return false;
  for (Vec2 v : a) {
    bool hit = false;
    for (Vec2 w : b) hit = hit || dist(v, w) < tol;
    if (!hit) return false;
  }
  return true;
}

bool same_signature(const std::vector<Polygon>& a, const std::vector<Polygon>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& pa : a) {
    const Vec2 ca = centroid(pa);
    bool hit = false;
    for (std::size_t j = 0; j < b.size() && !hit; ++j) {
      if (used[j] || dist(ca, centroid(b[j])) > 10 * tol) continue;
      if (same_polygon(pa, b[j], tol)) {
        used[j] = true;
        hit = true;
      }
    }
    if (!hit) return false;
  }
  return true;
}

Corona corona_of(const PatchGeometry& g, int t, const std::vector<int>& nbrs) {
  Corona c;
  c.center = t;
  c.members.push_back(t);
  c.members.insert(c.members.end(), nbrs.begin(), nbrs.end());
  const Isometry inv = g.patch.tiles[t].iso.inverse();
  for (int m : c.members) {
    Polygon poly;
    for (Vec2 v : g.tiles[m].poly) poly.push_back(inv.apply(v));
    c.signature.push_back(std::move(poly));
  }
  return c;
}

}  // namespace

Corona first_corona(const Patch& patch, int tile) {
  if (tile < 0 || tile >= static_cast<int>(patch.tiles.size()))
    throw Error(ErrorCode::IncompleteCorona, "tile index out of range");
  PatchGeometry g(patch);
  const auto nbrs = g.neighbours(tile);
  if (!g.surrounded(tile, nbrs))
    throw Error(ErrorCode::IncompleteCorona, "tile " + std::to_string(tile) + " reaches the patch boundary");
  return corona_of(g, tile, nbrs);
}

CoronaClasses corona_classes(const Patch& patch) {
  PatchGeometry g(patch);
  const auto syms = base_symmetries(patch.base, g.tol);
  CoronaClasses out;
  out.tile_class.assign(patch.tiles.size(), -1);
  std::vector<std::vector<Polygon>> reps;
  for (int t = 0; t < static_cast<int>(patch.tiles.size()); ++t) {
    const auto nbrs = g.neighbours(t);
    if (!g.surrounded(t, nbrs)) continue;
    const Corona c = corona_of(g, t, nbrs);
    int found = -1;
    for (std::size_t r = 0; r < reps.size() && found < 0; ++r) {
      for (const auto& s : syms) {
        std::vector<Polygon> moved;
        for (const auto& poly : c.signature) {
          Polygon q;
          for (Vec2 v : poly) q.push_back(s.apply(v));
          moved.push_back(std::move(q));
        }
        if (same_signature(moved, reps[r], g.tol)) {
          found = static_cast<int>(r);
          break;
        }
      }
    }
    if (found < 0) {
      found = static_cast<int>(reps.size());
      reps.push_back(c.signature);
      out.representatives.push_back(t);
    }
    out.tile_class[t] = found;
  }
  if (reps.empty()) throw Error(ErrorCode::IncompleteCorona, "no tile has a complete corona");
  out.count = static_cast<int>(reps.size());
  return out;
}

std::vector<NodeComposition> vertex_spectrum(const Patch& patch) {
  PatchGeometry g(patch);
  std::map<std::pair<bool, std::string>, NodeComposition> groups;
  for (Vec2 P : g.nodes()) {
    const auto st = g.node(P);
    if (!st.valid)
      throw Error(ErrorCode::InvalidNode, "overlapping tiles at (" + std::to_string(P.x) + ", " +
                                              std::to_string(P.y) + ")");
    if (!st.complete()) continue;
    const bool flat = st.straight > 0;
    const double sum = composition_sum_deg(patch.base, st.corners);
    const double want = flat ? 180.0 : 360.0;
    if (st.straight > 1 || std::abs(sum - want) > 1e-6)
      throw Error(ErrorCode::InvalidNode, "node " + st.corners + " sums to " + std::to_string(sum));
    auto& entry = groups[{flat, st.corners}];
    entry.composition = st.corners;
    entry.flat = flat;
    entry.sum_deg = want;
    ++entry.count;
  }
  std::vector<NodeComposition> out;
  for (auto& [key, v] : groups) out.push_back(v);
  return out;
}

bool is_edge_to_edge(const Patch& patch) {
  PatchGeometry g(patch);
  for (Vec2 P : g.nodes()) {
    const auto st = g.node(P);
    if (st.valid && st.complete() && st.straight > 0) return false;
  }
  return true;
}

bool uses_reflections(const Patch& patch) {
  std::size_t reflected = 0;
  for (const auto& t : patch.tiles) reflected += t.iso.reflected ? 1 : 0;
  return reflected > 0 && reflected < patch.tiles.size();
}

std::vector<Vec2> periodicity_check(const Patch& patch) {
  PatchGeometry g(patch);
  if (patch.tiles.size() < 2) return {};
  // Core region: the window, or the hull of tile centroids shrunk by a tile.
  std::vector<Vec2> centers;
  for (const auto& t : g.tiles) centers.push_back(centroid(t.poly));
  Polygon region = patch.window;
  if (region.size() < 3) {
    Box b;
    for (Vec2 c : centers) b.expand(c);
    const double d = diameter(g.tiles[0].poly);
    if (b.hi.x - b.lo.x <= 2 * d || b.hi.y - b.lo.y <= 2 * d) return {};
    region = {b.lo + Vec2{d, d}, Vec2{b.hi.x - d, b.lo.y + d}, b.hi - Vec2{d, d},
              Vec2{b.lo.x + d, b.hi.y - d}};
  }
  std::vector<int> core;
  for (int i = 0; i < static_cast<int>(centers.size()); ++i) {
    if (strictly_inside_convex(region, centers[i], 0.0)) core.push_back(i);
  }
  if (core.size() < 2) return {};
  const Vec2 mid = centroid(region);
  int ref = core[0];
  for (int i : core) {
    if (dist(centers[i], mid) < dist(centers[ref], mid)) ref = i;
  }
  auto tile_at = [&](const Polygon& poly) {
    Box b = bounding_box(poly);
    for (int j : g.index.query(b, g.tol)) {
      if (same_polygon(poly, g.tiles[j].poly, g.tol)) return j;
    }
    return -1;
  };
  std::vector<Vec2> valid;
  for (int cand : core) {
    if (cand == ref) continue;
    const auto& a = g.tiles[ref];
    const auto& b = g.tiles[cand];
    if (a.reflected != b.reflected) continue;
    const Vec2 v = b.poly[0] - a.poly[0];
    bool pure = true;
    for (int k = 0; k < 5; ++k) pure = pure && dist(a.poly[k] + v, b.poly[k]) < g.tol;
    if (!pure || a.label != b.label) continue;
    std::size_t checked = 0;
    bool ok = true;
    for (int i : core) {
      if (!strictly_inside_convex(region, centers[i] + v, 0.0)) continue;
      Polygon moved;
      for (Vec2 w : g.tiles[i].poly) moved.push_back(w + v);
      if (tile_at(moved) < 0) {
        ok = false;
        break;
      }
      ++checked;
    }
    if (ok && 2 * checked >= core.size()) valid.push_back(v);
  }
  std::sort(valid.begin(), valid.end(), [](Vec2 a, Vec2 b) { return norm(a) < norm(b); });
  std::vector<Vec2> out;
  for (Vec2 v : valid) {
    if (out.empty()) {
      out.push_back(v);
    } else if (std::abs(cross(out[0], v)) > 1e-6 * norm(out[0]) * norm(v)) {
      out.push_back(v);
      break;
    }
  }
  if (out.size() == 2 && cross(out[0], out[1]) < 0) out[1] = -out[1];
  return out;
}

AnalysisReport analyze(const Patch& patch) {
  AnalysisReport r;
  r.nodes = vertex_spectrum(patch);
  r.edge_to_edge = is_edge_to_edge(patch);
  r.uses_reflections = uses_reflections(patch);
  r.corona_classes = corona_classes(patch).count;
  r.periods = periodicity_check(patch);
  return r;
}

}  // namespace penta
