// Belt tilings: bands of a periodic tiling that repeat along one lattice
// vector, placed side by side either as in the periodic tiling or mirrored.

#include <algorithm>
#include <cmath>
#include <optional>

#include "node_geometry.hpp"
#include "penta/catalog.hpp"
#include "penta/errors.hpp"
#include "penta/tiling.hpp"

namespace penta {

namespace {

constexpr double kLenTol = 1e-7;
constexpr double kAngTol = 1e-7;

using Tiles = std::vector<detail::Instance>;

struct Belt {
  PentagonShape base;
  std::vector<Isometry> band;  // one period of the band
  Vec2 axis;                   // band period
  Vec2 normal;                 // unit vector pointing to the right of the band
  Isometry right_plain, left_plain;    // neighbours in the periodic tiling
  Isometry right_mirror, left_mirror;  // orientation-reversing neighbours
};

Vec2 tile_center(const PentagonShape& p, const Isometry& iso) { return centroid(place(p, iso)); }

std::vector<Isometry> strip(const std::vector<Isometry>& band, Vec2 axis, const Isometry& h, int lo,
                            int hi) {
  std::vector<Isometry> out;
  for (int j = lo; j <= hi; ++j) {
    for (const auto& u : band)
      out.push_back(h.compose(Isometry::translate(axis * static_cast<double>(j))).compose(u));
  }
  return out;
}

Tiles instances(const PentagonShape& p, const std::vector<Isometry>& isos) {
  Tiles out;
  for (const auto& iso : isos) out.push_back(detail::make_instance(p, iso));
  return out;
}

bool same_tile(const detail::Instance& x, const detail::Instance& y, double tol) {
  for (Vec2 v : x.poly) {
    bool any = false;
    for (Vec2 w : y.poly) any = any || dist(v, w) < tol;
    if (!any) return false;
  }
  return true;
}

bool contains_tile(const Tiles& set, const detail::Instance& t, double tol) {
  for (const auto& s : set) {
    if (s.box.overlaps(t.box, tol) && same_tile(s, t, tol)) return true;
  }
  return false;
}

struct Band {
  const PentagonShape& p;
  std::vector<Isometry> tiles;
  Vec2 axis;
  Vec2 normal;
  double tol;

  // Band `h` placed on side `side` (+1 right, -1 left) of this band: tiles
  // must not overlap, and every node on the shared seam must close up.
  bool fits(const Isometry& h, int side) const {
    const Tiles core = instances(p, strip(tiles, axis, Isometry::identity(), -1, 1));
    const Tiles mine = instances(p, strip(tiles, axis, Isometry::identity(), -4, 4));
    const Tiles other_core = instances(p, strip(tiles, axis, h, -1, 1));
    const Tiles other = instances(p, strip(tiles, axis, h, -5, 5));
    for (const auto& c : core) {
      for (const auto& o : other) {
        if (!o.box.overlaps(c.box, 0.0)) continue;
        if (!convex_interiors_disjoint(c.poly, o.poly, tol)) return false;
      }
    }
    std::vector<const detail::Instance*> all;
    for (const auto& t : mine) all.push_back(&t);
    for (const auto& t : other) all.push_back(&t);
    const Vec2 out_dir = normal * static_cast<double>(side);
    auto seam_closed = [&](Vec2 v, Vec2 away) {
      const auto st = detail::node_state(v, all, p, tol, kAngTol);
      if (!st.valid) return false;
      for (const auto& g : st.gaps) {
        if (dot(unit_dir(g.start + g.width / 2.0), away) < 1e-9) return false;
      }
      return true;
    };
    for (const auto& c : core) {
      for (Vec2 v : c.poly) {
        if (!seam_closed(v, -out_dir)) return false;
      }
    }
    for (const auto& c : other_core) {
      for (Vec2 v : c.poly) {
        if (!seam_closed(v, out_dir)) return false;
      }
    }
    return true;
  }

  Vec2 offset(const Isometry& h) const {
    Vec2 c;
    for (const auto& u : tiles) c += tile_center(p, h.compose(u)) - tile_center(p, u);
    return c / static_cast<double>(tiles.size());
  }
};

bool in_recipe(const TilingRecipe& r, const Isometry& iso) {
  for (const auto& u : r.unit) {
    if (u.reflected != iso.reflected) continue;
    const double d = wrap_angle(u.rotation - iso.rotation);
    if (std::min(d, 2 * kPi - d) > 1e-9) continue;
    const Vec2 t = iso.translation - u.translation;
    const double det = cross(r.lattice[0], r.lattice[1]);
    const double a = cross(t, r.lattice[1]) / det;
    const double b = cross(r.lattice[0], t) / det;
    if (std::abs(a - std::round(a)) < 1e-6 && std::abs(b - std::round(b)) < 1e-6) return true;
  }
  return false;
}

// Orientation-preserving or reversing neighbour of the band on one side.
std::optional<Isometry> find_neighbour(const Band& band, const TilingRecipe& r, int side,
                                       bool mirror, const std::optional<Isometry>& exclude) {
  const PentagonShape& p = band.p;
  struct Candidate {
    Isometry g;
    double cost;
  };
  std::vector<Candidate> cands;
  auto consider = [&](const Isometry& g) {
    const Vec2 c = band.offset(g);
    if (dot(c, band.normal) * side <= 1e-6) return;
    for (const auto& e : cands) {
      if (e.g.approx_equal(g, band.tol)) return;
    }
    cands.push_back({g, std::abs(dot(c, band.normal)) + 1e-3 * std::abs(dot(c, band.axis))});
  };
  if (!mirror) {
    // Symmetries of the periodic tiling taking the first band tile to a nearby tile.
    const Isometry s0_inv = band.tiles[0].inverse();
    const double reach = 3.0 * (norm(r.lattice[0]) + norm(r.lattice[1]));
    for (const auto& u : r.unit) {
      for (int i = -3; i <= 3; ++i) {
        for (int j = -3; j <= 3; ++j) {
          const Vec2 v = r.lattice[0] * static_cast<double>(i) + r.lattice[1] * static_cast<double>(j);
          if (norm(v) > reach) continue;
          const Isometry g = Isometry::translate(v).compose(u).compose(s0_inv);
          bool ok = true;
          for (const auto& t : band.tiles) ok = ok && in_recipe(r, g.compose(t));
          if (ok) consider(g);
        }
      }
    }
  } else {
    const Tiles one = instances(p, strip(band.tiles, band.axis, Isometry::identity(), 0, 0));
    std::vector<Vec2> verts;
    for (const auto& inst : one) verts.insert(verts.end(), inst.poly.begin(), inst.poly.end());
    for (int mode = 0; mode < 2; ++mode) {
      const double line = heading(band.axis) + (mode == 0 ? 0.0 : kPi / 2.0);
      const Isometry m0 = Isometry::reflect_line({0.0, 0.0}, line);
      for (Vec2 target : verts) {
        for (Vec2 src : verts) consider(Isometry::translate(target - m0.apply(src)).compose(m0));
      }
    }
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.cost < b.cost; });
  std::optional<Tiles> excluded;
  if (exclude) excluded = instances(p, strip(band.tiles, band.axis, *exclude, -2, 2));
  for (const auto& cand : cands) {
    if (excluded) {
      const Tiles img = instances(p, strip(band.tiles, band.axis, cand.g, -1, 1));
      bool same = true;
      for (const auto& t : img) same = same && contains_tile(*excluded, t, band.tol * 10);
      if (same) continue;
    }
    if (band.fits(cand.g, side)) return cand.g;
  }
  return std::nullopt;
}

std::optional<Belt> belt_along(const TilingRecipe& r, Vec2 axis, Vec2 step) {
  const PentagonShape& p = r.base;
  const double tol = kLenTol * p.mean_edge();
  const double det = cross(axis, step);
  const Vec2 normal = perp(axis) * ((det > 0 ? -1.0 : 1.0) / norm(axis));
  // One period of the full strip, ordered across the strip.
  const Vec2 c0 = tile_center(p, r.unit[0]);
  struct Item {
    Isometry iso;
    double nu;
  };
  std::vector<Item> items;
  for (const auto& u : r.unit) {
    const Vec2 d = tile_center(p, u) - c0;
    const double a = cross(d, step) / det;
    const double s = cross(axis, d) / det;
    Isometry v = u;
    v.translation -= axis * std::round(a) + step * std::floor(s);
    items.push_back({v, dot(tile_center(p, v) - c0, normal)});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.nu < b.nu; });
  const int n = static_cast<int>(items.size());
  for (int k = 1; k <= n; ++k) {
    if (n % k != 0) continue;
    for (int start = 0; start < n; ++start) {
      Band band{p, {}, axis, normal, tol};
      for (int i = 0; i < k; ++i) {
        const int idx = (start + i) % n;
        Isometry t = items[idx].iso;
        if (start + i >= n) t = Isometry::translate(step * (dot(step, normal) > 0 ? 1.0 : -1.0)).compose(t);
        band.tiles.push_back(t);
      }
      const auto right = find_neighbour(band, r, 1, false, std::nullopt);
      if (!right) continue;
      const auto left = find_neighbour(band, r, -1, false, std::nullopt);
      if (!left) continue;
      const auto right_m = find_neighbour(band, r, 1, true, right);
      if (!right_m) continue;
      const auto left_m = find_neighbour(band, r, -1, true, left);
      if (!left_m) continue;
      return Belt{p, band.tiles, axis, normal, *right, *left, *right_m, *left_m};
    }
  }
  return std::nullopt;
}

std::optional<Belt> belt_from_recipe(const TilingRecipe& r) {
  const Vec2 l1 = r.lattice[0];
  const Vec2 l2 = r.lattice[1];
  const std::array<std::pair<Vec2, Vec2>, 4> bases = {
      {{l1, l2}, {l2, l1}, {l1 + l2, l2}, {l1 - l2, l2}}};
  for (const auto& [axis, step] : bases) {
    if (auto b = belt_along(r, axis, step)) return b;
  }
  return std::nullopt;
}

// The shape read through a Type 1 labeling in which edges a and d are equal.
std::optional<PentagonShape> equal_ad_labeling(const PentagonShape& p) {
  const auto& t1 = conditions_of(1);
  for (const Labeling& g : Labeling::all()) {
    if (relation_residual(t1, p, g) > kClassifyTol) continue;
    const PentagonShape q = relabel(p, g);
    if (std::abs(q.edge(0) - q.edge(3)) <= kClassifyTol * q.mean_edge()) return q;
  }
  return std::nullopt;
}

}  // namespace

Patch belt_tiling(const PentagonShape& p, BeltFamily family, const std::vector<bool>& connection,
                  int height, int width) {
  if (width < 1 || height < 1)
    throw Error(ErrorCode::WrongFamily, "belt patch needs positive height and width");
  if (static_cast<int>(connection.size()) != width)
    throw Error(ErrorCode::WrongFamily, "connection sequence must have one entry per joint");

  std::optional<Belt> belt;
  if (family == BeltFamily::Type6) {
    const auto m = membership(p);
    if (std::find(m.begin(), m.end(), 6) == m.end())
      throw Error(ErrorCode::WrongFamily, "shape is not a Type 6 member");
    belt = belt_from_recipe(representative_recipe(6, p));
  } else {
    const auto q = equal_ad_labeling(p);
    if (!q) throw Error(ErrorCode::WrongFamily, "shape is not a Type 1 member with a = d");
    belt = belt_from_recipe(representative_recipe(1, *q));
    if (!belt) belt = belt_from_recipe(assemble_recipe(*q, edge_to_edge_relations(1)));
  }
  if (!belt) throw Error(ErrorCode::WrongFamily, "no mirrored band connection for this shape");
  const Belt& b = *belt;

  // Band k is hs[k] applied to the base band. When hs[k] swaps the sides of
  // the band, its right neighbour is the image of the base band's left one.
  std::vector<Isometry> hs = {Isometry::identity()};
  for (int k = 0; k < width; ++k) {
    const Isometry& h = hs.back();
    const bool flip = dot(h.apply_linear(b.normal), b.normal) < 0;
    const Isometry& g = connection[k] ? (flip ? b.left_mirror : b.right_mirror)
                                      : (flip ? b.left_plain : b.right_plain);
    hs.push_back(h.compose(g));
  }

  // Turn the patch so that the bands run vertically and follow each other
  // towards +x.
  Isometry turn = Isometry::rotate(kPi / 2.0 - heading(b.axis));
  const Vec2 first = turn.compose(hs.front()).apply(centroid(place(b.base, b.band[0])));
  const Vec2 last = turn.compose(hs.back()).apply(centroid(place(b.base, b.band[0])));
  if (last.x < first.x) turn = Isometry::rotate(kPi).compose(turn);
  Patch patch;
  patch.base = b.base;
  patch.axis = turn.apply_linear(b.axis);
  for (int k = 0; k <= width; ++k) {
    for (int j = -height; j <= height; ++j) {
      for (std::size_t u = 0; u < b.band.size(); ++u) {
        PlacedTile t;
        t.iso = turn.compose(hs[k])
                    .compose(Isometry::translate(b.axis * static_cast<double>(j)))
                    .compose(b.band[u]);
        t.vertices = place(b.base, t.iso);
        t.unit_index = static_cast<int>(u);
        t.i = k;
        t.j = j;
        patch.tiles.push_back(std::move(t));
      }
    }
  }
  // Window: between the outermost vertices of the first and last bands,
  // trimmed to the rows every band covers.
  double x_lo = -1e300, x_hi = 1e300, y_lo = -1e300, y_hi = 1e300;
  for (int k = 0; k <= width; ++k) {
    double lo = 1e300, hi = -1e300;
    for (const auto& t : patch.tiles) {
      if (t.i != k) continue;
      for (Vec2 v : t.vertices) {
        if (k == 0) x_lo = std::max(x_lo, v.x);
        if (k == width) x_hi = std::min(x_hi, v.x);
        lo = std::min(lo, v.y);
        hi = std::max(hi, v.y);
      }
    }
    y_lo = std::max(y_lo, lo);
    y_hi = std::min(y_hi, hi);
  }
  const double margin = norm(b.axis) + diameter(render_vertices(b.base));
  y_lo += margin;
  y_hi -= margin;
  if (x_hi > x_lo && y_hi > y_lo)
    patch.window = {{x_lo, y_lo}, {x_hi, y_lo}, {x_hi, y_hi}, {x_lo, y_hi}};
  return patch;
}

}  // namespace penta
