// Backtracking search for periodic tilings whose nodes follow a relation set.
//
// The state is a list of unit tiles plus 0, 1 or 2 lattice vectors. The
// tiling under construction is the set of all lattice translates of the unit
// tiles. A placement whose orientation repeats that of a unit tile is read as
// a translation of the tiling and committed to the lattice; other placements
// join the unit. The search succeeds once the lattice has two vectors, the
// unit fills the fundamental domain and every node is complete.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include "penta/errors.hpp"
#include "penta/tiling.hpp"
#include "node_geometry.hpp"

namespace penta {

namespace {

using detail::Gap;
using detail::Instance;
using detail::NodeState;
using detail::Wedge;

constexpr double kLenTol = 1e-7;
constexpr double kAngTol = 1e-7;
constexpr double kTwoPi = 2.0 * kPi;

struct Move {
  Isometry iso;
  bool commit = false;
  std::vector<Vec2> lattice;
  int target = 0;
};

struct BudgetExhausted {};

double orientation_distance(const Isometry& a, const Isometry& b) {
  if (a.reflected != b.reflected) return 1e9;
  const double d = wrap_angle(a.rotation - b.rotation);
  return std::min(d, kTwoPi - d);
}

std::vector<std::string> sub_multisets(const std::vector<std::string>& words) {
  std::set<std::string> out;
  for (const auto& w : words) {
    const std::size_t n = w.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::string s;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) s.push_back(w[i]);
      }
      out.insert(s);
    }
  }
  return {out.begin(), out.end()};
}

Vec2 lattice_coords(Vec2 v, const std::vector<Vec2>& lat) {
  const double det = cross(lat[0], lat[1]);
  return {cross(v, lat[1]) / det, cross(lat[0], v) / det};
}

bool near_integer(double x, double tol) { return std::abs(x - std::round(x)) < tol; }

std::array<Vec2, 2> gauss_reduce(Vec2 a, Vec2 b) {
  if (dot(a, a) > dot(b, b)) std::swap(a, b);
  for (int it = 0; it < 100; ++it) {
    const double mu = std::round(dot(a, b) / dot(a, a));
    b = b - a * mu;
    if (dot(b, b) >= dot(a, a) - 1e-12) break;
    std::swap(a, b);
  }
  if (cross(a, b) < 0) b = -b;
  return {a, b};
}

class Assembler {
 public:
  Assembler(const PentagonShape& p, const NodeRelationSet& nodes, const AssemblyOptions& opts)
      : p_(p), opts_(opts), allow_flat_(nodes.allows_flat()) {
    for (const auto& w : nodes.full) full_.insert(w);
    for (const auto& w : nodes.flat) flat_.insert(w);
    for (const auto& w : sub_multisets(nodes.full)) sub_full_.insert(w);
    for (const auto& w : sub_multisets(nodes.flat)) sub_flat_.insert(w);
    base_ = render_vertices(p);
    area_ = signed_area(base_);
    diam_ = diameter(base_);
    scale_ = p.mean_edge();
  }

  std::optional<TilingRecipe> run(int cap) {
    cap_ = cap;
    unit_ = {Isometry::identity()};
    lattice_.clear();
    target_ = 0;
    rebuild();
    if (dfs()) return finish();
    return std::nullopt;
  }

  long placements() const { return placements_; }

 private:
  const PentagonShape& p_;
  AssemblyOptions opts_;
  bool allow_flat_;
  std::unordered_set<std::string> full_, flat_, sub_full_, sub_flat_;
  Polygon base_;
  double area_ = 0.0;
  double diam_ = 0.0;
  double scale_ = 1.0;

  int cap_ = 1;
  std::vector<Isometry> unit_;
  std::vector<Vec2> lattice_;
  int target_ = 0;
  long placements_ = 0;

  std::vector<Instance> world_;
  Vec2 origin_;
  double spread_ = 0.0;

  Instance make_instance(const Isometry& iso) const { return detail::make_instance(p_, iso); }

  std::vector<Vec2> offsets(double radius, const std::vector<Vec2>& lat) const {
    std::vector<Vec2> out;
    if (lat.empty()) {
      out.push_back({});
    } else if (lat.size() == 1) {
      const int k = static_cast<int>(std::ceil(radius / norm(lat[0])));
      for (int i = -k; i <= k; ++i) out.push_back(lat[0] * static_cast<double>(i));
    } else {
      const double det = std::abs(cross(lat[0], lat[1]));
      const int ki = static_cast<int>(std::ceil(radius * norm(lat[1]) / det));
      const int kj = static_cast<int>(std::ceil(radius * norm(lat[0]) / det));
      for (int i = -ki; i <= ki; ++i) {
        for (int j = -kj; j <= kj; ++j) {
          const Vec2 v = lat[0] * static_cast<double>(i) + lat[1] * static_cast<double>(j);
          if (norm(v) <= radius) out.push_back(v);
        }
      }
    }
    return out;
  }

  Vec2 tile_center(const Isometry& iso) const { return centroid(place(p_, iso)); }

  // Move every unit tile to the lattice translate nearest the first tile.
  void reduce_unit(std::vector<Isometry>& unit, const std::vector<Vec2>& lat) const {
    const Vec2 c0 = tile_center(unit[0]);
    for (std::size_t i = 1; i < unit.size(); ++i) {
      const Vec2 d = tile_center(unit[i]) - c0;
      Vec2 shift;
      if (lat.size() == 1) {
        shift = lat[0] * std::round(dot(d, lat[0]) / dot(lat[0], lat[0]));
      } else if (lat.size() == 2) {
        const Vec2 c = lattice_coords(d, lat);
        shift = lat[0] * std::round(c.x) + lat[1] * std::round(c.y);
        // The rounded point may not be the nearest translate on skewed bases.
        Vec2 best = shift;
        for (int a = -1; a <= 1; ++a) {
          for (int b = -1; b <= 1; ++b) {
            const Vec2 s = shift + lat[0] * a + lat[1] * b;
            if (norm(d - s) < norm(d - best) - 1e-12) best = s;
          }
        }
        shift = best;
      }
      unit[i].translation -= shift;
    }
  }

  void rebuild() {
    origin_ = tile_center(unit_[0]);
    spread_ = 0.0;
    for (const auto& u : unit_) spread_ = std::max(spread_, dist(tile_center(u), origin_));
    const double radius = spread_ * 2.0 + 4.5 * diam_;
    world_.clear();
    for (const auto& u : unit_) {
      const Vec2 cu = tile_center(u) - origin_;
      for (Vec2 v : offsets(radius + spread_, lattice_)) {
        if (norm(cu + v) > radius) continue;
        world_.push_back(make_instance(Isometry::translate(v).compose(u)));
      }
    }
  }

  NodeState evaluate(Vec2 P, const std::vector<const Instance*>& insts) const {
    NodeState st = detail::node_state(P, insts, p_, kLenTol * scale_, kAngTol);
    if (st.valid) st.valid = composition_ok(st);
    return st;
  }

  bool composition_ok(const NodeState& st) const {
    if (st.straight >= 2) return false;
    if (st.straight == 1) {
      if (!allow_flat_) return false;
      if (st.complete()) return flat_.count(st.corners) > 0;
      return st.corners.empty() || sub_flat_.count(st.corners) > 0;
    }
    if (st.complete()) return full_.count(st.corners) > 0;
    if (sub_full_.count(st.corners)) return true;
    return allow_flat_ && sub_flat_.count(st.corners) > 0;
  }

  std::vector<const Instance*> near(const Box& box, double pad,
                                    const std::vector<Instance>& extra) const {
    std::vector<const Instance*> out;
    for (const auto& w : world_) {
      if (w.box.overlaps(box, pad)) out.push_back(&w);
    }
    for (const auto& w : extra) {
      if (w.box.overlaps(box, pad)) out.push_back(&w);
    }
    return out;
  }

  std::vector<const Instance*> all_world() const {
    std::vector<const Instance*> out;
    for (const auto& w : world_) out.push_back(&w);
    return out;
  }

  // Incomplete nodes among unit vertices, nearest the origin first.
  bool collect_nodes(std::vector<std::pair<Vec2, NodeState>>& open) const {
    std::vector<Vec2> pts;
    for (const auto& u : unit_) {
      for (Vec2 v : place(p_, u)) {
        bool dup = false;
        for (Vec2 q : pts) dup = dup || dist(q, v) < kLenTol * scale_;
        if (!dup) pts.push_back(v);
      }
    }
    std::sort(pts.begin(), pts.end(),
              [&](Vec2 a, Vec2 b) { return dist(a, origin_) < dist(b, origin_); });
    const auto insts = all_world();
    for (Vec2 P : pts) {
      NodeState st = evaluate(P, insts);
      if (!st.valid) return false;
      if (!st.complete()) open.emplace_back(P, std::move(st));
    }
    return true;
  }

  Isometry corner_iso(int c, bool reflected, Vec2 P, double phi) const {
    Isometry iso;
    iso.reflected = reflected;
    const Vec2 bc = reflected ? Vec2{base_[c].x, -base_[c].y} : base_[c];
    const int nb = reflected ? (c + 4) % 5 : (c + 1) % 5;
    const Vec2 bn = reflected ? Vec2{base_[nb].x, -base_[nb].y} : base_[nb];
    iso.rotation = wrap_angle(phi - heading(bn - bc));
    iso.translation = P - Isometry{reflected, iso.rotation, {}}.apply(base_[c]);
    return iso;
  }

  // Tile with corner c at P whose interior wedge ends on the ray psi.
  Isometry corner_end_iso(int c, bool reflected, Vec2 P, double psi) const {
    Isometry iso;
    iso.reflected = reflected;
    const Vec2 bc = reflected ? Vec2{base_[c].x, -base_[c].y} : base_[c];
    const int pb = reflected ? (c + 1) % 5 : (c + 4) % 5;
    const Vec2 bp = reflected ? Vec2{base_[pb].x, -base_[pb].y} : base_[pb];
    iso.rotation = wrap_angle(psi - heading(bp - bc));
    iso.translation = P - Isometry{reflected, iso.rotation, {}}.apply(base_[c]);
    return iso;
  }

  // Isometry sending the counterclockwise edge that leaves corner c onto the
  // segment from X in direction phi.
  Isometry edge_iso(int c, bool reflected, Vec2 X, double phi) const { return corner_iso(c, reflected, X, phi); }

  double ccw_edge_length(int c, bool reflected) const {
    const int nb = reflected ? (c + 4) % 5 : (c + 1) % 5;
    return dist(base_[c], base_[nb]);
  }

  bool same_iso(const Isometry& a, const Isometry& b) const {
    return orientation_distance(a, b) < 1e-9 && dist(a.translation, b.translation) < kLenTol * scale_;
  }

  bool corner_fits(const NodeState& st, const Gap& g, int c) const {
    if (p_.angle(c) > g.width + kAngTol) return false;
    NodeState probe;
    probe.corners = st.corners + static_cast<char>('A' + c);
    std::sort(probe.corners.begin(), probe.corners.end());
    probe.straight = st.straight;
    const bool closes = std::abs(p_.angle(c) - g.width) <= kAngTol && st.gaps.size() == 1;
    if (!closes) probe.gaps.push_back({});
    return composition_ok(probe);
  }

  // Vertices of the current tiling on the line through P with direction u,
  // as signed positions along u.
  std::vector<double> line_vertices(Vec2 P, Vec2 u, double reach) const {
    std::vector<double> out;
    const double tol = kLenTol * scale_;
    Box box;
    box.expand(P - Vec2{reach, reach});
    box.expand(P + Vec2{reach, reach});
    for (const auto& w : world_) {
      if (!w.box.overlaps(box, 0.0)) continue;
      for (Vec2 z : w.poly) {
        if (std::abs(cross(z - P, u)) > tol) continue;
        const double s = dot(z - P, u);
        if (std::abs(s) > tol && std::abs(s) < reach) out.push_back(s);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [&](double a, double b) { return std::abs(a - b) < tol; }),
              out.end());
    return out;
  }

  // Placements with P on the interior of a counterclockwise edge heading phi,
  // one end of the edge at an existing vertex on that line.
  void through_edges(Vec2 P, double phi, bool r, std::vector<Isometry>& cands) const {
    const Vec2 u = unit_dir(phi);
    const double tol = kLenTol * scale_;
    double longest = 0.0;
    for (int c = 0; c < 5; ++c) longest = std::max(longest, p_.edge(c));
    const auto marks = line_vertices(P, u, longest + tol);
    for (int c = 0; c < 5; ++c) {
      const double len = ccw_edge_length(c, r);
      for (double s : marks) {
        if (std::abs(s) + tol >= len) continue;
        const Vec2 x = s > 0 ? P + u * (s - len) : P + u * s;
        cands.push_back(edge_iso(c, r, x, phi));
      }
    }
  }

  std::vector<Move> options(Vec2 P, const NodeState& st) {
    std::vector<Move> out;
    if (st.gaps.empty()) return out;
    // Fill the narrowest gap with a tile touching either of its bounding rays.
    const Gap* g = &st.gaps[0];
    for (const auto& gg : st.gaps) {
      if (gg.width < g->width) g = &gg;
    }
    const double phi = g->start;
    const double psi = g->start + g->width;
    const bool straight_ok = allow_flat_ && st.straight == 0 && g->width >= kPi - kAngTol &&
                             (st.corners.empty() || sub_flat_.count(st.corners));
    const bool straight_closes = std::abs(g->width - kPi) <= kAngTol && st.gaps.size() == 1;
    std::vector<Isometry> cands;
    for (int refl = 0; refl < (opts_.allow_reflections ? 2 : 1); ++refl) {
      const bool r = refl == 1;
      for (int c = 0; c < 5; ++c) {
        if (!corner_fits(st, *g, c)) continue;
        cands.push_back(corner_iso(c, r, P, phi));
        cands.push_back(corner_end_iso(c, r, P, psi));
      }
      if (straight_ok && (!straight_closes || flat_.count(st.corners))) {
        through_edges(P, phi, r, cands);
        if (g->width > kPi + kAngTol) through_edges(P, psi - kPi, r, cands);
      }
    }
    for (const auto& iso : cands) {
      bool dup = false;
      for (const auto& m : out) dup = dup || same_iso(m.iso, iso);
      if (dup) continue;
      auto mv = classify(iso);
      if (mv && validate(*mv)) out.push_back(*mv);
    }
    return out;
  }

  std::optional<Move> classify(const Isometry& iso) const {
    Move mv;
    mv.iso = iso;
    mv.lattice = lattice_;
    mv.target = target_;
    for (const auto& u : unit_) {
      if (orientation_distance(u, iso) > 1e-9) continue;
      const Vec2 d = iso.translation - u.translation;
      if (lattice_.size() == 2) {
        const Vec2 c = lattice_coords(d, lattice_);
        if (near_integer(c.x, 1e-6) && near_integer(c.y, 1e-6)) return std::nullopt;
        continue;
      }
      if (lattice_.empty()) {
        mv.commit = true;
        mv.lattice = {d};
        return mv;
      }
      const double cr = cross(d, lattice_[0]);
      if (std::abs(cr) < 1e-7 * norm(d) * norm(lattice_[0])) return std::nullopt;
      const double cells = std::abs(cr) / area_;
      const double n = std::round(cells);
      if (std::abs(cells - n) > 1e-6 * std::max(1.0, n)) return std::nullopt;
      if (n < static_cast<double>(unit_.size()) || n > cap_) return std::nullopt;
      mv.commit = true;
      mv.lattice = {lattice_[0], d};
      mv.target = static_cast<int>(n);
      return mv;
    }
    const int limit = lattice_.size() == 2 ? target_ : cap_;
    if (static_cast<int>(unit_.size()) >= limit) return std::nullopt;
    return mv;
  }

  bool validate(const Move& mv) {
    if (mv.commit) {
      // Full check of the tiling generated by the new lattice.
      const auto saved_lattice = lattice_;
      const auto saved_target = target_;
      const auto saved_unit = unit_;
      lattice_ = mv.lattice;
      target_ = mv.target;
      reduce_unit(unit_, lattice_);
      rebuild();
      const bool ok = full_check();
      lattice_ = saved_lattice;
      target_ = saved_target;
      unit_ = saved_unit;
      rebuild();
      return ok;
    }
    const Instance t = make_instance(mv.iso);
    std::vector<Instance> extra;
    for (Vec2 v : offsets(2.0 * diam_ + 1.0, lattice_)) {
      if (norm(v) < 1e-12) {
        extra.push_back(t);
        continue;
      }
      Instance tv = make_instance(Isometry::translate(v).compose(mv.iso));
      if (!convex_interiors_disjoint(t.poly, tv.poly, kLenTol * scale_)) return false;
      extra.push_back(std::move(tv));
    }
    for (const auto& w : world_) {
      if (!w.box.overlaps(t.box, 0.0)) continue;
      if (!convex_interiors_disjoint(t.poly, w.poly, kLenTol * scale_)) return false;
    }
    const auto insts = near(t.box, diam_, extra);
    std::vector<Vec2> pts(t.poly.begin(), t.poly.end());
    for (const Instance* w : insts) {
      for (Vec2 q : w->poly) {
        if (q.x < t.box.lo.x - 1e-6 || q.x > t.box.hi.x + 1e-6 || q.y < t.box.lo.y - 1e-6 ||
            q.y > t.box.hi.y + 1e-6)
          continue;
        bool on = false;
        for (int k = 0; k < 5; ++k)
          on = on || point_segment_distance(q, t.poly[k], t.poly[(k + 1) % 5]) < kLenTol * scale_;
        if (on) pts.push_back(q);
      }
    }
    for (Vec2 q : pts) {
      if (!evaluate(q, insts).valid) return false;
    }
    return true;
  }

  bool full_check() const {
    const double tol = kLenTol * scale_;
    for (std::size_t i = 0; i < unit_.size(); ++i) {
      const Instance t = make_instance(unit_[i]);
      for (const auto& w : world_) {
        if (!w.box.overlaps(t.box, 0.0)) continue;
        bool same = true;
        for (int k = 0; k < 5; ++k) same = same && dist(w.poly[k], t.poly[k]) < tol;
        if (same) continue;
        if (!convex_interiors_disjoint(t.poly, w.poly, tol)) return false;
      }
    }
    const auto insts = all_world();
    for (const auto& u : unit_) {
      for (Vec2 v : place(p_, u)) {
        if (!evaluate(v, insts).valid) return false;
      }
    }
    return true;
  }

  void apply(const Move& mv) {
    if (mv.commit) {
      lattice_ = mv.lattice;
      target_ = mv.target;
    } else {
      unit_.push_back(mv.iso);
    }
    reduce_unit(unit_, lattice_);
    rebuild();
  }

  bool dfs() {
    std::vector<std::pair<Vec2, NodeState>> open;
    if (!collect_nodes(open)) return false;
    if (open.empty()) {
      return lattice_.size() == 2 && static_cast<int>(unit_.size()) == target_;
    }
    std::vector<Move> best;
    bool have = false;
    const std::size_t probe = std::min<std::size_t>(open.size(), 6);
    for (std::size_t i = 0; i < probe; ++i) {
      auto mv = options(open[i].first, open[i].second);
      if (!have || mv.size() < best.size()) {
        best = std::move(mv);
        have = true;
      }
      if (best.empty()) return false;
      if (best.size() == 1) break;
    }
    if (opts_.seed != 0) {
      std::mt19937_64 rng(opts_.seed + static_cast<std::uint64_t>(placements_));
      std::shuffle(best.begin(), best.end(), rng);
    }
    const auto saved_unit = unit_;
    const auto saved_lattice = lattice_;
    const int saved_target = target_;
    for (const auto& mv : best) {
      if (++placements_ > opts_.budget) throw BudgetExhausted{};
      apply(mv);
      if (dfs()) return true;
      unit_ = saved_unit;
      lattice_ = saved_lattice;
      target_ = saved_target;
      rebuild();
    }
    return false;
  }

  // Replace the lattice by a smaller one when the unit repeats inside itself.
  void make_primitive() {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < unit_.size() && !changed; ++i) {
        for (std::size_t j = i + 1; j < unit_.size() && !changed; ++j) {
          if (orientation_distance(unit_[i], unit_[j]) > 1e-9) continue;
          const Vec2 d = unit_[j].translation - unit_[i].translation;
          if (!invariant_under(d)) continue;
          const auto lat = join_lattice(d);
          if (!lat) continue;
          lattice_ = {(*lat)[0], (*lat)[1]};
          std::vector<Isometry> kept;
          for (const auto& u : unit_) {
            bool dup = false;
            for (const auto& k : kept) dup = dup || same_mod_lattice(k, u);
            if (!dup) kept.push_back(u);
          }
          unit_ = kept;
          changed = true;
        }
      }
    }
  }

  bool same_mod_lattice(const Isometry& a, const Isometry& b) const {
    if (orientation_distance(a, b) > 1e-9) return false;
    const Vec2 c = lattice_coords(b.translation - a.translation, lattice_);
    return near_integer(c.x, 1e-6) && near_integer(c.y, 1e-6);
  }

  bool invariant_under(Vec2 d) const {
    for (const auto& u : unit_) {
      const Isometry moved = Isometry::translate(d).compose(u);
      bool hit = false;
      for (const auto& w : unit_) hit = hit || same_mod_lattice(w, moved);
      if (!hit) return false;
    }
    return true;
  }

  std::optional<std::array<Vec2, 2>> join_lattice(Vec2 d) const {
    const Vec2 c = lattice_coords(d, lattice_);
    long q = 0;
    for (long den = 2; den <= 64; ++den) {
      if (near_integer(c.x * den, 1e-6) && near_integer(c.y * den, 1e-6)) {
        q = den;
        break;
      }
    }
    if (q == 0) return std::nullopt;
    std::vector<std::array<long, 2>> rows = {
        {q, 0}, {0, q}, {std::lround(c.x * q), std::lround(c.y * q)}};
    for (std::size_t r = 1; r < rows.size(); ++r) {
      while (rows[r][0] != 0) {
        const long f = rows[0][0] / rows[r][0];
        rows[0][0] -= f * rows[r][0];
        rows[0][1] -= f * rows[r][1];
        std::swap(rows[0], rows[r]);
      }
    }
    long g = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) g = std::gcd(g, std::abs(rows[r][1]));
    const double qd = static_cast<double>(q);
    const Vec2 a = (lattice_[0] * static_cast<double>(rows[0][0]) +
                    lattice_[1] * static_cast<double>(rows[0][1])) / qd;
    const Vec2 b = lattice_[1] * (static_cast<double>(g) / qd);
    return std::array<Vec2, 2>{a, b};
  }

  TilingRecipe finish() {
    make_primitive();
    TilingRecipe out{p_, {}, {}};
    const auto red = gauss_reduce(lattice_[0], lattice_[1]);
    lattice_ = {red[0], red[1]};
    reduce_unit(unit_, lattice_);
    out.unit = unit_;
    out.lattice = red;
    return out;
  }
};

}  // namespace

TilingRecipe assemble_recipe(const PentagonShape& p, const NodeRelationSet& nodes,
                             const AssemblyOptions& opts) {
  if (opts.max_unit < 1 || opts.max_unit > 16)
    throw Error(ErrorCode::InvalidNodeSet, "unit cap must lie in 1..16");
  check_node_set(p, nodes);
  if (nodes.full.empty()) throw Error(ErrorCode::NoRecipeFound, "no node relations for this shape");
  Assembler search(p, nodes, opts);
  try {
    for (int cap = 1; cap <= opts.max_unit; ++cap) {
      if (auto r = search.run(cap)) return *r;
    }
  } catch (const BudgetExhausted&) {
    throw Error(ErrorCode::NoRecipeFound, "placement budget exhausted");
  }
  throw Error(ErrorCode::NoRecipeFound,
              "no periodic tiling with at most " + std::to_string(opts.max_unit) + " tiles per unit");
}

}  // namespace penta
