#include "penta/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>

#include "penta/catalog.hpp"
#include "penta/errors.hpp"

namespace penta {

namespace {

struct NodeTable {
  const char* full;
  const char* flat;
};

// Corner compositions of the representative tilings, space separated.
const std::array<NodeTable, 15> kRepresentativeNodes = {{
    {"ABC", "DE"},
    {"ABD", "CE"},
    {"AAA CCC DDD", "BE"},
    {"BBBB DDDD ACE", ""},
    {"AAAAAA DDD BCE", ""},
    {"ACE ABBC DDE", ""},
    {"ABB CEE ACDD", ""},
    {"BBC DEE AACD", ""},
    {"AAC DEE BBCD", ""},
    {"DDE BCC BBEE ACD AABE AAAA", "BE AA"},
    {"DDE CCEE BBC ABD AACE AAAA", "CE AA"},
    {"DDE CCEE BBC ABD AACE AAAA", "CE AA"},
    {"EEEE CCD BEEE BBEE BBBE BBBB ACD AAD", "EE BE BB"},
    {"DDE CCEE BBC ABD AACE AAAA", "CE AA"},
    {"EEEE CCE BDDE BBCD BBBEE BBBBBB ADD ABBE AAB", "EE BBB"},
}};

// Compositions available to edge-to-edge tilings of each type.
const std::array<const char*, 15> kEdgeToEdgeNodes = {{
    "ABC DDEE",
    "ABD CCEE",
    "",
    "BBBB DDDD ACE",
    "AAAAAA DDD BCE",
    "ACE ABBC DDE",
    "ABB CEE ACDD",
    "BBC DEE AACD",
    "AAC DEE BBCD",
    "",
    "",
    "",
    "",
    "",
    "",
}};

std::vector<std::string> words(const char* text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char* c = text; *c; ++c) {
    if (*c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(*c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  for (auto& w : out) std::sort(w.begin(), w.end());
  return out;
}

}  // namespace

NodeRelationSet node_relations(int type_id) {
  conditions_of(type_id);
  const NodeTable& t = kRepresentativeNodes[static_cast<std::size_t>(type_id - 1)];
  return {words(t.full), words(t.flat)};
}

NodeRelationSet edge_to_edge_relations(int type_id) {
  conditions_of(type_id);
  return {words(kEdgeToEdgeNodes[static_cast<std::size_t>(type_id - 1)]), {}};
}

double composition_sum_deg(const PentagonShape& p, const std::string& composition) {
  double s = 0.0;
  for (char c : composition) {
    const int k = c - 'A';
    if (k < 0 || k > 4) throw Error(ErrorCode::InvalidNodeSet, "bad corner letter in " + composition);
    s += p.angle(k);
  }
  return rad_to_deg(s);
}

void check_node_set(const PentagonShape& p, const NodeRelationSet& nodes, double tol) {
  for (const auto& c : nodes.full) {
    if (std::abs(composition_sum_deg(p, c) - 360.0) > tol)
      throw Error(ErrorCode::InvalidNodeSet, c + " does not sum to 360 degrees");
  }
  for (const auto& c : nodes.flat) {
    if (std::abs(composition_sum_deg(p, c) - 180.0) > tol)
      throw Error(ErrorCode::InvalidNodeSet, c + " does not sum to 180 degrees");
  }
}

NodeRelationSet numeric_node_set(const PentagonShape& p, bool include_flat, double tol) {
  NodeRelationSet out;
  std::string cur;
  std::function<void(int, int)> rec = [&](int start, int left) {
    if (!cur.empty()) {
      const double s = composition_sum_deg(p, cur);
      if (std::abs(s - 360.0) <= tol) out.full.push_back(cur);
      if (include_flat && cur.size() <= 3 && std::abs(s - 180.0) <= tol) out.flat.push_back(cur);
    }
    if (left == 0) return;
    for (int k = start; k < 5; ++k) {
      cur.push_back(static_cast<char>('A' + k));
      rec(k, left - 1);
      cur.pop_back();
    }
  };
  rec(0, 6);
  return out;
}

Polygon place(const PentagonShape& base, const Isometry& iso) {
  Polygon v = render_vertices(base);
  for (Vec2& q : v) q = iso.apply(q);
  return v;
}

Polygon ccw(const Polygon& labeled, bool reflected) {
  Polygon out = labeled;
  if (reflected) std::reverse(out.begin(), out.end());
  return out;
}

Patch generate_patch(const TilingRecipe& recipe, int m, int n) {
  Patch patch;
  patch.base = recipe.base;
  patch.lattice = recipe.lattice;
  const Vec2 l1 = recipe.lattice[0];
  const Vec2 l2 = recipe.lattice[1];
  for (int i = -m; i <= m; ++i) {
    for (int j = -n; j <= n; ++j) {
      const Vec2 offset = l1 * static_cast<double>(i) + l2 * static_cast<double>(j);
      for (std::size_t u = 0; u < recipe.unit.size(); ++u) {
        PlacedTile t;
        t.iso = Isometry::translate(offset).compose(recipe.unit[u]);
        t.vertices = place(recipe.base, t.iso);
        t.unit_index = static_cast<int>(u);
        t.i = i;
        t.j = j;
        patch.tiles.push_back(std::move(t));
      }
    }
  }

  // Window: lattice parallelogram around the unit centroid, shrunk by the
  // extent of the unit in lattice coordinates so every point is covered.
  const double det = cross(l1, l2);
  Vec2 c;
  int count = 0;
  for (const auto& t : patch.tiles) {
    if (t.i == 0 && t.j == 0) {
      for (Vec2 v : t.vertices) {
        c += v;
        ++count;
      }
    }
  }
  c = c / static_cast<double>(count);
  double alpha = 0.0;
  double beta = 0.0;
  for (const auto& t : patch.tiles) {
    if (t.i != 0 || t.j != 0) continue;
    for (Vec2 v : t.vertices) {
      const Vec2 d = v - c;
      alpha = std::max(alpha, std::abs(cross(d, l2) / det));
      beta = std::max(beta, std::abs(cross(l1, d) / det));
    }
  }
  const double a = m - alpha;
  const double b = n - beta;
  if (a > 1e-9 && b > 1e-9) {
    patch.window = to_ccw(Polygon{c + l1 * -a + l2 * -b, c + l1 * a + l2 * -b, c + l1 * a + l2 * b,
                                  c + l1 * -a + l2 * b});
  }
  return patch;
}

ValidationReport validate_patch(const Patch& patch) {
  ValidationReport report;
  std::vector<Polygon> polys;
  std::vector<Box> boxes;
  for (const auto& t : patch.tiles) {
    polys.push_back(ccw(t.vertices, t.iso.reflected));
    boxes.push_back(bounding_box(polys.back()));
  }
  const bool has_window = patch.window.size() >= 3;
  report.window_area = has_window ? signed_area(patch.window) : 0.0;
  double covered = 0.0;
  double pair_overlap_in_window = 0.0;
  for (std::size_t a = 0; a < polys.size(); ++a) {
    if (has_window) covered += convex_overlap_area(polys[a], patch.window);
    for (std::size_t b = a + 1; b < polys.size(); ++b) {
      if (!boxes[a].overlaps(boxes[b], 0.0)) continue;
      const Polygon inter = clip_convex(polys[a], polys[b]);
      if (inter.size() < 3) continue;
      const double area = std::max(0.0, signed_area(inter));
      report.max_overlap = std::max(report.max_overlap, area);
      if (has_window && area > 0) pair_overlap_in_window += convex_overlap_area(inter, patch.window);
    }
  }
  if (has_window)
    report.coverage_defect = std::abs(report.window_area - covered + pair_overlap_in_window);
  return report;
}

TilingRecipe representative_recipe(int type_id, const PentagonShape& p) {
  const auto members = membership(p);
  if (std::find(members.begin(), members.end(), type_id) == members.end())
    throw Error(ErrorCode::WrongFamily, "shape is not a member of type " + std::to_string(type_id));
  // The node relations are written for the labeling in which the shape meets
  // the type conditions.
  const PentagonShape q = relabel(p, best_residual(conditions_of(type_id), p).labeling);
  static std::mutex mu;
  static std::map<std::pair<int, CanonicalKey>, TilingRecipe> cache;
  const auto key = std::make_pair(type_id, key_of(q));
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  TilingRecipe recipe;
  try {
    recipe = assemble_recipe(q, node_relations(type_id));
  } catch (const Error& e) {
    // Special parameter values can force nodes outside the generic set (a
    // Type 1 shape with a = d closes its flat points into full nodes).
    if (e.code() != ErrorCode::NoRecipeFound) throw;
    NodeRelationSet merged = node_relations(type_id);
    for (const auto& c : edge_to_edge_relations(type_id).full) {
      if (std::find(merged.full.begin(), merged.full.end(), c) == merged.full.end())
        merged.full.push_back(c);
    }
    if (merged.full.size() == node_relations(type_id).full.size()) throw;
    recipe = assemble_recipe(q, merged);
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, recipe);
  return recipe;
}

std::vector<bool> thue_morse(int length) {
  std::vector<bool> out;
  for (int i = 0; i < length; ++i) out.push_back(__builtin_popcount(static_cast<unsigned>(i)) % 2 == 1);
  return out;
}

}  // namespace penta
