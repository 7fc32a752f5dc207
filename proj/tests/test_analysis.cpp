#include <random>
#include <set>

#include "doctest.h"
#include "penta/analysis.hpp"
#include "penta/catalog.hpp"
#include "penta/errors.hpp"
#include "penta/solver.hpp"
#include "penta/tiling.hpp"
#include "support.hpp"

using namespace penta;

namespace {

Patch representative_patch(int t, int m) { return generate_patch(representative_recipe(t, witness(t)), m, m); }

Patch moved(const Patch& patch, const Isometry& f) {
  Patch out = patch;
  for (auto& t : out.tiles) {
    t.iso = f.compose(t.iso);
    for (Vec2& v : t.vertices) v = f.apply(v);
  }
  for (Vec2& v : out.window) v = f.apply(v);
  if (f.reflected) std::reverse(out.window.begin(), out.window.end());
  if (out.lattice) {
    for (Vec2& l : *out.lattice) l = f.apply_linear(l);
  }
  if (out.axis) out.axis = f.apply_linear(*out.axis);
  return out;
}

// True when `v` carries each tile near the window center onto a tile of the
// same orientation, by brute force over centroids.
bool translation_maps_core(const Patch& patch, Vec2 v, double radius) {
  std::vector<Vec2> c;
  for (const auto& t : patch.tiles) c.push_back(centroid(ccw(t.vertices, t.iso.reflected)));
  const Vec2 mid = centroid(patch.window);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (dist(c[i], mid) > radius) continue;
    bool hit = false;
    for (std::size_t j = 0; j < c.size() && !hit; ++j) {
      if (dist(c[i] + v, c[j]) > 1e-6) continue;
      hit = patch.tiles[i].iso.reflected == patch.tiles[j].iso.reflected &&
            std::abs(std::remainder(patch.tiles[i].iso.rotation - patch.tiles[j].iso.rotation, 2 * kPi)) < 1e-6;
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("corona classes of the representative tilings") {
  const std::array<int, 15> k = {1, 1, 1, 1, 1, 2, 2, 2, 2, 3, 2, 2, 2, 3, 3};
  for (int t = 1; t <= 15; ++t) {
    CAPTURE(t);
    CHECK(corona_classes(representative_patch(t, 2)).count == k[t - 1]);
  }
}

TEST_CASE("corona classes are invariant under a global isometry and tile order") {
  const Patch p = representative_patch(7, 2);
  const int k = corona_classes(p).count;
  CHECK(corona_classes(moved(p, Isometry{false, 0.8, {3.0, -1.0}})).count == k);
  CHECK(corona_classes(moved(p, Isometry{true, 2.1, {-0.5, 4.0}})).count == k);
  Patch shuffled = p;
  std::mt19937_64 rng(61);
  std::shuffle(shuffled.tiles.begin(), shuffled.tiles.end(), rng);
  CHECK(corona_classes(shuffled).count == k);
}

TEST_CASE("first corona of an interior tile is closed around it") {
  const Patch p = representative_patch(1, 2);
  int center = -1;
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    if (p.tiles[i].i == 0 && p.tiles[i].j == 0) center = static_cast<int>(i);
  }
  const Corona c = first_corona(p, center);
  CHECK(c.members.size() >= 6);
  CHECK(std::find(c.members.begin(), c.members.end(), center) != c.members.end());
  // A tile on the patch rim has no complete corona.
  int rim = 0;
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    if (std::abs(p.tiles[i].i) == 2) rim = static_cast<int>(i);
  }
  CHECK_THROWS_AS(first_corona(p, rim), Error);
}

TEST_CASE("reflection usage") {
  for (int t = 1; t <= 15; ++t) {
    CAPTURE(t);
    const bool expect = t == 2 || t >= 7;
    CHECK(uses_reflections(representative_patch(t, 1)) == expect);
  }
}

TEST_CASE("vertex spectrum of Type 7 and flat nodes of Type 1") {
  const auto nodes = vertex_spectrum(representative_patch(7, 2));
  std::vector<std::string> names;
  for (const auto& n : nodes) {
    names.push_back(n.composition);
    CHECK_FALSE(n.flat);
    CHECK(n.sum_deg == doctest::Approx(360.0).epsilon(1e-9));
  }
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"ABB", "ACDD", "CEE"});

  const Patch p1 = representative_patch(1, 2);
  bool flat = false;
  for (const auto& n : vertex_spectrum(p1)) flat = flat || n.flat;
  CHECK(flat);
  CHECK_FALSE(is_edge_to_edge(p1));
}

TEST_CASE("edge-to-edge flag agrees with flat nodes") {
  for (int t = 1; t <= 15; ++t) {
    CAPTURE(t);
    const Patch p = representative_patch(t, 2);
    bool flat = false;
    for (const auto& n : vertex_spectrum(p)) flat = flat || n.flat;
    CHECK(is_edge_to_edge(p) == !flat);
  }
  CHECK_FALSE(is_edge_to_edge(representative_patch(3, 2)));
  CHECK_FALSE(is_edge_to_edge(representative_patch(13, 2)));
}

TEST_CASE("corrupted patch raises InvalidNode") {
  Patch p = representative_patch(4, 2);
  auto& t = p.tiles[p.tiles.size() / 2];
  t.iso = Isometry::translate({0.13, 0.07}).compose(t.iso);
  for (Vec2& v : t.vertices) v += Vec2{0.13, 0.07};
  try {
    vertex_spectrum(p);
    FAIL("expected InvalidNode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidNode);
  }
}

TEST_CASE("periodicity check recovers the recipe lattice") {
  for (int t : {1, 4, 7, 10}) {
    CAPTURE(t);
    const TilingRecipe r = representative_recipe(t, witness(t));
    const Patch p = generate_patch(r, 3, 3);
    const auto periods = periodicity_check(p);
    REQUIRE(periods.size() == 2);
    // Each period is an integer combination of the lattice vectors and the
    // pair spans the same lattice.
    const double det = cross(r.lattice[0], r.lattice[1]);
    for (Vec2 v : periods) {
      const double a = cross(v, r.lattice[1]) / det, b = cross(r.lattice[0], v) / det;
      CHECK(std::abs(a - std::round(a)) < 1e-6);
      CHECK(std::abs(b - std::round(b)) < 1e-6);
      CHECK(translation_maps_core(p, v, 2.0));
    }
    CHECK(std::abs(cross(periods[0], periods[1])) == doctest::Approx(std::abs(det)).epsilon(1e-6));
  }
}

TEST_CASE("single unit patch has no period") {
  const TilingRecipe r = representative_recipe(2, witness(2));
  Patch p = generate_patch(r, 0, 0);
  CHECK(periodicity_check(p).empty());
}

TEST_CASE("belt patches: mirrored Type 6 belts and Thue-Morse Type 1 belts") {
  std::vector<bool> alt;
  for (int k = 0; k < 8; ++k) alt.push_back(k % 2 == 0);
  const PentagonShape w6 = witness(6);
  CHECK(corona_classes(belt_tiling(w6, BeltFamily::Type6, alt, 4, 8)).count == 4);
  CHECK(corona_classes(belt_tiling(w6, BeltFamily::Type6, std::vector<bool>(8, false), 4, 8)).count == 2);

  const Patch tm = belt_tiling(edge_to_edge_member(1), BeltFamily::Type1EqualAD, thue_morse(8), 4, 8);
  const auto periods = periodicity_check(tm);
  REQUIRE(periods.size() == 1);
  CHECK(std::abs(cross(periods[0], *tm.axis)) < 1e-6);
  CHECK(uses_reflections(tm));
  CHECK(is_edge_to_edge(tm));
}

TEST_CASE("edge-to-edge membership audit") {
  const auto samples = theorem1_samples(24, 5);
  REQUIRE(samples.size() == 24);
  // Samples are distinct shapes.
  std::set<CanonicalKey> keys;
  for (const auto& s : samples) keys.insert(canonical_form(s).key);
  CHECK(keys.size() == 24);
  const auto report = theorem1_audit(samples);
  CHECK(report.violations == 0);
  CHECK(report.found == 24);

  const auto t1_t2_t12 = intersection_report({1, 2, 12});
  REQUIRE(t1_t2_t12.shapes.size() == 1);
  const auto r = theorem1_audit({t1_t2_t12.shapes[0].shape});
  CHECK(r.found == 1);
  CHECK(r.violations == 0);
  CHECK_THROWS_AS(edge_to_edge_member(3), Error);
}

TEST_CASE("reflection audit") {
  const PentagonShape t7 = sample_named(7, {{"A", 86.0}});
  const auto t1_t7 = intersection_report({1, 7});
  REQUIRE(t1_t7.shapes.size() == 1);
  const auto report = reflection_audit({t7, t1_t7.shapes[0].shape, witness(14), witness(15)});
  REQUIRE(report.entries.size() == 4);
  CHECK_FALSE(report.entries[0].recipe_found);
  CHECK(report.entries[0].category == "types 7-13 outside type 1");
  CHECK(report.entries[1].recipe_found);
  CHECK_FALSE(report.entries[2].recipe_found);
  CHECK_FALSE(report.entries[3].recipe_found);
  const PentagonShape regular = pentagon_from_angles_edges({108, 108, 108, 108, 108}, {1, 1, 1, 1, 1});
  const auto sym = reflection_audit({regular});
  CHECK(sym.entries[0].line_symmetric);
  CHECK_FALSE(sym.entries[0].recipe_found);
}
