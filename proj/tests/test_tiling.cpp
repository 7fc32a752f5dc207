#include <random>

#include "doctest.h"
#include "penta/analysis.hpp"
#include "penta/catalog.hpp"
#include "penta/errors.hpp"
#include "penta/tiling.hpp"
#include "support.hpp"

using namespace penta;

namespace {

// Pairwise overlap and window cover measured by brute force over all pairs.
void check_patch(const Patch& patch, double tol = 1e-6) {
  const ValidationReport v = validate_patch(patch);
  REQUIRE(v.window_area > 0);
  CHECK(v.normalized_overlap() < tol);
  CHECK(v.normalized_defect() < tol);
  double area = 0;
  for (const auto& t : patch.tiles) area += std::abs(testing_support::shoelace(t.vertices));
  CHECK(area >= v.window_area);
}

}  // namespace

TEST_CASE("transcribed node sets sum correctly on the witnesses") {
  for (int t = 1; t <= 15; ++t) {
    CAPTURE(t);
    CHECK_NOTHROW(check_node_set(witness(t), node_relations(t)));
    CHECK_NOTHROW(check_node_set(witness(t), edge_to_edge_relations(t)));
    // Every transcribed composition appears among the numeric ones.
    const auto numeric = numeric_node_set(witness(t), true);
    for (const auto& c : node_relations(t).full)
      CHECK(std::find(numeric.full.begin(), numeric.full.end(), c) != numeric.full.end());
  }
  CHECK_THROWS_AS(check_node_set(witness(7), {{"AAA"}, {}}), Error);
}

TEST_CASE("Type 7 node set is ABB, CEE and ACDD") {
  const auto n = node_relations(7);
  CHECK(n.full == std::vector<std::string>{"ABB", "CEE", "ACDD"});
  CHECK_FALSE(n.allows_flat());
}

TEST_CASE("numeric node set of the regular pentagon is empty") {
  const PentagonShape p = pentagon_from_angles_edges({108, 108, 108, 108, 108}, {1, 1, 1, 1, 1});
  CHECK(numeric_node_set(p).full.empty());
  CHECK_THROWS_AS(assemble_recipe(p, numeric_node_set(p)), Error);
}

TEST_CASE("representative recipes tile without gaps or overlaps") {
  const std::array<int, 15> unit_sizes = {2, 4, 3, 4, 6, 4, 8, 8, 8, 6, 8, 8, 8, 6, 12};
  for (int t = 1; t <= 15; ++t) {
    CAPTURE(t);
    const TilingRecipe r = representative_recipe(t, witness(t));
    CHECK(r.unit.size() == static_cast<std::size_t>(unit_sizes[t - 1]));
    // Unit area equals the lattice cell area.
    CHECK(std::abs(cross(r.lattice[0], r.lattice[1])) ==
          doctest::Approx(r.unit.size() * witness(t).area()).epsilon(1e-9));
    check_patch(generate_patch(r, 2, 2));
  }
}

TEST_CASE("representative recipes for sampled parameters") {
  std::mt19937_64 rng(53);
  for (int t = 1; t <= 13; ++t) {
    CAPTURE(t);
    const auto p = testing_support::random_member(t, rng, 3.0);
    REQUIRE(p);
    check_patch(generate_patch(representative_recipe(t, *p), 2, 2));
  }
}

TEST_CASE("relabeled input gives the same tiling") {
  const PentagonShape p = relabel(witness(8), Labeling{3, true});
  const TilingRecipe r = representative_recipe(8, p);
  CHECK(r.unit.size() == 8);
  check_patch(generate_patch(r, 2, 2));
}

TEST_CASE("wrong family is rejected") {
  CHECK_THROWS_AS(representative_recipe(7, witness(8)), Error);
  CHECK_THROWS_AS(belt_tiling(witness(7), BeltFamily::Type6, thue_morse(4), 2, 4), Error);
  CHECK_THROWS_AS(belt_tiling(witness(1), BeltFamily::Type1EqualAD, thue_morse(4), 2, 4), Error);
}

TEST_CASE("edge-to-edge relation sets give edge-to-edge tilings") {
  for (int t : {1, 2, 4, 5, 6, 7, 8, 9}) {
    CAPTURE(t);
    const PentagonShape p = edge_to_edge_member(t);
    const TilingRecipe r = assemble_recipe(p, edge_to_edge_relations(t));
    const Patch patch = generate_patch(r, 2, 2);
    check_patch(patch);
    CHECK(is_edge_to_edge(patch));
  }
}

TEST_CASE("assembly without reflections") {
  AssemblyOptions opts;
  opts.allow_reflections = false;
  const TilingRecipe r = assemble_recipe(witness(1), node_relations(1), opts);
  for (const auto& u : r.unit) CHECK_FALSE(u.reflected);
  CHECK_THROWS_AS(assemble_recipe(witness(7), node_relations(7), opts), Error);
}

TEST_CASE("Thue-Morse prefix") {
  const std::vector<bool> expect = {false, true, true, false, true, false, false, true};
  CHECK(thue_morse(8) == expect);
}

TEST_CASE("belt tilings are valid for every connection pattern") {
  const PentagonShape t1 = edge_to_edge_member(1);
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<bool> c;
    for (int k = 0; k < 6; ++k) c.push_back(rng() % 2 == 1);
    CAPTURE(trial);
    check_patch(belt_tiling(t1, BeltFamily::Type1EqualAD, c, 3, 6));
    check_patch(belt_tiling(witness(6), BeltFamily::Type6, c, 3, 6));
  }
  CHECK_THROWS_AS(belt_tiling(t1, BeltFamily::Type1EqualAD, thue_morse(3), 3, 4), Error);
}

TEST_CASE("Type 6 belts for sampled parameters") {
  for (double a : {110.0, 117.0, 125.0}) {
    CAPTURE(a);
    const PentagonShape p = sample_named(6, {{"A", a}});
    std::vector<bool> alt;
    for (int k = 0; k < 8; ++k) alt.push_back(k % 2 == 0);
    check_patch(belt_tiling(p, BeltFamily::Type6, alt, 3, 8));
  }
}
