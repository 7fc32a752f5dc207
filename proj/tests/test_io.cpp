#include <random>

#include "doctest.h"
#include "penta/errors.hpp"
#include "penta/io.hpp"
#include "support.hpp"

using namespace penta;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    pentagon_from_json(parse_json(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::BadAngleSum;
}

}  // namespace

TEST_CASE("pentagon round trip is byte stable and exact") {
  std::mt19937_64 rng(71);
  for (int n = 0; n < 200; ++n) {
    const PentagonShape p = testing_support::random_pentagon(rng);
    const std::string once = dump(to_json(p));
    const PentagonShape q = pentagon_from_json(parse_json(once));
    CHECK(dump(to_json(q)) == once);
    for (int i = 0; i < 5; ++i) {
      CHECK(q.angle(i) == p.angle(i));
      CHECK(q.edge(i) == p.edge(i));
    }
  }
}

TEST_CASE("three pentagon input forms describe the same shape") {
  const PentagonShape w = witness(10);
  const json deg = {{"angles_deg", w.angles_deg()}, {"edges", w.edges()}};
  json rad = {{"edges", w.edges()}};
  rad["angles_rad"] = w.angles();
  json verts = {{"vertices", json::array()}};
  for (Vec2 v : render_vertices(w)) verts["vertices"].push_back({v.x * 2 + 1, v.y * 2 - 3});
  for (const json& j : {deg, rad, verts}) CHECK(similar(pentagon_from_json(j), w, 1e-9));
}

TEST_CASE("malformed input raises ParseError") {
  CHECK(parse_code("{") == ErrorCode::ParseError);
  CHECK(parse_code("[1, 2]") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"angles_deg": [108, 108, 108, 108], "edges": [1, 1, 1, 1, 1]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"vertices": [[0, 0], [1, 0], [1, 1]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"angles_deg": "x", "edges": [1, 1, 1, 1, 1]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"angles_deg": [108, 108, 108, 108, 109], "edges": [1, 1, 1, 1, 1]})") ==
        ErrorCode::BadAngleSum);
}

TEST_CASE("recipe round trip") {
  for (int t : {1, 7, 15}) {
    CAPTURE(t);
    const TilingRecipe r = representative_recipe(t, witness(t));
    const std::string once = dump(to_json(r));
    const TilingRecipe s = recipe_from_json(parse_json(once));
    CHECK(dump(to_json(s)) == once);
    REQUIRE(s.unit.size() == r.unit.size());
    for (std::size_t i = 0; i < r.unit.size(); ++i) CHECK(s.unit[i].approx_equal(r.unit[i], 0.0));
    // The decoded recipe still tiles.
    const ValidationReport v = validate_patch(generate_patch(s, 1, 1));
    CHECK(v.normalized_overlap() < 1e-6);
    CHECK(v.normalized_defect() < 1e-6);
  }
}

TEST_CASE("analysis and venn round trips") {
  const AnalysisReport a = analyze(generate_patch(representative_recipe(8, witness(8)), 2, 2));
  const std::string once = dump(to_json(a));
  CHECK(dump(to_json(analysis_from_json(parse_json(once)))) == once);
  CHECK(parse_json(once)["corona_classes"] == 2);

  SolverOptions opts;
  opts.starts = 60;
  const std::vector<VennCell> cells = {venn_cell(intersection_report({1, 7}, opts)),
                                       venn_cell(intersection_report({3, 14}, opts))};
  const std::string venn = dump(to_json(cells));
  CHECK(dump(to_json(venn_from_json(parse_json(venn)))) == venn);
  const json v = parse_json(venn);
  CHECK(v.contains("1,7"));
  CHECK(v["3,14"]["verdict"] == "Empty");
}

TEST_CASE("classify output") {
  SolverOptions opts;
  opts.starts = 60;
  const auto cell = intersection_report({1, 7}, opts);
  REQUIRE(cell.shapes.size() == 1);
  const json j = classify_json(cell.shapes[0].shape);
  CHECK(j["membership"] == json::array({1, 7}));
  CHECK(j["residuals"].size() == 15);
  const json r = classify_json(pentagon_from_angles_edges({108, 108, 108, 108, 108}, {1, 1, 1, 1, 1}));
  CHECK(r["membership"].empty());
}

TEST_CASE("catalog export lists fifteen types") {
  const json c = catalog_json();
  REQUIRE(c.size() == 15);
  CHECK(c[13]["dof"] == 0);
  CHECK(c[0]["dof"] == 5);
}

TEST_CASE("svg output marks reflected tiles and is deterministic") {
  const Patch p = generate_patch(representative_recipe(7, witness(7)), 1, 1);
  const std::string svg = to_svg(p);
  CHECK(svg == to_svg(p));
  CHECK(svg.find("<svg") != std::string::npos);
  int reflected = 0;
  for (const auto& t : p.tiles) reflected += t.iso.reflected;
  REQUIRE(reflected > 0);
  std::size_t marks = 0;
  for (std::size_t at = svg.find(">*</text>"); at != std::string::npos; at = svg.find(">*</text>", at + 1)) ++marks;
  CHECK(marks == static_cast<std::size_t>(reflected));
  std::size_t paths = 0;
  for (std::size_t at = svg.find("class=\"tile"); at != std::string::npos; at = svg.find("class=\"tile", at + 1)) ++paths;
  CHECK(paths == p.tiles.size());

  SvgOptions plain;
  plain.mark_reflected = false;
  CHECK(to_svg(p, plain).find(">*</text>") == std::string::npos);
}
