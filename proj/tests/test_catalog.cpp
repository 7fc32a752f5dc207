#include <random>

#include "doctest.h"
#include "penta/catalog.hpp"
#include "penta/errors.hpp"
#include "support.hpp"

using namespace penta;

namespace {

int matrix_rank(std::vector<std::array<double, 5>> rows) {
  int rank = 0;
  for (int col = 0; col < 5 && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (std::abs(rows[r][col]) > 1e-12 && (pivot < 0 || std::abs(rows[r][col]) > std::abs(rows[pivot][col])))
        pivot = r;
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank) continue;
      const double f = rows[r][col] / rows[rank][col];
      for (int c = 0; c < 5; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

// Free parameters left after the angle sum, the two closure equations, the
// scale and the independent linear relations.
int expected_dof(const TypeConditions& t) {
  std::vector<std::array<double, 5>> angles{{1, 1, 1, 1, 1}};
  for (const auto& a : t.angle_relations) {
    std::array<double, 5> row;
    for (int i = 0; i < 5; ++i) row[i] = a.coeffs[i];
    angles.push_back(row);
  }
  std::vector<std::array<double, 5>> edges;
  for (const auto& e : t.edge_relations) {
    std::array<double, 5> row;
    for (int i = 0; i < 5; ++i) row[i] = e.coeffs[i];
    edges.push_back(row);
  }
  return std::max(0, 10 - 1 - 2 - matrix_rank(angles) - matrix_rank(edges));
}

// Direct evaluation of a condition set under the identity labeling.
double direct_residual(const TypeConditions& t, const PentagonShape& p) {
  double r = 0;
  for (const auto& a : t.angle_relations) {
    double s = 0;
    for (int i = 0; i < 5; ++i) s += a.coeffs[i] * p.angles_deg()[i];
    r = std::max(r, std::abs(s - a.constant_deg) * testing_support::kPiRef / 180);
  }
  for (const auto& e : t.edge_relations) {
    double s = 0;
    for (int i = 0; i < 5; ++i) s += e.coeffs[i] * p.edge(i);
    r = std::max(r, std::abs(s) / p.mean_edge());
  }
  return r;
}

}  // namespace

TEST_CASE("condition parser") {
  const TypeConditions t = parse_conditions(0, "2B+A=360, 2E+C=360; a=b, b=c, c=d");
  REQUIRE(t.angle_relations.size() == 2);
  REQUIRE(t.edge_relations.size() == 3);
  CHECK(t.angle_relations[0].coeffs == std::array<int, 5>{1, 2, 0, 0, 0});
  CHECK(t.angle_relations[0].constant_deg == 360);
  CHECK(t.edge_relations[2].coeffs == std::array<int, 5>{0, 0, 1, -1, 0});
  CHECK_THROWS_AS(parse_conditions(0, "A+B"), Error);
  CHECK_THROWS_AS(parse_conditions(0, "A+b=1"), Error);
  CHECK_THROWS_AS(parse_conditions(0, "a=2"), Error);
  CHECK_THROWS_AS(conditions_of(16), Error);
}

TEST_CASE("degrees of freedom match the count of independent relations") {
  for (int t = 1; t <= 15; ++t) {
    CAPTURE(t);
    CHECK(degrees_of_freedom(t) == expected_dof(conditions_of(t)));
    CHECK(static_cast<int>(free_parameters(t).size()) == degrees_of_freedom(t));
  }
}

TEST_CASE("each witness satisfies its conditions directly and belongs to that type only") {
  for (int t = 1; t <= 15; ++t) {
    CAPTURE(t);
    const PentagonShape& w = witness(t);
    CHECK(direct_residual(conditions_of(t), w) < 1e-9);
    CHECK(testing_support::closure_residual(w) < 1e-9);
    CHECK(membership(w) == std::vector<int>{t});
  }
}

TEST_CASE("Type 14 angle C has the closed form") {
  const double expected = std::acos((3 * std::sqrt(57.0) - 17) / 16);
  CHECK(std::abs(witness(14).angle(2) - expected) < 1e-9);
  CHECK(std::abs(sample(14, {}).angle(2) - expected) < 1e-9);
}

TEST_CASE("Type 7 sample at A = 86 degrees belongs to Type 7 only") {
  const PentagonShape p = sample_named(7, {{"A", 86.0}});
  CHECK(p.angles_deg()[0] == doctest::Approx(86.0).epsilon(1e-9));
  CHECK(membership(p) == std::vector<int>{7});
}

TEST_CASE("Type 1 sample keeps A + B + C = 360 exactly") {
  const PentagonShape p = sample_named(1, {{"A", 100.0}, {"B", 120.0}});
  const auto d = p.angles_deg();
  CHECK(d[0] + d[1] + d[2] == doctest::Approx(360.0).epsilon(1e-12));
  CHECK(d[0] == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("sampling rejects fixed or unknown parameters") {
  CHECK_THROWS_AS(sample_named(3, {{"A", 100.0}}), Error);
  CHECK_THROWS_AS(sample(14, {1.0}), Error);
}

TEST_CASE("membership is invariant under relabeling") {
  std::mt19937_64 rng(41);
  for (int t = 1; t <= 15; ++t) {
    for (int n = 0; n < 4; ++n) {
      const auto p = testing_support::random_member(t, rng, 3.0);
      if (!p) continue;
      const auto m = membership(*p);
      CHECK(std::find(m.begin(), m.end(), t) != m.end());
      CHECK(testing_support::closure_residual(*p) < 1e-9);
      for (const Labeling& g : Labeling::all()) CHECK(membership(relabel(*p, g)) == m);
    }
  }
  for (int n = 0; n < 200; ++n) {
    const PentagonShape p = testing_support::random_pentagon(rng);
    const auto m = membership(p);
    for (const Labeling& g : Labeling::all()) CHECK(membership(relabel(p, g)) == m);
  }
}

TEST_CASE("regular pentagon belongs to no family") {
  const PentagonShape p = pentagon_from_angles_edges({108, 108, 108, 108, 108}, {1, 1, 1, 1, 1});
  CHECK(membership(p).empty());
  CHECK(residual_table(p).size() == 15);
}

TEST_CASE("four notations of the Type 7 conditions define the same family") {
  const std::array<const char*, 4> notations = {
      // as catalogued
      "2B+A=360, 2E+C=360; a=b, b=c, c=d",
      // vertex names shifted by two positions
      "2D+C=360, 2B+E=360; c=d, d=e, e=a",
      // mirror image: vertex i becomes vertex -i and edge i becomes edge 1-i
      "2E+A=360, 2B+D=360; b=a, a=e, e=d",
      // first relation rewritten with the angle sum
      "C+D+E=B+180, 2E+C=360; a=b, b=c, c=d",
  };
  std::vector<TypeConditions> sets;
  for (const char* n : notations) sets.push_back(parse_conditions(7, n));
  std::mt19937_64 rng(43);
  std::vector<PentagonShape> shapes;
  for (int n = 0; n < 1000; ++n) shapes.push_back(testing_support::random_pentagon(rng));
  for (int n = 0; n < 100; ++n) {
    if (auto p = testing_support::random_member(7, rng, 4.0)) shapes.push_back(*p);
  }
  int positives = 0;
  int disagreements = 0;
  for (const auto& p : shapes) {
    const bool ref = satisfies(sets[0], p);
    positives += ref;
    for (const auto& s : sets) disagreements += satisfies(s, p) != ref;
  }
  CHECK(disagreements == 0);
  CHECK(positives >= 50);
}

TEST_CASE("equilateral members") {
  const auto r7 = equilateral_member(7);
  CHECK(r7.kind == SolutionKind::FixedShapes);
  CHECK(r7.shapes.size() == 1);
  const auto r9 = equilateral_member(9);
  CHECK(r9.kind == SolutionKind::None);
  const auto r8 = equilateral_member(8);
  REQUIRE(r8.kind == SolutionKind::FixedShapes);
  REQUIRE(r8.shapes.size() == 1);
  const auto m = membership(r8.shapes[0]);
  CHECK(std::find(m.begin(), m.end(), 2) != m.end());
  for (int i = 0; i < 5; ++i) CHECK(r8.shapes[0].edge(i) == doctest::Approx(1.0).epsilon(1e-9));
}
