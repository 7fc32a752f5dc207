#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "penta/pentagon.hpp"

namespace penta {

/// sum_i coeffs[i] * angle_i = constant.
struct AngleRelation {
  std::array<int, 5> coeffs{};
  double constant_deg = 0.0;
  double constant_rad() const { return deg_to_rad(constant_deg); }
};

/// sum_i coeffs[i] * edge_i = 0.
struct EdgeRelation {
  std::array<int, 5> coeffs{};
};

struct TypeConditions {
  int id = 0;
  std::vector<AngleRelation> angle_relations;
  std::vector<EdgeRelation> edge_relations;
  /// Human-readable form, e.g. "A+B+C=360; a=d".
  std::string text;
};

/// Condition set for one of the fifteen type families. Throws UnknownType.
const TypeConditions& conditions_of(int type_id);
/// Parse a condition string such as "2B+A=360, 2E+C=360; a=b, b=c, c=d".
TypeConditions parse_conditions(int id, const std::string& text);

/// Largest relation residual of `p` read in labeling `g` (angles in radians,
/// edges relative to the mean edge).
double relation_residual(const TypeConditions& t, const PentagonShape& p, const Labeling& g);

struct TypeResidual {
  int type = 0;
  double residual = 0.0;
  Labeling labeling;
};

/// Best residual over all labelings.
TypeResidual best_residual(const TypeConditions& t, const PentagonShape& p);
bool satisfies(const TypeConditions& t, const PentagonShape& p, double tol = kClassifyTol);
/// Types whose conditions hold under some labeling of `p`.
std::vector<int> membership(const PentagonShape& p, double tol = kClassifyTol);
std::vector<TypeResidual> residual_table(const PentagonShape& p);

/// Stored member of the family (membership is exactly that type).
const PentagonShape& witness(int type_id);
/// Solution-manifold dimension after the similarity quotient.
int degrees_of_freedom(int type_id);
/// Unknown names that act as free parameters of `sample`, in order
/// ("A".."E" for angles, "a".."e" for edges).
std::vector<std::string> free_parameters(int type_id);

/// Family member with the given free-parameter values (degrees for angles).
/// Missing trailing values default to the witness. Throws NoSolution or
/// ConvergenceFailure.
PentagonShape sample(int type_id, const std::vector<double>& params, std::uint64_t seed = 0);
/// As `sample`, with explicitly named parameters such as {"A", 86}.
PentagonShape sample_named(int type_id, const std::map<std::string, double>& params,
                           std::uint64_t seed = 0);

enum class SolutionKind { None, FixedShapes, Family };

struct EquilateralResult {
  SolutionKind kind = SolutionKind::None;
  std::vector<PentagonShape> shapes;
  int dimension = 0;
};

/// Members of the family with five equal edges. Throws ConvergenceFailure
/// when nothing is found and emptiness cannot be certified.
EquilateralResult equilateral_member(int type_id, int starts = 200, std::uint64_t seed = 1);

}  // namespace penta
