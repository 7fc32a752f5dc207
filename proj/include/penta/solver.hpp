#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "penta/catalog.hpp"
#include "penta/pentagon.hpp"

namespace penta {

/// Unknown vector layout: five angles (radians) followed by five edges.
using ShapeVector = std::array<double, 10>;

struct LinearEquation {
  std::array<double, 5> coeffs{};
  double rhs = 0.0;
};

/// Linear angle and edge equations over the raw (unlabeled) unknowns. The angle
/// sum, the two closure equations and the edge-0 pin are always implied.
struct ConstraintSystem {
  std::vector<LinearEquation> angle_equations;
  std::vector<LinearEquation> edge_equations;
  /// Extra equations x[index] = value (angles in radians, edges relative to edge 0).
  std::vector<std::pair<int, double>> pins;

  /// Add the conditions of `t` read through labeling `g`.
  void add(const TypeConditions& t, const Labeling& g);
  void add_equal_edges();
  int equation_count() const;
  static constexpr int kUnknowns = 10;

  std::vector<double> residual(const ShapeVector& x) const;
  /// Row-major Jacobian, equation_count() rows by 10 columns.
  std::vector<double> jacobian(const ShapeVector& x) const;
};

struct SolverOptions {
  int starts = 200;
  std::uint64_t seed = 1;
  double tol = kSolverTol;
  int max_iterations = 100;
  double dedupe_radius = 1e-5;
  /// Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
};

ShapeVector to_vector(const PentagonShape& p);
PentagonShape to_shape(const ShapeVector& x);

/// Damped least-squares iteration from `x0`. Returns the converged point when
/// the residual drops below `tol`.
std::optional<ShapeVector> local_solve(const ConstraintSystem& sys, const ShapeVector& x0,
                                       double tol = kSolverTol, int max_iterations = 100);
/// Dimension of the Jacobian null space at `x`.
int nullity_at(const ConstraintSystem& sys, const ShapeVector& x);
/// Rank of the Jacobian at `x`.
int rank_at(const ConstraintSystem& sys, const ShapeVector& x);
bool strictly_convex(const ShapeVector& x, double margin = 1e-6);

struct SolveResult {
  std::vector<CanonicalPentagon> shapes;
  /// Null-space dimension at each reported shape.
  std::vector<int> nullities;
  int starts = 0;
  int converged = 0;
  double dedupe_radius = 0.0;
  int dimension() const;
};

SolveResult solve_system(const ConstraintSystem& sys, const SolverOptions& opts = {});

struct CertificateOptions {
  /// Boxes that cannot be excluded are split until their angle intervals are
  /// narrower than this; a box still undecided at that width fails the proof.
  double resolution_deg = 2.0;
  int max_boxes = 200000;
};

/// Interval-subdivision proof that the system has no strictly convex solution.
/// Returns false when the proof does not go through (which proves nothing).
bool certify_empty(const ConstraintSystem& sys, const CertificateOptions& opts = {});

enum class Verdict { Empty, FixedShapes, Family, ConvergenceFailure };
const char* to_string(Verdict v);

struct IntersectionReport {
  std::vector<int> types;
  Verdict verdict = Verdict::ConvergenceFailure;
  std::vector<CanonicalPentagon> shapes;
  std::vector<bool> line_symmetric;
  int dimension = 0;
  int starts = 0;
  int converged = 0;
  int systems = 0;
  int certified_systems = 0;
  double dedupe_radius = 0.0;
};

/// Intersection of the listed type families (2 or 3 ids).
IntersectionReport intersection_report(const std::vector<int>& types,
                                       const SolverOptions& opts = {});

/// All pairs of types followed by the named triples.
std::vector<IntersectionReport> venn_table(const SolverOptions& opts = {},
                                           bool include_pairs = true,
                                           bool include_triples = true);
/// Triples with a nonempty common part named in the reference diagram.
std::vector<std::vector<int>> named_triples();

}  // namespace penta
