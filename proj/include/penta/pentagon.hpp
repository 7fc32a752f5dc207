#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "penta/geometry.hpp"

namespace penta {

/// Tolerance used by solvers and shape validation.
constexpr double kSolverTol = 1e-9;
/// Tolerance used for classification and congruence decisions.
constexpr double kClassifyTol = 1e-6;

/// One of the ten relabelings of a pentagon (rotations and reflections of the
/// vertex names). A rotation by r renames vertex r as vertex 0; the reflected
/// variant reverses the reading direction.
struct Labeling {
  int rotation = 0;
  bool reflected = false;

  /// Index in the source labeling of the angle that becomes angle j.
  int angle_source(int j) const;
  /// Index in the source labeling of the edge that becomes edge j.
  int edge_source(int j) const;
  Labeling inverse() const;
  /// Labeling equivalent to applying `first` and then *this.
  Labeling after(const Labeling& first) const;

  bool operator==(const Labeling&) const = default;

  static std::array<Labeling, 10> all();
};

/// A strictly convex pentagon up to similarity. Vertices V0..V4 run
/// counterclockwise, angle i sits at V_i, and edge i joins V_{i-1} to V_i.
/// Edge 0 is normalized to length 1.
class PentagonShape {
 public:
  PentagonShape() = default;

  const std::array<double, 5>& angles() const { return angles_; }
  const std::array<double, 5>& edges() const { return edges_; }
  std::array<double, 5> angles_deg() const;
  double angle(int i) const { return angles_[static_cast<std::size_t>(i)]; }
  double edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }
  double area() const;
  double mean_edge() const;

  /// Build from radians without projection. Used by code that has already
  /// solved the closure equations; still validates all invariants.
  static PentagonShape from_radians(const std::array<double, 5>& angles,
                                    const std::array<double, 5>& edges,
                                    double tol = kClassifyTol);

 private:
  std::array<double, 5> angles_{};
  std::array<double, 5> edges_{};

  friend PentagonShape make_shape_unchecked(const std::array<double, 5>&,
                                            const std::array<double, 5>&);
};

/// Construct a shape without validation (edge-0 normalization only).
PentagonShape make_shape_unchecked(const std::array<double, 5>& angles,
                                   const std::array<double, 5>& edges);

/// Headings of edges 0..4 when edge 0 points along +x.
std::array<double, 5> edge_headings(const std::array<double, 5>& angles);
/// Closure vector sum of edges_i * (cos h_i, sin h_i).
Vec2 closure_vector(const std::array<double, 5>& angles, const std::array<double, 5>& edges);

/// Validate angles (degrees) and edges, then project onto the exact closure
/// manifold. `tol` bounds the accepted angle-sum error (degrees) and the closure
/// residual relative to the perimeter.
PentagonShape pentagon_from_angles_edges(const std::array<double, 5>& angles_deg,
                                         const std::array<double, 5>& edges,
                                         double tol = kClassifyTol);

/// Extract a shape from five vertices. Clockwise input is mirrored to
/// counterclockwise while keeping the vertex names; `clockwise` reports that.
PentagonShape pentagon_from_vertices(std::span<const Vec2> points, bool* clockwise = nullptr);

/// Vertices V0..V4 with V4 at the origin and edge 0 along +x.
Polygon render_vertices(const PentagonShape& p);

PentagonShape relabel(const PentagonShape& p, const Labeling& g);

struct CanonicalKey {
  std::array<std::int64_t, 10> values{};
  auto operator<=>(const CanonicalKey&) const = default;
};

struct CanonicalPentagon {
  PentagonShape shape;
  Labeling labeling;
  CanonicalKey key;
};

CanonicalKey key_of(const PentagonShape& p);
CanonicalPentagon canonical_form(const PentagonShape& p);

/// Largest componentwise difference between the canonical representatives,
/// minimized over labelings of `p`.
double shape_distance(const PentagonShape& p, const PentagonShape& q);
bool similar(const PentagonShape& p, const PentagonShape& q, double tol = kClassifyTol);
/// True when some reflected labeling maps the shape onto itself.
bool is_line_symmetric(const PentagonShape& p, double tol = kClassifyTol);
/// Labelings that map the shape onto itself (always contains the identity).
std::vector<Labeling> self_symmetries(const PentagonShape& p, double tol = kClassifyTol);

}  // namespace penta
