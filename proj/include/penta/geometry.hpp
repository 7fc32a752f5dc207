#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace penta {

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 unit_dir(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline double heading(Vec2 v) { return std::atan2(v.y, v.x); }
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

/// Wrap an angle into [0, 2pi).
double wrap_angle(double a);

/// Plane isometry x -> R(rotation) * M * x + translation, where M mirrors across
/// the x-axis when `reflected` is set.
struct Isometry {
  bool reflected = false;
  double rotation = 0.0;
  Vec2 translation{};

  static Isometry identity() { return {}; }
  static Isometry translate(Vec2 t) { return {false, 0.0, t}; }
  static Isometry rotate(double angle) { return {false, angle, {}}; }
  static Isometry mirror_x() { return {true, 0.0, {}}; }
  /// Reflection across the line through `p` with direction angle `angle`.
  static Isometry reflect_line(Vec2 p, double angle);

  Vec2 apply(Vec2 p) const;
  Vec2 apply_linear(Vec2 v) const;
  /// (*this)(other(x)).
  Isometry compose(const Isometry& other) const;
  Isometry inverse() const;
  double determinant() const { return reflected ? -1.0 : 1.0; }
  bool approx_equal(const Isometry& o, double tol) const;
};

using Polygon = std::vector<Vec2>;

double signed_area(std::span<const Vec2> poly);
Vec2 centroid(std::span<const Vec2> poly);
double diameter(std::span<const Vec2> poly);
/// Return a counterclockwise copy of the polygon.
Polygon to_ccw(std::span<const Vec2> poly);
/// Intersection of two convex counterclockwise polygons (Sutherland-Hodgman).
Polygon clip_convex(std::span<const Vec2> subject, std::span<const Vec2> clipper);
double convex_overlap_area(std::span<const Vec2> a, std::span<const Vec2> b);
/// Separating-axis test on convex counterclockwise polygons: true when the
/// interiors are disjoint up to `tol` penetration.
bool convex_interiors_disjoint(std::span<const Vec2> a, std::span<const Vec2> b, double tol);
/// Strictly inside a convex counterclockwise polygon by at least `tol`.
bool strictly_inside_convex(std::span<const Vec2> poly, Vec2 p, double tol);
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
/// Parameter t in (0,1) if p lies on the open segment within `tol`.
std::optional<double> on_segment_interior(Vec2 p, Vec2 a, Vec2 b, double tol);

struct Box {
  Vec2 lo{1e300, 1e300};
  Vec2 hi{-1e300, -1e300};
  void expand(Vec2 p);
  bool overlaps(const Box& o, double pad) const;
  bool empty() const { return lo.x > hi.x || lo.y > hi.y; }
};

Box bounding_box(std::span<const Vec2> poly);

}  // namespace penta
