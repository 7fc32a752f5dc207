#include "penta/geometry.hpp"

#include <algorithm>

namespace penta {

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a -= 2.0 * kPi;
  return a;
}

Isometry Isometry::reflect_line(Vec2 p, double angle) {
  // Mirror across the x-axis conjugated by the rotation to `angle`.
  Isometry iso{true, 2.0 * angle, {}};
  iso.translation = p - iso.apply_linear(p);
  return iso;
}

Vec2 Isometry::apply_linear(Vec2 v) const {
  if (reflected) v.y = -v.y;
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 Isometry::apply(Vec2 p) const { return apply_linear(p) + translation; }

Isometry Isometry::compose(const Isometry& other) const {
  // R(a) M^f R(b) M^g = R(a + (-1)^f b) M^(f xor g)
  Isometry out;
  out.reflected = reflected != other.reflected;
  out.rotation = wrap_angle(rotation + (reflected ? -other.rotation : other.rotation));
  out.translation = apply(other.translation);
  return out;
}

Isometry Isometry::inverse() const {
  Isometry out;
  out.reflected = reflected;
  out.rotation = reflected ? wrap_angle(rotation) : wrap_angle(-rotation);
  out.translation = -out.apply_linear(translation);
  return out;
}

bool Isometry::approx_equal(const Isometry& o, double tol) const {
  if (reflected != o.reflected) return false;
  const Vec2 probes[] = {{0, 0}, {1, 0}, {0, 1}};
  for (Vec2 p : probes) {
    if (dist(apply(p), o.apply(p)) > tol) return false;
  }
  return true;
}

double signed_area(std::span<const Vec2> poly) {
  double a = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

Vec2 centroid(std::span<const Vec2> poly) {
  const double a = signed_area(poly);
  if (std::abs(a) < 1e-300) {
    Vec2 m;
    for (Vec2 p : poly) m += p;
    return poly.empty() ? m : m / static_cast<double>(poly.size());
  }
  Vec2 c;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % n];
    const double w = cross(p, q);
    c += (p + q) * w;
  }
  return c / (6.0 * a);
}

double diameter(std::span<const Vec2> poly) {
  double d = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j) d = std::max(d, dist(poly[i], poly[j]));
  return d;
}

Polygon to_ccw(std::span<const Vec2> poly) {
  Polygon out(poly.begin(), poly.end());
  if (signed_area(out) < 0) std::reverse(out.begin(), out.end());
  return out;
}

Polygon clip_convex(std::span<const Vec2> subject, std::span<const Vec2> clipper) {
  Polygon output(subject.begin(), subject.end());
  const std::size_t m = clipper.size();
  for (std::size_t i = 0; i < m && !output.empty(); ++i) {
    const Vec2 a = clipper[i];
    const Vec2 b = clipper[(i + 1) % m];
    const Polygon input = std::move(output);
    output.clear();
    const std::size_t n = input.size();
    for (std::size_t j = 0; j < n; ++j) {
      const Vec2 p = input[j];
      const Vec2 q = input[(j + 1) % n];
      const double sp = cross(b - a, p - a);
      const double sq = cross(b - a, q - a);
      if (sp >= 0) output.push_back(p);
      if ((sp >= 0) != (sq >= 0)) {
        const double t = sp / (sp - sq);
        output.push_back(p + (q - p) * t);
      }
    }
  }
  return output;
}

double convex_overlap_area(std::span<const Vec2> a, std::span<const Vec2> b) {
  const Polygon c = clip_convex(a, b);
  if (c.size() < 3) return 0.0;
  return std::max(0.0, signed_area(c));
}

namespace {

// Largest gap along the outward normals of `a`'s edges; positive means separated.
double max_separation(std::span<const Vec2> a, std::span<const Vec2> b) {
  double best = -1e300;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = a[(i + 1) % n] - a[i];
    const double len = norm(e);
    if (len == 0) continue;
    const Vec2 normal{e.y / len, -e.x / len};
    double min_b = 1e300;
    for (Vec2 p : b) min_b = std::min(min_b, dot(normal, p - a[i]));
    best = std::max(best, min_b);
  }
  return best;
}

}  // namespace

bool convex_interiors_disjoint(std::span<const Vec2> a, std::span<const Vec2> b, double tol) {
  return max_separation(a, b) > -tol || max_separation(b, a) > -tol;
}

bool strictly_inside_convex(std::span<const Vec2> poly, Vec2 p, double tol) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = poly[(i + 1) % n] - poly[i];
    if (cross(e, p - poly[i]) / norm(e) <= tol) return false;
  }
  return true;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + ab * t);
}

std::optional<double> on_segment_interior(Vec2 p, Vec2 a, Vec2 b, double tol) {
  const Vec2 ab = b - a;
  const double len = norm(ab);
  if (len == 0) return std::nullopt;
  const double t = dot(p - a, ab) / (len * len);
  if (t * len <= tol || (1.0 - t) * len <= tol) return std::nullopt;
  if (std::abs(cross(ab, p - a)) / len > tol) return std::nullopt;
  return t;
}

void Box::expand(Vec2 p) {
  lo.x = std::min(lo.x, p.x);
  lo.y = std::min(lo.y, p.y);
  hi.x = std::max(hi.x, p.x);
  hi.y = std::max(hi.y, p.y);
}

bool Box::overlaps(const Box& o, double pad) const {
  return lo.x <= o.hi.x + pad && o.lo.x <= hi.x + pad && lo.y <= o.hi.y + pad &&
         o.lo.y <= hi.y + pad;
}

Box bounding_box(std::span<const Vec2> poly) {
  Box b;
  for (Vec2 p : poly) b.expand(p);
  return b;
}

}  // namespace penta
