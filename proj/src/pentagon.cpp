#include "penta/pentagon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "penta/errors.hpp"

namespace penta {

namespace {

int mod5(int v) { return ((v % 5) + 5) % 5; }

constexpr double kConvexMargin = 1e-9;
constexpr double kKeyQuantum = 1e-7;

// Newton projection onto {angle sum = 3pi, closure = 0} with minimal-norm steps.
void project_to_closure(std::array<double, 5>& angles, std::array<double, 5>& edges) {
  for (int iter = 0; iter < 50; ++iter) {
    const Vec2 c = closure_vector(angles, edges);
    double sum = -3.0 * kPi;
    for (double a : angles) sum += a;
    Eigen::Vector3d g(sum, c.x, c.y);
    if (g.norm() < 1e-15) break;
    const auto h = edge_headings(angles);
    Eigen::Matrix<double, 3, 10> jac = Eigen::Matrix<double, 3, 10>::Zero();
    for (int j = 0; j < 5; ++j) jac(0, j) = 1.0;
    // Heading h_i depends on angles j < i with derivative -1.
    for (int i = 0; i < 5; ++i) {
      const double cs = std::cos(h[i]);
      const double sn = std::sin(h[i]);
      jac(1, 5 + i) = cs;
      jac(2, 5 + i) = sn;
      for (int j = 0; j < i; ++j) {
        jac(1, j) += edges[i] * sn;
        jac(2, j) -= edges[i] * cs;
      }
    }
    const Eigen::Matrix3d jjt = jac * jac.transpose();
    const Eigen::Matrix<double, 10, 1> dx = -jac.transpose() * jjt.ldlt().solve(g);
    for (int j = 0; j < 5; ++j) {
      angles[j] += dx(j);
      edges[j] += dx(5 + j);
    }
  }
}

void check_ranges(const std::array<double, 5>& angles, const std::array<double, 5>& edges) {
  for (double a : angles) {
    if (!(a > kConvexMargin && a < kPi - kConvexMargin))
      throw Error(ErrorCode::NonConvex, "interior angle outside (0, 180) degrees");
  }
  double longest = 0.0;
  for (double e : edges) longest = std::max(longest, e);
  for (double e : edges) {
    if (!(e > 1e-9 * longest) || !std::isfinite(e))
      throw Error(ErrorCode::DegenerateEdge, "edge length must be positive");
  }
}

}  // namespace

int Labeling::angle_source(int j) const {
  return reflected ? mod5(rotation - j) : mod5(j + rotation);
}

int Labeling::edge_source(int j) const {
  return reflected ? mod5(rotation - j + 1) : mod5(j + rotation);
}

Labeling Labeling::inverse() const {
  if (reflected) return *this;
  return {mod5(-rotation), false};
}

Labeling Labeling::after(const Labeling& first) const {
  for (const Labeling& g : all()) {
    bool match = true;
    for (int j = 0; j < 5 && match; ++j) {
      match = g.angle_source(j) == first.angle_source(angle_source(j));
    }
    if (match) return g;
  }
  return {};
}

std::array<Labeling, 10> Labeling::all() {
  std::array<Labeling, 10> out;
  for (int r = 0; r < 5; ++r) {
    out[static_cast<std::size_t>(r)] = {r, false};
    out[static_cast<std::size_t>(5 + r)] = {r, true};
  }
  return out;
}

std::array<double, 5> PentagonShape::angles_deg() const {
  std::array<double, 5> out;
  for (int i = 0; i < 5; ++i) out[i] = rad_to_deg(angles_[i]);
  return out;
}

double PentagonShape::area() const {
  const Polygon v = render_vertices(*this);
  return signed_area(v);
}

double PentagonShape::mean_edge() const {
  double s = 0.0;
  for (double e : edges_) s += e;
  return s / 5.0;
}

PentagonShape make_shape_unchecked(const std::array<double, 5>& angles,
                                   const std::array<double, 5>& edges) {
  PentagonShape p;
  p.angles_ = angles;
  const double scale = edges[0];
  for (int i = 0; i < 5; ++i) p.edges_[i] = edges[i] / scale;
  return p;
}

std::array<double, 5> edge_headings(const std::array<double, 5>& angles) {
  std::array<double, 5> h{};
  for (int i = 1; i < 5; ++i) h[i] = h[i - 1] + kPi - angles[i - 1];
  return h;
}

Vec2 closure_vector(const std::array<double, 5>& angles, const std::array<double, 5>& edges) {
  const auto h = edge_headings(angles);
  Vec2 s;
  for (int i = 0; i < 5; ++i) s += unit_dir(h[i]) * edges[i];
  return s;
}

PentagonShape PentagonShape::from_radians(const std::array<double, 5>& angles,
                                          const std::array<double, 5>& edges, double tol) {
  check_ranges(angles, edges);
  double sum = 0.0;
  for (double a : angles) sum += a;
  if (std::abs(rad_to_deg(sum) - 540.0) > tol)
    throw Error(ErrorCode::BadAngleSum, "interior angles must sum to 540 degrees");
  double perimeter = 0.0;
  for (double e : edges) perimeter += e;
  if (norm(closure_vector(angles, edges)) > tol * perimeter)
    throw Error(ErrorCode::NotClosed, "edge chain does not close");
  std::array<double, 5> a = angles;
  std::array<double, 5> e = edges;
  for (double& v : e) v /= perimeter;
  project_to_closure(a, e);
  check_ranges(a, e);
  return make_shape_unchecked(a, e);
}

PentagonShape pentagon_from_angles_edges(const std::array<double, 5>& angles_deg,
                                         const std::array<double, 5>& edges, double tol) {
  for (double a : angles_deg) {
    if (!(a > 0.0 && a < 180.0)) throw Error(ErrorCode::NonConvex, "angle outside (0, 180)");
  }
  std::array<double, 5> rad;
  for (int i = 0; i < 5; ++i) rad[i] = deg_to_rad(angles_deg[i]);
  return PentagonShape::from_radians(rad, edges, tol);
}

PentagonShape pentagon_from_vertices(std::span<const Vec2> points, bool* clockwise) {
  if (points.size() != 5) throw Error(ErrorCode::ParseError, "a pentagon needs five vertices");
  Polygon v(points.begin(), points.end());
  const bool cw = signed_area(v) < 0;
  if (cw) {
    for (Vec2& q : v) q.x = -q.x;
  }
  if (clockwise) *clockwise = cw;
  std::array<double, 5> edges;
  double longest = 0.0;
  for (int i = 0; i < 5; ++i) {
    edges[i] = dist(v[i], v[(i + 4) % 5]);
    longest = std::max(longest, edges[i]);
  }
  for (double e : edges) {
    if (e <= 1e-9 * longest) throw Error(ErrorCode::DegenerateEdge, "coincident vertices");
  }
  std::array<double, 5> angles;
  double total_turn = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Vec2 in = v[i] - v[(i + 4) % 5];
    const Vec2 out = v[(i + 1) % 5] - v[i];
    const double turn = std::atan2(cross(in, out), dot(in, out));
    if (turn <= kConvexMargin) throw Error(ErrorCode::NonConvex, "vertex is not strictly convex");
    angles[i] = kPi - turn;
    total_turn += turn;
  }
  if (std::abs(total_turn - 2.0 * kPi) > 1e-6)
    throw Error(ErrorCode::NonConvex, "vertices do not form a simple convex polygon");
  return PentagonShape::from_radians(angles, edges, 1e-7);
}

Polygon render_vertices(const PentagonShape& p) {
  const auto h = edge_headings(p.angles());
  Polygon v(5);
  Vec2 cur{0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    cur += unit_dir(h[i]) * p.edge(i);
    v[i] = cur;
  }
  v[4] = Vec2{0.0, 0.0};
  return v;
}

PentagonShape relabel(const PentagonShape& p, const Labeling& g) {
  std::array<double, 5> a;
  std::array<double, 5> e;
  for (int j = 0; j < 5; ++j) {
    a[j] = p.angle(g.angle_source(j));
    e[j] = p.edge(g.edge_source(j));
  }
  return make_shape_unchecked(a, e);
}

CanonicalKey key_of(const PentagonShape& p) {
  CanonicalKey k;
  for (int i = 0; i < 5; ++i) {
    k.values[i] = std::llround(p.angle(i) / kKeyQuantum);
    k.values[5 + i] = std::llround(p.edge(i) / kKeyQuantum);
  }
  return k;
}

namespace {

bool raw_less(const PentagonShape& a, const PentagonShape& b) {
  for (int i = 0; i < 5; ++i) {
    if (a.angle(i) != b.angle(i)) return a.angle(i) < b.angle(i);
  }
  for (int i = 0; i < 5; ++i) {
    if (a.edge(i) != b.edge(i)) return a.edge(i) < b.edge(i);
  }
  return false;
}

double max_diff(const PentagonShape& a, const PentagonShape& b) {
  double d = 0.0;
  for (int i = 0; i < 5; ++i) {
    d = std::max(d, std::abs(a.angle(i) - b.angle(i)));
    d = std::max(d, std::abs(a.edge(i) - b.edge(i)));
  }
  return d;
}

}  // namespace

CanonicalPentagon canonical_form(const PentagonShape& p) {
  CanonicalPentagon best{relabel(p, Labeling{}), Labeling{}, {}};
  best.key = key_of(best.shape);
  for (const Labeling& g : Labeling::all()) {
    PentagonShape q = relabel(p, g);
    CanonicalKey k = key_of(q);
    if (k < best.key || (k == best.key && raw_less(q, best.shape))) {
      best = {q, g, k};
    }
  }
  return best;
}

double shape_distance(const PentagonShape& p, const PentagonShape& q) {
  const PentagonShape target = canonical_form(q).shape;
  double best = 1e300;
  for (const Labeling& g : Labeling::all()) best = std::min(best, max_diff(relabel(p, g), target));
  return best;
}

bool similar(const PentagonShape& p, const PentagonShape& q, double tol) {
  return shape_distance(p, q) <= tol;
}

std::vector<Labeling> self_symmetries(const PentagonShape& p, double tol) {
  std::vector<Labeling> out;
  for (const Labeling& g : Labeling::all()) {
    if (max_diff(relabel(p, g), p) <= tol) out.push_back(g);
  }
  return out;
}

bool is_line_symmetric(const PentagonShape& p, double tol) {
  for (const Labeling& g : self_symmetries(p, tol)) {
    if (g.reflected) return true;
  }
  return false;
}

}  // namespace penta
