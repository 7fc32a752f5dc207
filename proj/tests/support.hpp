#pragma once

// Generators and independent oracles shared by the test programs.

#include <array>
#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "penta/catalog.hpp"
#include "penta/errors.hpp"
#include "penta/geometry.hpp"
#include "penta/pentagon.hpp"

namespace testing_support {

using penta::PentagonShape;
using penta::Vec2;

inline constexpr double kPiRef = 3.14159265358979323846;

/// Random strictly convex pentagon: five points on an ellipse at sorted random
/// angles, rejected when a corner is too flat or an edge too short.
inline PentagonShape random_pentagon(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::array<double, 5> t;
    for (double& x : t) x = 2 * kPiRef * u(rng);
    std::sort(t.begin(), t.end());
    const double ax = 0.6 + 0.8 * u(rng);
    std::vector<Vec2> pts;
    for (double x : t) pts.push_back({ax * std::cos(x), std::sin(x)});
    try {
      PentagonShape p = penta::pentagon_from_vertices(pts);
      bool ok = true;
      for (int i = 0; i < 5; ++i) ok = ok && p.angle(i) < kPiRef * 0.97 && p.edge(i) > 0.05;
      if (ok) return p;
    } catch (const penta::Error&) {
    }
  }
}

/// Vertices walked from the angles and edges with headings accumulated by
/// exterior angles. Independent of the library's own walk.
inline std::vector<Vec2> walk(const std::array<double, 5>& angles, const std::array<double, 5>& edges) {
  std::vector<Vec2> v;
  Vec2 cur{0, 0};
  double h = 0;
  for (int i = 0; i < 5; ++i) {
    cur = cur + Vec2{std::cos(h), std::sin(h)} * edges[static_cast<std::size_t>(i)];
    v.push_back(cur);
    h += kPiRef - angles[static_cast<std::size_t>(i)];
  }
  return v;
}

/// |closing gap| / perimeter of the walk.
inline double closure_residual(const PentagonShape& p) {
  const auto v = walk(p.angles(), p.edges());
  double per = 0;
  for (double e : p.edges()) per += e;
  return std::hypot(v.back().x, v.back().y) / per;
}

/// Interior angle at each vertex of a counterclockwise polygon via atan2.
inline std::array<double, 5> interior_angles(const std::vector<Vec2>& v) {
  std::array<double, 5> out{};
  for (int i = 0; i < 5; ++i) {
    const Vec2 a = v[static_cast<std::size_t>((i + 4) % 5)];
    const Vec2 b = v[static_cast<std::size_t>(i)];
    const Vec2 c = v[static_cast<std::size_t>((i + 1) % 5)];
    const Vec2 x = a - b, y = c - b;
    out[static_cast<std::size_t>(i)] = std::atan2(std::abs(x.x * y.y - x.y * y.x), x.x * y.x + x.y * y.y);
  }
  return out;
}

/// Shoelace area.
inline double shoelace(const std::vector<Vec2>& v) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % v.size()];
    s += a.x * b.y - a.y * b.x;
  }
  return s / 2;
}

/// Family member with every free angle moved by a random amount, or nothing
/// when the move leaves the convex region.
inline std::optional<PentagonShape> random_member(int type_id, std::mt19937_64& rng, double spread_deg) {
  const PentagonShape w = penta::witness(type_id);
  std::map<std::string, double> params;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto deg = w.angles_deg();
  for (const auto& name : penta::free_parameters(type_id)) {
    if (name[0] >= 'A' && name[0] <= 'E')
      params[name] = deg[static_cast<std::size_t>(name[0] - 'A')] + spread_deg * u(rng);
  }
  try {
    return penta::sample_named(type_id, params, 1);
  } catch (const penta::Error&) {
    return std::nullopt;
  }
}

}  // namespace testing_support
