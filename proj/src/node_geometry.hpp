#pragma once

// Angular bookkeeping around a point of a tiling: which tiles meet there and
// which directions remain uncovered.

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "penta/geometry.hpp"
#include "penta/pentagon.hpp"
#include "penta/tiling.hpp"

namespace penta::detail {

struct Instance {
  Polygon poly;                // counterclockwise
  std::array<int, 5> label{};  // corner label of poly[k]
  Box box;
  bool reflected = false;
};

inline Instance make_instance(const PentagonShape& p, const Isometry& iso) {
  Instance inst;
  inst.poly = ccw(place(p, iso), iso.reflected);
  for (int k = 0; k < 5; ++k) inst.label[k] = iso.reflected ? 4 - k : k;
  inst.box = bounding_box(inst.poly);
  inst.reflected = iso.reflected;
  return inst;
}

struct Wedge {
  double start = 0.0;
  double width = 0.0;
  char label = '|';  // corner letter, or '|' for a straight wedge on an edge interior
  Vec2 start_point;  // far end of the start ray
  Vec2 end_point;    // far end of the end ray
};

struct Gap {
  double start = 0.0;
  double width = 0.0;
  int prev = 0;  // wedge ending at the gap start
  int next = 0;  // wedge starting at the gap end
};

struct NodeState {
  bool valid = true;  // false on overlapping wedges or a point inside a tile
  std::vector<Wedge> wedges;
  std::vector<Gap> gaps;
  std::string corners;  // sorted corner letters
  int straight = 0;
  double covered = 0.0;
  bool complete() const { return gaps.empty(); }
};

/// Wedges of every instance containing P. `len_tol` decides coincidence of
/// points; `ang_tol` the smallest gap reported.
inline NodeState node_state(Vec2 P, const std::vector<const Instance*>& insts,
                            const PentagonShape& p, double len_tol, double ang_tol) {
  constexpr double two_pi = 2.0 * kPi;
  NodeState st;
  for (const Instance* inst : insts) {
    const Box& b = inst->box;
    if (P.x < b.lo.x - len_tol || P.x > b.hi.x + len_tol || P.y < b.lo.y - len_tol ||
        P.y > b.hi.y + len_tol)
      continue;
    const Polygon& q = inst->poly;
    bool found = false;
    for (int k = 0; k < 5 && !found; ++k) {
      if (dist(P, q[k]) < len_tol) {
        Wedge w;
        w.start = wrap_angle(heading(q[(k + 1) % 5] - q[k]));
        w.width = p.angle(inst->label[k]);
        w.label = static_cast<char>('A' + inst->label[k]);
        w.start_point = q[(k + 1) % 5];
        w.end_point = q[(k + 4) % 5];
        st.wedges.push_back(w);
        found = true;
      }
    }
    for (int k = 0; k < 5 && !found; ++k) {
      const Vec2 a = q[k];
      const Vec2 c = q[(k + 1) % 5];
      if (point_segment_distance(P, a, c) < len_tol && dist(P, a) >= len_tol &&
          dist(P, c) >= len_tol) {
        Wedge w;
        w.start = wrap_angle(heading(c - a));
        w.width = kPi;
        w.start_point = c;
        w.end_point = a;
        st.wedges.push_back(w);
        found = true;
      }
    }
    if (!found && strictly_inside_convex(q, P, len_tol)) {
      st.valid = false;
      return st;
    }
  }
  std::sort(st.wedges.begin(), st.wedges.end(),
            [](const Wedge& a, const Wedge& b) { return a.start < b.start; });
  const int n = static_cast<int>(st.wedges.size());
  for (const auto& w : st.wedges) {
    st.covered += w.width;
    if (w.label == '|') {
      ++st.straight;
    } else {
      st.corners.push_back(w.label);
    }
  }
  std::sort(st.corners.begin(), st.corners.end());
  if (st.covered > two_pi + ang_tol * n) {
    st.valid = false;
    return st;
  }
  for (int i = 0; i < n; ++i) {
    const Wedge& w = st.wedges[i];
    const double next_start = i + 1 < n ? st.wedges[i + 1].start : st.wedges[0].start + two_pi;
    const double span = next_start - w.start;
    if (w.width > span + ang_tol) {
      st.valid = false;
      return st;
    }
    const double gap = span - w.width;
    if (gap > ang_tol) st.gaps.push_back({w.start + w.width, gap, i, (i + 1) % n});
  }
  return st;
}

}  // namespace penta::detail
