// Emptiness proof for a constraint system by interval subdivision.
//
// The angles live on an affine subspace theta = theta0 + N s. Edge vectors lie
// in the polyhedral cone {e >= 0, R e = 0}, so every candidate edge vector is a
// nonnegative combination of the cone's extreme rays. A box of s values is
// infeasible when one direction w makes w . (sum_i r_i u_i(theta)) positive for
// every extreme ray r and every theta in the box, because the closure sum can
// then never vanish.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "penta/solver.hpp"

namespace penta {

namespace {

// Angles within this distance of 0 or pi are not strictly convex.
constexpr double kAngleMargin = 1e-9;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

double cos_lower(Interval x) {
  if (x.hi - x.lo >= 2.0 * kPi) return -1.0;
  // Is some odd multiple of pi inside [lo, hi]?
  const double k = std::ceil((x.lo - kPi) / (2.0 * kPi));
  if (kPi + 2.0 * kPi * k <= x.hi) return -1.0;
  return std::min(std::cos(x.lo), std::cos(x.hi));
}

std::vector<Eigen::VectorXd> cone_rays(const Eigen::MatrixXd& r) {
  std::vector<Eigen::VectorXd> rays;
  for (int mask = 1; mask < 32; ++mask) {
    std::vector<int> support;
    for (int i = 0; i < 5; ++i) {
      if (mask & (1 << i)) support.push_back(i);
    }
    const int k = static_cast<int>(support.size());
    Eigen::VectorXd v(k);
    if (r.rows() == 0) {
      if (k != 1) continue;
      v(0) = 1.0;
    } else {
      Eigen::MatrixXd sub(r.rows(), k);
      for (int c = 0; c < k; ++c) sub.col(c) = r.col(support[static_cast<std::size_t>(c)]);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeFullV);
      const auto& s = svd.singularValues();
      int rank = 0;
      for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > 1e-10 ? 1 : 0;
      if (k - rank != 1) continue;
      v = svd.matrixV().col(k - 1);
    }
    if (v.sum() < 0) v = -v;
    if (v.minCoeff() <= 1e-12) continue;
    Eigen::VectorXd full = Eigen::VectorXd::Zero(5);
    for (int c = 0; c < k; ++c) full(support[static_cast<std::size_t>(c)]) = v(c);
    rays.push_back(full / full.sum());
  }
  return rays;
}


// True when one direction w has w . sum_i r_i u(h_i) > 0 for every ray r and
// every heading vector inside the interval box [h_lo, h_hi].
bool rays_separated(const std::vector<Eigen::VectorXd>& rays, const std::array<double, 5>& h_lo,
                    const std::array<double, 5>& h_hi, const std::vector<double>& directions) {
  std::vector<double> dirs = directions;
  {
    // Aim at the middle of the arc spanned by the ray images at the center.
    std::vector<double> ang;
    for (const auto& ray : rays) {
      Vec2 v;
      for (int i = 0; i < 5; ++i) v += unit_dir(0.5 * (h_lo[i] + h_hi[i])) * ray(i);
      ang.push_back(wrap_angle(heading(v)));
    }
    std::sort(ang.begin(), ang.end());
    double best_gap = -1.0;
    double best_start = 0.0;
    for (std::size_t i = 0; i < ang.size(); ++i) {
      const double next = i + 1 < ang.size() ? ang[i + 1] : ang[0] + 2.0 * kPi;
      if (next - ang[i] > best_gap) {
        best_gap = next - ang[i];
        best_start = ang[i];
      }
    }
    dirs.insert(dirs.begin(), best_start + best_gap + 0.5 * (2.0 * kPi - best_gap));
  }
  for (double phi : dirs) {
    bool all_positive = true;
    for (const auto& ray : rays) {
      double lower = 0.0;
      for (int i = 0; i < 5; ++i) {
        if (ray(i) == 0.0) continue;
        lower += ray(i) * cos_lower({h_lo[i] - phi, h_hi[i] - phi});
      }
      if (lower <= 1e-12) {
        all_positive = false;
        break;
      }
    }
    if (all_positive) return true;
  }
  return false;
}

// With the angles fixed, the edge vectors form the kernel of the edge
// relations stacked with the closure rows. True when that kernel has no
// strictly positive vector.
bool no_positive_kernel(const Eigen::MatrixXd& r, const std::array<double, 5>& h) {
  Eigen::MatrixXd a(r.rows() + 2, 5);
  a.topRows(r.rows()) = r;
  for (int i = 0; i < 5; ++i) {
    a(r.rows(), i) = std::cos(h[i]);
    a(r.rows() + 1, i) = std::sin(h[i]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > 1e-9 ? 1 : 0;
  const int k = 5 - rank;
  if (k == 0) return true;
  const Eigen::MatrixXd z = svd.matrixV().rightCols(k);
  if (k == 1) {
    Eigen::VectorXd v = z.col(0);
    if (v.sum() < 0) v = -v;
    return v.minCoeff() <= 1e-9;
  }
  if (k == 2) {
    // Some c with z.row(i) . c > 0 for all i exists iff the rows fit in an
    // open half-plane.
    std::vector<double> ang;
    for (int i = 0; i < 5; ++i) {
      const Vec2 row{z(i, 0), z(i, 1)};
      if (norm(row) < 1e-9) return true;
      ang.push_back(wrap_angle(heading(row)));
    }
    std::sort(ang.begin(), ang.end());
    double gap = 0.0;
    for (std::size_t i = 0; i < ang.size(); ++i) {
      const double next = i + 1 < ang.size() ? ang[i + 1] : ang[0] + 2.0 * kPi;
      gap = std::max(gap, next - ang[i]);
    }
    return gap <= kPi + 1e-9;
  }
  return false;
}

// Find a solution of the relaxed system (nonnegative edges, closed angle
// range) near the box. Returns its s coordinates when it sits on the boundary
// of the convex region and is an isolated root; nullopt otherwise.
std::optional<Eigen::VectorXd> isolate_boundary_solution(const ConstraintSystem& sys,
                                                         const Eigen::VectorXd& theta0,
                                                         const Eigen::MatrixXd& basis,
                                                         const Eigen::VectorXd& mid,
                                                         const Eigen::VectorXd& half) {
  const Eigen::VectorXd theta = theta0 + basis * mid;
  for (int attempt = 0; attempt < 40; ++attempt) {
    ShapeVector x{};
    for (int i = 0; i < 5; ++i) x[i] = theta(i);
    x[5] = 1.0;
    for (int i = 6; i < 10; ++i) x[i] = 0.1 + 0.1 * ((attempt * 7 + i * 3) % 19);
    const auto y = local_solve(sys, x, 1e-12, 200);
    if (!y) continue;
    Eigen::VectorXd t(5);
    for (int i = 0; i < 5; ++i) t(i) = (*y)[i];
    const Eigen::VectorXd s = basis.transpose() * (t - theta0);
    if (((s - mid).cwiseAbs() - 9.0 * half).maxCoeff() > 1e-6) continue;
    bool boundary = false;
    bool admissible = true;
    for (int i = 0; i < 5; ++i) {
      if (t(i) < -1e-7 || t(i) > kPi + 1e-7 || (*y)[5 + i] < -1e-7) admissible = false;
      if (t(i) < 1e-7 || t(i) > kPi - 1e-7 || (*y)[5 + i] < 1e-7) boundary = true;
    }
    if (!admissible) continue;
    if (!boundary) return std::nullopt;  // a genuine convex solution
    if (nullity_at(sys, *y) != 0) return std::nullopt;
    return s;
  }
  return std::nullopt;
}

}  // namespace

bool certify_empty(const ConstraintSystem& sys, const CertificateOptions& opts) {
  // Angle system: angle sum, relations and angle pins.
  std::vector<std::pair<Eigen::VectorXd, double>> rows;
  rows.emplace_back(Eigen::VectorXd::Ones(5), 3.0 * kPi);
  for (const auto& eq : sys.angle_equations) {
    rows.emplace_back(Eigen::Map<const Eigen::VectorXd>(eq.coeffs.data(), 5), eq.rhs);
  }
  std::vector<Eigen::VectorXd> edge_rows;
  for (const auto& eq : sys.edge_equations) {
    edge_rows.push_back(Eigen::Map<const Eigen::VectorXd>(eq.coeffs.data(), 5));
  }
  for (const auto& [index, value] : sys.pins) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(5);
    if (index < 5) {
      row(index) = 1.0;
      rows.emplace_back(row, value);
    } else {
      row(index - 5) = 1.0;
      row(0) -= value;
      edge_rows.push_back(row);
    }
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), 5);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = rows[i].first.transpose();
    b(static_cast<Eigen::Index>(i)) = rows[i].second;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV | Eigen::ComputeThinU);
  const Eigen::VectorXd theta0 = svd.solve(b);
  if ((m * theta0 - b).norm() > 1e-9) return true;  // inconsistent angle relations
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-10 ? 1 : 0;
  const int d = 5 - rank;
  const Eigen::MatrixXd basis = svd.matrixV().rightCols(d);

  Eigen::MatrixXd r(static_cast<Eigen::Index>(edge_rows.size()), 5);
  for (std::size_t i = 0; i < edge_rows.size(); ++i)
    r.row(static_cast<Eigen::Index>(i)) = edge_rows[i].transpose();
  const std::vector<Eigen::VectorXd> rays = cone_rays(r);
  if (rays.empty()) return true;

  // Headings are affine in s: h_i = h0_i + H_i . s.
  Eigen::VectorXd h0(5);
  Eigen::MatrixXd hs = Eigen::MatrixXd::Zero(5, d);
  for (int i = 0; i < 5; ++i) {
    h0(i) = i * kPi;
    for (int j = 0; j < i; ++j) {
      h0(i) -= theta0(j);
      hs.row(i) -= basis.row(j);
    }
  }

  const double radius = theta0.norm() + std::sqrt(5.0) * kPi;
  const double floor_width = deg_to_rad(opts.resolution_deg);
  std::vector<double> directions;
  for (int k = 0; k < 72; ++k) directions.push_back(k * kPi / 36.0);

  if (d == 0) {
    for (int i = 0; i < 5; ++i) {
      if (theta0(i) <= kAngleMargin || theta0(i) >= kPi - kAngleMargin) return true;
    }
    std::array<double, 5> h;
    for (int i = 0; i < 5; ++i) h[i] = h0(i);
    if (rays_separated(rays, h, h, directions)) return true;
    return no_positive_kernel(r, h);
  }

  struct Box {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
    double floor;
    int isolations;
  };
  std::vector<Box> stack;
  stack.push_back({Eigen::VectorXd::Constant(d, -radius), Eigen::VectorXd::Constant(d, radius),
                   floor_width, 0});
  int processed = 0;

  while (!stack.empty()) {
    if (++processed > opts.max_boxes) return false;
    const Box box = stack.back();
    stack.pop_back();
    const Eigen::VectorXd mid = 0.5 * (box.lo + box.hi);
    const Eigen::VectorXd half = 0.5 * (box.hi - box.lo);

    bool outside = false;
    double width = 0.0;
    for (int i = 0; i < 5 && !outside; ++i) {
      const double c = theta0(i) + basis.row(i).dot(mid);
      const double rad = basis.row(i).cwiseAbs().dot(half);
      if (c + rad <= kAngleMargin || c - rad >= kPi - kAngleMargin) outside = true;
      width = std::max(width, 2.0 * rad);
    }
    if (outside) continue;

    std::array<double, 5> h_lo;
    std::array<double, 5> h_hi;
    for (int i = 0; i < 5; ++i) {
      const double c = h0(i) + hs.row(i).dot(mid);
      const double rad = hs.row(i).cwiseAbs().dot(half) + 1e-12;
      h_lo[i] = c - rad;
      h_hi[i] = c + rad;
    }
    if (rays_separated(rays, h_lo, h_hi, directions)) continue;

    if (width <= box.floor) {
      // The box may hold a degenerate limit of the relaxation (a zero edge or
      // a straight angle). Isolate it and keep proving on the rest of the box.
      if (box.isolations >= 4) return false;
      const auto center = isolate_boundary_solution(sys, theta0, basis, mid, half);
      if (!center) {
        stack.push_back({box.lo, box.hi, 0.25 * box.floor, box.isolations + 1});
        continue;
      }
      const double rho = 1e-6;
      Eigen::VectorXd lo = box.lo;
      Eigen::VectorXd hi = box.hi;
      if ((((*center) - mid).cwiseAbs() - half).maxCoeff() > rho) {
        // The limit point lies in a neighbouring box; keep refining this one.
        stack.push_back({lo, hi, 0.0, box.isolations + 1});
        continue;
      }
      for (int k = 0; k < d; ++k) {
        const double c_lo = std::max(lo(k), (*center)(k)-rho);
        const double c_hi = std::min(hi(k), (*center)(k) + rho);
        if (c_lo > lo(k)) {
          Eigen::VectorXd piece_hi = hi;
          piece_hi(k) = c_lo;
          stack.push_back({lo, piece_hi, 0.0, box.isolations + 1});
        }
        if (c_hi < hi(k)) {
          Eigen::VectorXd piece_lo = lo;
          piece_lo(k) = c_hi;
          stack.push_back({piece_lo, hi, 0.0, box.isolations + 1});
        }
        lo(k) = c_lo;
        hi(k) = c_hi;
      }
      continue;
    }

    Eigen::Index axis = 0;
    half.maxCoeff(&axis);
    Box left = box;
    Box right = box;
    left.hi(axis) = mid(axis);
    right.lo(axis) = mid(axis);
    stack.push_back(left);
    stack.push_back(right);
  }
  return true;
}

}  // namespace penta
