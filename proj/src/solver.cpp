#include "penta/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "parallel.hpp"
#include "penta/errors.hpp"

namespace penta {

namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

Matrix jacobian_matrix(const ConstraintSystem& sys, const ShapeVector& x) {
  const std::vector<double> j = sys.jacobian(x);
  const int m = sys.equation_count();
  Matrix out(m, 10);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < 10; ++c) out(r, c) = j[static_cast<std::size_t>(r * 10 + c)];
  return out;
}

Vector residual_vector(const ConstraintSystem& sys, const ShapeVector& x) {
  const std::vector<double> f = sys.residual(x);
  return Eigen::Map<const Vector>(f.data(), static_cast<Eigen::Index>(f.size()));
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a * 0x9E3779B97F4A7C15ULL + b + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ShapeVector random_start(std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> len(0.2, 2.0);
  ShapeVector x{};
  for (;;) {
    double total = 0.0;
    for (int i = 0; i < 5; ++i) {
      x[i] = expo(rng);
      total += x[i];
    }
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
      x[i] *= 3.0 * kPi / total;
      ok = ok && x[i] < kPi;
    }
    if (ok) break;
  }
  x[5] = 1.0;
  for (int i = 6; i < 10; ++i) x[i] = len(rng);
  return x;
}

}  // namespace

void ConstraintSystem::add(const TypeConditions& t, const Labeling& g) {
  for (const AngleRelation& r : t.angle_relations) {
    LinearEquation eq;
    for (int j = 0; j < 5; ++j) eq.coeffs[g.angle_source(j)] += r.coeffs[j];
    eq.rhs = r.constant_rad();
    angle_equations.push_back(eq);
  }
  for (const EdgeRelation& r : t.edge_relations) {
    LinearEquation eq;
    for (int j = 0; j < 5; ++j) eq.coeffs[g.edge_source(j)] += r.coeffs[j];
    edge_equations.push_back(eq);
  }
}

void ConstraintSystem::add_equal_edges() {
  for (int i = 1; i < 5; ++i) {
    LinearEquation eq;
    eq.coeffs[0] = 1.0;
    eq.coeffs[i] = -1.0;
    edge_equations.push_back(eq);
  }
}

int ConstraintSystem::equation_count() const {
  return 4 + static_cast<int>(angle_equations.size() + edge_equations.size() + pins.size());
}

std::vector<double> ConstraintSystem::residual(const ShapeVector& x) const {
  std::vector<double> f;
  f.reserve(static_cast<std::size_t>(equation_count()));
  std::array<double, 5> a;
  std::array<double, 5> e;
  for (int i = 0; i < 5; ++i) {
    a[i] = x[i];
    e[i] = x[5 + i];
  }
  double sum = -3.0 * kPi;
  for (double v : a) sum += v;
  const Vec2 c = closure_vector(a, e);
  f.push_back(sum);
  f.push_back(c.x);
  f.push_back(c.y);
  f.push_back(e[0] - 1.0);
  for (const auto& eq : angle_equations) {
    double s = -eq.rhs;
    for (int j = 0; j < 5; ++j) s += eq.coeffs[j] * a[j];
    f.push_back(s);
  }
  for (const auto& eq : edge_equations) {
    double s = -eq.rhs;
    for (int j = 0; j < 5; ++j) s += eq.coeffs[j] * e[j];
    f.push_back(s);
  }
  for (const auto& [index, value] : pins) f.push_back(x[index] - value);
  return f;
}

std::vector<double> ConstraintSystem::jacobian(const ShapeVector& x) const {
  const int m = equation_count();
  std::vector<double> jac(static_cast<std::size_t>(m * 10), 0.0);
  auto at = [&](int r, int c) -> double& { return jac[static_cast<std::size_t>(r * 10 + c)]; };
  std::array<double, 5> a;
  for (int i = 0; i < 5; ++i) a[i] = x[i];
  const auto h = edge_headings(a);
  for (int j = 0; j < 5; ++j) at(0, j) = 1.0;
  for (int i = 0; i < 5; ++i) {
    const double cs = std::cos(h[i]);
    const double sn = std::sin(h[i]);
    at(1, 5 + i) = cs;
    at(2, 5 + i) = sn;
    for (int j = 0; j < i; ++j) {
      at(1, j) += x[5 + i] * sn;
      at(2, j) -= x[5 + i] * cs;
    }
  }
  at(3, 5) = 1.0;
  int row = 4;
  for (const auto& eq : angle_equations) {
    for (int j = 0; j < 5; ++j) at(row, j) = eq.coeffs[j];
    ++row;
  }
  for (const auto& eq : edge_equations) {
    for (int j = 0; j < 5; ++j) at(row, 5 + j) = eq.coeffs[j];
    ++row;
  }
  for (const auto& pin : pins) {
    at(row, pin.first) = 1.0;
    ++row;
  }
  return jac;
}

ShapeVector to_vector(const PentagonShape& p) {
  ShapeVector x;
  for (int i = 0; i < 5; ++i) {
    x[i] = p.angle(i);
    x[5 + i] = p.edge(i);
  }
  return x;
}

PentagonShape to_shape(const ShapeVector& x) {
  std::array<double, 5> a;
  std::array<double, 5> e;
  for (int i = 0; i < 5; ++i) {
    a[i] = x[i];
    e[i] = x[5 + i];
  }
  return PentagonShape::from_radians(a, e, 1e-7);
}

bool strictly_convex(const ShapeVector& x, double margin) {
  for (int i = 0; i < 5; ++i) {
    if (!(x[i] > margin && x[i] < kPi - margin)) return false;
    if (!(x[5 + i] > margin)) return false;
  }
  return true;
}

std::optional<ShapeVector> local_solve(const ConstraintSystem& sys, const ShapeVector& x0,
                                       double tol, int max_iterations) {
  Eigen::Matrix<double, 10, 1> x = Eigen::Map<const Eigen::Matrix<double, 10, 1>>(x0.data());
  auto as_array = [](const Eigen::Matrix<double, 10, 1>& v) {
    ShapeVector out;
    for (int i = 0; i < 10; ++i) out[i] = v(i);
    return out;
  };
  Vector f = residual_vector(sys, as_array(x));
  double cost = f.squaredNorm();
  double lambda = 1e-3;
  const int m = static_cast<int>(f.size());
  for (int iter = 0; iter < max_iterations; ++iter) {
    if (f.cwiseAbs().maxCoeff() < 1e-14) break;
    const Matrix jac = jacobian_matrix(sys, as_array(x));
    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      // Damped step from the stacked system [J; sqrt(lambda) I] d = [-f; 0].
      Matrix stacked(m + 10, 10);
      stacked.topRows(m) = jac;
      stacked.bottomRows(10) = std::sqrt(lambda) * Matrix::Identity(10, 10);
      Vector rhs = Vector::Zero(m + 10);
      rhs.head(m) = -f;
      const Vector step = stacked.householderQr().solve(rhs);
      const Eigen::Matrix<double, 10, 1> trial = x + step;
      const Vector ft = residual_vector(sys, as_array(trial));
      const double tcost = ft.squaredNorm();
      if (std::isfinite(tcost) && tcost < cost) {
        x = trial;
        f = ft;
        cost = tcost;
        lambda = std::max(lambda / 5.0, 1e-15);
        improved = true;
        break;
      }
      lambda *= 8.0;
    }
    if (!improved) break;
  }
  if (!(f.cwiseAbs().maxCoeff() <= tol)) return std::nullopt;
  return as_array(x);
}

int rank_at(const ConstraintSystem& sys, const ShapeVector& x) {
  const Matrix jac = jacobian_matrix(sys, x);
  Eigen::JacobiSVD<Matrix> svd(jac);
  const auto& s = svd.singularValues();
  const double cutoff = 1e-8 * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > cutoff ? 1 : 0;
  return rank;
}

int nullity_at(const ConstraintSystem& sys, const ShapeVector& x) { return 10 - rank_at(sys, x); }

int SolveResult::dimension() const {
  int d = 0;
  for (int n : nullities) d = std::max(d, n);
  return d;
}

SolveResult solve_system(const ConstraintSystem& sys, const SolverOptions& opts) {
  const int starts = std::max(1, opts.starts);
  std::vector<std::optional<ShapeVector>> found(static_cast<std::size_t>(starts));
  detail::parallel_for(starts, opts.threads, [&](int i) {
    std::mt19937_64 rng(mix_seed(opts.seed, static_cast<std::uint64_t>(i)));
    const ShapeVector x0 = random_start(rng);
    auto x = local_solve(sys, x0, opts.tol, opts.max_iterations);
    if (x && strictly_convex(*x, 1e-5)) found[static_cast<std::size_t>(i)] = x;
  });

  SolveResult result;
  result.starts = starts;
  result.dedupe_radius = opts.dedupe_radius;
  int family_points = 0;
  for (const auto& x : found) {
    if (!x) continue;
    ++result.converged;
    const int nullity = nullity_at(sys, *x);
    if (nullity > 0) {
      // Points on a positive-dimensional family are all distinct; keep a few.
      if (family_points++ >= 3) continue;
    }
    PentagonShape shape;
    try {
      shape = to_shape(*x);
    } catch (const Error&) {
      continue;
    }
    bool duplicate = false;
    for (const auto& s : result.shapes) {
      if (shape_distance(shape, s.shape) <= opts.dedupe_radius) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    result.shapes.push_back(canonical_form(shape));
    result.nullities.push_back(nullity);
  }
  return result;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Empty: return "Empty";
    case Verdict::FixedShapes: return "FixedShapes";
    case Verdict::Family: return "Family";
    case Verdict::ConvergenceFailure: return "ConvergenceFailure";
  }
  return "Unknown";
}

std::vector<std::vector<int>> named_triples() { return {{1, 2, 12}, {1, 5, 6}}; }

IntersectionReport intersection_report(const std::vector<int>& types, const SolverOptions& opts) {
  if (types.size() < 2 || types.size() > 3)
    throw Error(ErrorCode::UnknownType, "intersection queries take 2 or 3 type ids");
  std::vector<int> ids = types;
  std::sort(ids.begin(), ids.end());
  for (int id : ids) conditions_of(id);

  // The first family is read in the identity labeling; the others range over
  // all ten labelings.
  std::vector<ConstraintSystem> systems;
  const auto labelings = Labeling::all();
  const int others = static_cast<int>(ids.size()) - 1;
  int combos = 1;
  for (int k = 0; k < others; ++k) combos *= 10;
  for (int c = 0; c < combos; ++c) {
    ConstraintSystem sys;
    sys.add(conditions_of(ids[0]), Labeling{});
    int code = c;
    for (int k = 0; k < others; ++k) {
      sys.add(conditions_of(ids[static_cast<std::size_t>(k + 1)]),
              labelings[static_cast<std::size_t>(code % 10)]);
      code /= 10;
    }
    systems.push_back(std::move(sys));
  }

  std::vector<SolveResult> results(systems.size());
  detail::parallel_for(combos, opts.threads, [&](int c) {
    SolverOptions local = opts;
    local.threads = 1;
    local.seed = mix_seed(opts.seed, static_cast<std::uint64_t>(c) + 1000);
    results[static_cast<std::size_t>(c)] = solve_system(systems[static_cast<std::size_t>(c)], local);
  });

  IntersectionReport report;
  report.types = ids;
  report.systems = combos;
  report.dedupe_radius = opts.dedupe_radius;
  bool family = false;
  for (const SolveResult& r : results) {
    report.starts += r.starts;
    report.converged += r.converged;
    for (std::size_t i = 0; i < r.shapes.size(); ++i) {
      if (r.nullities[i] > 0) {
        family = true;
        report.dimension = std::max(report.dimension, r.nullities[i]);
      }
    }
  }
  std::vector<std::pair<CanonicalPentagon, int>> merged;
  for (const SolveResult& r : results) {
    for (std::size_t i = 0; i < r.shapes.size(); ++i) {
      if (family != (r.nullities[i] > 0)) continue;
      bool duplicate = false;
      for (const auto& s : merged) {
        if (shape_distance(r.shapes[i].shape, s.first.shape) <= opts.dedupe_radius) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) merged.emplace_back(r.shapes[i], r.nullities[i]);
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first.key < b.first.key; });
  if (family && merged.size() > 3) merged.resize(3);
  for (const auto& [s, n] : merged) {
    report.shapes.push_back(s);
    report.line_symmetric.push_back(is_line_symmetric(s.shape));
  }

  if (family) {
    report.verdict = Verdict::Family;
  } else if (!merged.empty()) {
    report.verdict = Verdict::FixedShapes;
  } else {
    std::vector<char> certified(systems.size(), 0);
    detail::parallel_for(combos, opts.threads, [&](int c) {
      certified[static_cast<std::size_t>(c)] =
          certify_empty(systems[static_cast<std::size_t>(c)]) ? 1 : 0;
    });
    for (char c : certified) report.certified_systems += c;
    report.verdict =
        report.certified_systems == combos ? Verdict::Empty : Verdict::ConvergenceFailure;
  }
  return report;
}

std::vector<IntersectionReport> venn_table(const SolverOptions& opts, bool include_pairs,
                                           bool include_triples) {
  std::vector<std::vector<int>> queries;
  if (include_pairs) {
    for (int a = 1; a <= 15; ++a)
      for (int b = a + 1; b <= 15; ++b) queries.push_back({a, b});
  }
  if (include_triples) {
    for (const auto& t : named_triples()) queries.push_back(t);
  }
  std::vector<IntersectionReport> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(intersection_report(q, opts));
  return out;
}

}  // namespace penta
