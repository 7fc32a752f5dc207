// Witness shapes, parameterized sampling and equilateral members of each family.

#include <algorithm>
#include <cmath>
#include <mutex>

#include "penta/catalog.hpp"
#include "penta/errors.hpp"
#include "penta/solver.hpp"

namespace penta {

namespace {

struct RawWitness {
  std::array<double, 5> angles_deg;
  std::array<double, 5> edges;
};

// One member of each family that belongs to no other family. Values are
// rounded; they are polished against the conditions on first use.
const std::array<RawWitness, 15> kRawWitnesses = {{
    {{126.222758051152, 121.042976346512, 112.734265602336, 103.862706453796, 76.137293546204},
     {1, 0.633645512305, 0.398884679201, 1.003344381999, 0.905445516611}},
    {{142.672089067202, 60.78590010221, 104.905158983906, 156.542010830588, 75.094841016094},
     {1, 1.714978836569, 1.636819508809, 1, 0.939003081993}},
    {{120, 93.027423531192, 120, 120, 86.972576468808},
     {1, 1, 0.523730577079, 1.153089004547, 0.629358427468}},
    {{120.419707187323, 90, 148.182965191961, 90, 91.397327620716},
     {1, 0.602591979942, 0.602591979942, 0.805350126815, 0.805350126815}},
    {{60, 108.09554072146, 137.007966660653, 120, 114.896492617888},
     {1, 1, 0.440234335018, 0.449351245255, 0.449351245255}},
    {{117.297754764655, 61.551820566719, 119.598604101907, 118.448179433281, 123.103641133438},
     {1, 1.976762184816, 1.976762184816, 1, 1}},
    {{86, 137, 123.816602249686, 75.091698875157, 118.091698875157}, {1, 1, 1, 1, 1.645320475387}},
    {{79.195962703696, 120.41775177862, 119.164496442761, 82.443578149848, 138.778210925076},
     {1, 0.885404204529, 0.885404204529, 0.885404204529, 0.885404204529}},
    {{111.03446776473, 77.997712752332, 137.93106447054, 66.073510024796, 146.963244987602},
     {1, 1.590657576263, 1.590657576263, 1.590657576263, 1.590657576263}},
    {{90, 103.436968609964, 128.281515695018, 141.718484304982, 76.563031390036},
     {1, 1, 0.323299883301, 0.67301593458, 0.676700116699}},
    {{90, 150.584540361445, 58.83091927711, 119.415459638555, 121.16908072289},
     {1, 5.391998084166, 2.265602026548, 4.265602026548, 4.265602026548}},
    {{90, 152.561579894674, 54.876840210651, 117.438420105326, 125.123159789349},
     {1, 1.387835558206, 1.186222485177, 2, 0.813777514823}},
    {{100.849741253336, 90, 100.849741253336, 158.300517493329, 90},
     {1, 2.758138602035, 0.793890190538, 2, 1}},
    {{90, 145.338336261504, 69.323327476993, 124.661663738496, 110.676672523007},
     {1, 2.693700493466, 1, 2, 2}},
    {{150, 60, 135, 105, 90}, {1, 2, 1, 1.931851652578, 1}},
}};

const char* kUnknownNames[10] = {"A", "B", "C", "D", "E", "a", "b", "c", "d", "e"};

ConstraintSystem type_system(int type_id) {
  ConstraintSystem sys;
  sys.add(conditions_of(type_id), Labeling{});
  return sys;
}

struct FamilyData {
  PentagonShape witness;
  int dof = 0;
  std::vector<int> free_unknowns;
};

FamilyData build_family(int type_id) {
  const ConstraintSystem sys = type_system(type_id);
  const RawWitness& raw = kRawWitnesses[static_cast<std::size_t>(type_id - 1)];
  ShapeVector x0;
  for (int i = 0; i < 5; ++i) {
    x0[i] = deg_to_rad(raw.angles_deg[i]);
    x0[5 + i] = raw.edges[i] / raw.edges[0];
  }
  const auto x = local_solve(sys, x0, 1e-13, 100);
  if (!x) throw Error(ErrorCode::ConvergenceFailure, "witness polish failed");
  FamilyData data;
  data.witness = to_shape(*x);
  data.dof = nullity_at(sys, *x);
  // Greedy choice of free unknowns in the order A..E, b..e.
  ConstraintSystem aug = sys;
  int rank = rank_at(aug, *x);
  for (int k = 0; k < 10 && rank < 10; ++k) {
    if (k == 5) continue;  // edge 0 is the scale pin
    ConstraintSystem trial = aug;
    trial.pins.emplace_back(k, (*x)[k]);
    const int r = rank_at(trial, *x);
    if (r > rank) {
      aug = trial;
      rank = r;
      data.free_unknowns.push_back(k);
    }
  }
  return data;
}

const FamilyData& family(int type_id) {
  conditions_of(type_id);
  static std::once_flag once;
  static std::vector<FamilyData> families;
  std::call_once(once, [] {
    for (int t = 1; t <= 15; ++t) families.push_back(build_family(t));
  });
  return families[static_cast<std::size_t>(type_id - 1)];
}

int unknown_index(const std::string& name) {
  for (int k = 0; k < 10; ++k) {
    if (name == kUnknownNames[k]) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown parameter name '" + name + "'");
}

}  // namespace

const PentagonShape& witness(int type_id) { return family(type_id).witness; }

int degrees_of_freedom(int type_id) { return family(type_id).dof; }

std::vector<std::string> free_parameters(int type_id) {
  std::vector<std::string> out;
  for (int k : family(type_id).free_unknowns) out.emplace_back(kUnknownNames[k]);
  return out;
}

PentagonShape sample(int type_id, const std::vector<double>& params, std::uint64_t seed) {
  const auto names = free_parameters(type_id);
  if (params.size() > names.size()) {
    throw Error(ErrorCode::NoSolution, "type " + std::to_string(type_id) + " has " +
                                           std::to_string(names.size()) + " free parameters");
  }
  std::map<std::string, double> named;
  for (std::size_t i = 0; i < params.size(); ++i) named[names[i]] = params[i];
  return sample_named(type_id, named, seed);
}

PentagonShape sample_named(int type_id, const std::map<std::string, double>& params,
                           std::uint64_t seed) {
  const FamilyData& fam = family(type_id);
  const ConstraintSystem base = type_system(type_id);
  const ShapeVector w = to_vector(fam.witness);

  // Requested pins first, then witness defaults for the remaining freedom.
  std::vector<std::pair<int, double>> targets;
  ConstraintSystem aug = base;
  int rank = rank_at(aug, w);
  for (const auto& [name, value] : params) {
    const int k = unknown_index(name);
    if (k == 5) throw Error(ErrorCode::NoSolution, "edge a is the unit of length");
    const double v = k < 5 ? deg_to_rad(value) : value;
    ConstraintSystem trial = aug;
    trial.pins.emplace_back(k, w[k]);
    const int r = rank_at(trial, w);
    if (r <= rank)
      throw Error(ErrorCode::NoSolution, "parameter " + name + " is fixed by the type conditions");
    aug = trial;
    rank = r;
    targets.emplace_back(k, v);
  }
  for (int k : fam.free_unknowns) {
    if (rank >= 10) break;
    ConstraintSystem trial = aug;
    trial.pins.emplace_back(k, w[k]);
    const int r = rank_at(trial, w);
    if (r > rank) {
      aug = trial;
      rank = r;
      targets.emplace_back(k, w[k]);
    }
  }

  // Continuation from the witness to the requested parameter values.
  auto pinned = [&](double t) {
    ConstraintSystem sys = base;
    for (const auto& [k, v] : targets) sys.pins.emplace_back(k, w[k] + (v - w[k]) * t);
    return sys;
  };
  ShapeVector x = w;
  double t = 0.0;
  double step = 0.125;
  bool left_region = false;
  while (t < 1.0) {
    const double next = std::min(1.0, t + step);
    const auto y = local_solve(pinned(next), x, 1e-12, 60);
    if (y && strictly_convex(*y, 1e-9)) {
      x = *y;
      t = next;
      step = std::min(0.25, step * 2.0);
      continue;
    }
    if (y) left_region = true;
    step *= 0.5;
    if (step < 1e-5) break;
  }
  if (t >= 1.0) return to_shape(x);

  // Fall back to seeded multistart on the fully pinned system.
  SolverOptions opts;
  opts.starts = 200;
  opts.seed = seed;
  opts.threads = 1;
  const SolveResult result = solve_system(pinned(1.0), opts);
  if (!result.shapes.empty()) {
    const PentagonShape* best = nullptr;
    double best_d = 1e300;
    for (const auto& s : result.shapes) {
      // Pick the solution in the labeling that satisfies the pins, nearest the witness.
      const double d = shape_distance(s.shape, fam.witness);
      if (d < best_d) {
        best_d = d;
        best = &s.shape;
      }
    }
    for (const Labeling& g : Labeling::all()) {
      const PentagonShape q = relabel(*best, g);
      const auto f = pinned(1.0).residual(to_vector(q));
      double worst = 0.0;
      for (double v : f) worst = std::max(worst, std::abs(v));
      if (worst < 1e-9) return q;
    }
  }
  if (left_region)
    throw Error(ErrorCode::NoSolution, "parameters lie outside the convex region of the family");
  throw Error(ErrorCode::ConvergenceFailure, "sampling did not converge");
}

EquilateralResult equilateral_member(int type_id, int starts, std::uint64_t seed) {
  ConstraintSystem sys = type_system(type_id);
  sys.add_equal_edges();
  SolverOptions opts;
  opts.starts = starts;
  opts.seed = seed;
  const SolveResult r = solve_system(sys, opts);
  EquilateralResult out;
  if (!r.shapes.empty()) {
    out.dimension = r.dimension();
    out.kind = out.dimension > 0 ? SolutionKind::Family : SolutionKind::FixedShapes;
    for (const auto& s : r.shapes) out.shapes.push_back(s.shape);
    return out;
  }
  if (!certify_empty(sys))
    throw Error(ErrorCode::ConvergenceFailure, "no equilateral member found and none excluded");
  return out;
}

}  // namespace penta
