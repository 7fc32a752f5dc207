#include <algorithm>
#include <random>
#include <span>

#include "penta/analysis.hpp"
#include "penta/catalog.hpp"
#include "penta/errors.hpp"
#include "penta/solver.hpp"

namespace penta {

namespace {

constexpr std::array<int, 8> kEdgeToEdgeTypes = {1, 2, 4, 5, 6, 7, 8, 9};

// Extra edge relations under which a type tiles edge to edge.
const char* edge_to_edge_conditions(int type_id) {
  switch (type_id) {
    case 1: return "A+B+C=360; a=d";
    case 2: return "A+B+D=360; a=d, c=e";
    default: return nullptr;
  }
}

bool intersects(const std::vector<int>& m, std::span<const int> types) {
  return std::any_of(m.begin(), m.end(),
                     [&](int t) { return std::find(types.begin(), types.end(), t) != types.end(); });
}

ConstraintSystem edge_to_edge_system(int type_id) {
  ConstraintSystem sys;
  sys.add(conditions_of(type_id), Labeling{});
  if (const char* extra = edge_to_edge_conditions(type_id))
    sys.add(parse_conditions(type_id, extra), Labeling{});
  return sys;
}

// Member near the witness with the free angles moved by up to `spread` degrees.
std::optional<PentagonShape> perturbed_member(int type_id, double spread, std::mt19937_64* rng) {
  ConstraintSystem sys = edge_to_edge_system(type_id);
  const ShapeVector w = to_vector(witness(type_id));
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  for (const auto& name : free_parameters(type_id)) {
    if (name[0] < 'A' || name[0] > 'E') continue;
    const int k = name[0] - 'A';
    const double shift = rng ? spread * jitter(*rng) : 0.0;
    sys.pins.emplace_back(k, w[static_cast<std::size_t>(k)] + deg_to_rad(shift));
  }
  const auto x = local_solve(sys, w, 1e-12, 100);
  if (!x || !strictly_convex(*x, 1e-4)) return std::nullopt;
  try {
    PentagonShape p = to_shape(*x);
    const auto m = membership(p);
    if (std::find(m.begin(), m.end(), type_id) != m.end()) return p;
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

PentagonShape edge_to_edge_member(int type_id) {
  if (std::find(kEdgeToEdgeTypes.begin(), kEdgeToEdgeTypes.end(), type_id) == kEdgeToEdgeTypes.end())
    throw Error(ErrorCode::WrongFamily, "type " + std::to_string(type_id) + " has no edge-to-edge member");
  const auto p = perturbed_member(type_id, 0.0, nullptr);
  if (!p) throw Error(ErrorCode::ConvergenceFailure, "edge-to-edge member did not converge");
  return *p;
}

Theorem1Report theorem1_audit(const std::vector<PentagonShape>& shapes,
                              const AssemblyOptions& opts) {
  Theorem1Report report;
  for (const auto& p : shapes) {
    Theorem1Entry e;
    e.shape = p;
    e.membership = membership(p);
    const NodeRelationSet nodes = numeric_node_set(p, false);
    if (nodes.full.empty()) {
      e.note = "no corner combination sums to 360 degrees";
    } else {
      try {
        const TilingRecipe r = assemble_recipe(p, nodes, opts);
        e.recipe_found = true;
        if (!is_edge_to_edge(generate_patch(r, 1, 1))) {
          e.recipe_found = false;
          e.note = "assembled tiling is not edge to edge";
        }
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NoRecipeFound) throw;
        e.note = "no edge-to-edge recipe within the search bound";
      }
    }
    if (e.recipe_found) {
      ++report.found;
      e.violation = !intersects(e.membership, kEdgeToEdgeTypes);
      if (e.violation) {
        ++report.violations;
        e.note = "edge-to-edge tiling outside types 1, 2 and 4 to 9";
      }
    } else {
      ++report.inconclusive;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<PentagonShape> theorem1_samples(int count, std::uint64_t seed) {
  std::vector<PentagonShape> out;
  std::mt19937_64 rng(seed);
  for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
    const int type_id = kEdgeToEdgeTypes[static_cast<std::size_t>(i) % kEdgeToEdgeTypes.size()];
    std::optional<PentagonShape> p;
    for (double spread : {8.0, 4.0, 2.0, 1.0}) {
      if ((p = perturbed_member(type_id, spread, &rng))) break;
    }
    if (p) {
      out.push_back(*p);
    } else if (i > 20 * count + 100) {
      throw Error(ErrorCode::ConvergenceFailure, "could not draw edge-to-edge samples");
    }
  }
  return out;
}

ReflectionReport reflection_audit(const std::vector<PentagonShape>& shapes,
                                  const AssemblyOptions& opts) {
  constexpr std::array<int, 7> seven_to_thirteen = {7, 8, 9, 10, 11, 12, 13};
  ReflectionReport report;
  AssemblyOptions direct = opts;
  direct.allow_reflections = false;
  for (const auto& p : shapes) {
    ReflectionEntry e;
    e.shape = p;
    e.membership = membership(p);
    const bool in_t1 = std::find(e.membership.begin(), e.membership.end(), 1) != e.membership.end();
    if (e.membership == std::vector<int>{2}) {
      e.category = "type 2 only";
    } else if (!in_t1 && intersects(e.membership, seven_to_thirteen)) {
      e.category = "types 7-13 outside type 1";
    } else if (in_t1) {
      e.category = "type 1 member (control)";
    } else {
      e.category = "types 14 and 15";
    }
    e.line_symmetric = is_line_symmetric(p);
    if (!e.line_symmetric) {
      try {
        e.recipe = assemble_recipe(p, numeric_node_set(p, true), direct);
        e.recipe_found = true;
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NoRecipeFound) throw;
      }
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<PentagonShape> reflection_audit_shapes() {
  std::vector<PentagonShape> out;
  for (int t : {2, 7, 8, 9, 10, 11, 12, 13, 14, 15}) out.push_back(witness(t));
  const auto t1_t7 = intersection_report({1, 7});
  for (const auto& s : t1_t7.shapes) out.push_back(s.shape);
  return out;
}

}  // namespace penta
