// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "penta/analysis.hpp"
#include "penta/catalog.hpp"
#include "penta/errors.hpp"
#include "penta/io.hpp"
#include "penta/solver.hpp"
#include "penta/tiling.hpp"
#include "support.hpp"

using namespace penta;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += " (over time limit)";
  }
  failures += !o.pass;
  std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string key(const std::vector<int>& types) {
  std::string s;
  for (int t : types) s += (s.empty() ? "" : ",") + std::to_string(t);
  return s;
}

// Expected cell outcome: a fixed shape count, or -1 for a family, or 0 for empty.
std::map<std::string, int> expected_cells() {
  std::map<std::string, int> e = {{"1,7", 1}, {"1,8", 1},   {"1,9", 1},   {"1,10", 1}, {"1,11", 1},
                                  {"1,5,6", 1}, {"1,2,12", 1}, {"2,6", 1}, {"2,9", 1},  {"2,7", 2},
                                  {"2,8", 3},  {"1,2", -1},  {"1,4", -1},  {"1,5", -1}, {"2,4", -1},
                                  {"2,5", -1}};
  for (int a = 1; a <= 15; ++a) {
    for (int b = a + 1; b <= 15; ++b) {
      const bool isolated = a == 3 || a >= 13 || b == 3 || b >= 13;
      if (isolated) e[key({a, b})] = 0;
    }
  }
  return e;
}

int observed(const IntersectionReport& r) {
  switch (r.verdict) {
    case Verdict::Empty: return 0;
    case Verdict::Family: return -1;
    case Verdict::FixedShapes: return static_cast<int>(r.shapes.size());
    default: return -2;
  }
}

PentagonShape sampled_member(int t, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    if (auto p = testing_support::random_member(t, rng, 3.0)) return *p;
  }
  return witness(t);
}

std::vector<bool> alternating(int n) {
  std::vector<bool> c;
  for (int k = 0; k < n; ++k) c.push_back(k % 2 == 0);
  return c;
}

}  // namespace

int main() {
  run(1, "Type 14 closed form", 5, [] {
    const double expected = std::acos((3 * std::sqrt(57.0) - 17) / 16);
    ConstraintSystem sys;
    sys.add(conditions_of(14), Labeling{});
    const SolveResult r = solve_system(sys);
    if (r.shapes.size() != 1) return Outcome{false, std::to_string(r.shapes.size()) + " shapes found"};
    // The canonical labeling may rotate the shape; compare against Type 14's own C.
    const TypeResidual best = best_residual(conditions_of(14), r.shapes[0].shape);
    const PentagonShape s = relabel(r.shapes[0].shape, best.labeling);
    const double err = std::abs(s.angle(2) - expected);
    std::ostringstream d;
    d << "C = " << s.angle(2) * 180 / kPi << " deg, error " << err;
    return Outcome{err < 1e-9, d.str()};
  });

  run(2, "intersection cells", 600, [] {
    const auto expect = expected_cells();
    std::map<std::string, int> seen[2];
    int idx = 0;
    for (int starts : {200, 400}) {
      SolverOptions opts;
      opts.starts = starts;
      for (const auto& r : venn_table(opts)) seen[idx][key(r.types)] = observed(r);
      ++idx;
    }
    int bad = 0, unstable = 0;
    std::string first;
    for (const auto& [k, v] : expect) {
      const auto it = seen[0].find(k);
      if (it == seen[0].end() || it->second != v) {
        ++bad;
        if (first.empty()) first = k;
      }
    }
    for (const auto& [k, v] : seen[0]) unstable += seen[1][k] != v;
    std::ostringstream d;
    d << expect.size() << " cells checked, " << bad << " mismatched, " << unstable << " changed at 400 starts";
    if (!first.empty()) d << ", first mismatch {" << first << "}";
    return Outcome{bad == 0 && unstable == 0, d.str()};
  });

  run(3, "representative patch validity", 120, [] {
    std::mt19937_64 rng(3);
    double worst = 0;
    for (int t = 1; t <= 15; ++t) {
      const PentagonShape p = sampled_member(t, rng);
      const ValidationReport v = validate_patch(generate_patch(representative_recipe(t, p), 2, 2));
      worst = std::max({worst, v.normalized_overlap(), v.normalized_defect()});
    }
    std::ostringstream d;
    d << "worst normalized overlap or defect " << worst;
    return Outcome{worst < 1e-6, d.str()};
  });

  run(4, "corona classes", 0, [] {
    const std::array<int, 15> k = {1, 1, 1, 1, 1, 2, 2, 2, 2, 3, 2, 2, 2, 3, 3};
    std::ostringstream d;
    bool ok = true;
    for (int t = 1; t <= 15; ++t) {
      const TilingRecipe r = representative_recipe(t, witness(t));
      for (int m : {2, 3}) {
        const int got = corona_classes(generate_patch(r, m, m)).count;
        if (got != k[t - 1]) {
          ok = false;
          d << "T" << t << " m=" << m << " k=" << got << "; ";
        }
      }
    }
    for (int h : {2, 3}) {
      const int got = corona_classes(belt_tiling(witness(6), BeltFamily::Type6, alternating(8), h + 1, 8)).count;
      if (got != 4) {
        ok = false;
        d << "Type 6 belt height " << h + 1 << " k=" << got << "; ";
      }
    }
    if (ok) d << "15 types at m = 2, 3 and the alternating Type 6 belt patch (k = 4)";
    return Outcome{ok, d.str()};
  });

  run(5, "reflection usage", 0, [] {
    std::ostringstream d;
    bool ok = true;
    for (int t = 1; t <= 15; ++t) {
      const bool expect = t == 2 || t >= 7;
      if (uses_reflections(generate_patch(representative_recipe(t, witness(t)), 2, 2)) != expect) {
        ok = false;
        d << "T" << t << " wrong; ";
      }
    }
    const auto cell = intersection_report({1, 7});
    if (cell.shapes.size() != 1) return Outcome{false, "T1 and T7 shape not found"};
    const bool t1_reflects = uses_reflections(generate_patch(representative_recipe(1, cell.shapes[0].shape), 2, 2));
    if (t1_reflects) {
      ok = false;
      d << "T1 recipe of the T1/T7 shape reflects; ";
    }
    if (ok) d << "15 types plus the Type 1 recipe of the T1/T7 shape";
    return Outcome{ok, d.str()};
  });

  run(6, "edge-to-edge flags", 0, [] {
    const bool a = is_edge_to_edge(generate_patch(assemble_recipe(edge_to_edge_member(1), edge_to_edge_relations(1)), 2, 2));
    const bool b = is_edge_to_edge(generate_patch(assemble_recipe(edge_to_edge_member(2), edge_to_edge_relations(2)), 2, 2));
    const bool t3 = is_edge_to_edge(generate_patch(representative_recipe(3, witness(3)), 2, 2));
    const bool t13 = is_edge_to_edge(generate_patch(representative_recipe(13, witness(13)), 2, 2));
    std::ostringstream d;
    d << std::boolalpha << "type 1 a=d " << a << ", type 2 a=d c=e " << b << ", type 3 " << t3 << ", type 13 " << t13;
    return Outcome{a && b && !t3 && !t13, d.str()};
  });

  run(7, "edge-to-edge membership audit", 600, [] {
    const auto samples = theorem1_samples(100, 7);
    const auto r = theorem1_audit(samples);
    std::ostringstream d;
    d << r.found << "/" << samples.size() << " recipes found, " << r.violations << " violations, "
      << r.inconclusive << " inconclusive";
    return Outcome{r.found == 100 && r.violations == 0, d.str()};
  });

  run(8, "property suites", 0, [] {
    std::mt19937_64 rng(8);
    std::vector<PentagonShape> shapes;
    for (int n = 0; n < 1000; ++n) shapes.push_back(testing_support::random_pentagon(rng));

    int canonical_ok = 0;
    for (const auto& p : shapes) {
      const CanonicalKey k = canonical_form(p).key;
      bool all = true;
      for (const Labeling& g : Labeling::all()) all = all && canonical_form(relabel(p, g)).key == k;
      canonical_ok += all;
    }

    double worst_closure = 0;
    std::vector<PentagonShape> accepted = shapes;
    for (int t = 1; t <= 15; ++t) {
      accepted.push_back(witness(t));
      for (int n = 0; n < 20; ++n) {
        if (auto p = testing_support::random_member(t, rng, 4.0)) accepted.push_back(*p);
      }
    }
    for (const auto& p : accepted) worst_closure = std::max(worst_closure, testing_support::closure_residual(p));

    int json_bad = 0;
    for (const auto& p : accepted) {
      const std::string s = dump(to_json(p));
      json_bad += dump(to_json(pentagon_from_json(parse_json(s)))) != s;
    }
    for (int t = 1; t <= 15; ++t) {
      const TilingRecipe r = representative_recipe(t, witness(t));
      const std::string s = dump(to_json(r));
      json_bad += dump(to_json(recipe_from_json(parse_json(s)))) != s;
      const std::string a = dump(to_json(analyze(generate_patch(r, 2, 2))));
      json_bad += dump(to_json(analysis_from_json(parse_json(a)))) != a;
    }

    const std::array<const char*, 4> notations = {
        "2B+A=360, 2E+C=360; a=b, b=c, c=d",
        "2D+C=360, 2B+E=360; c=d, d=e, e=a",
        "2E+A=360, 2B+D=360; b=a, a=e, e=d",
        "C+D+E=B+180, 2E+C=360; a=b, b=c, c=d",
    };
    std::vector<TypeConditions> sets;
    for (const char* n : notations) sets.push_back(parse_conditions(7, n));
    std::vector<PentagonShape> probe = shapes;
    for (int n = 0; n < 100; ++n) {
      if (auto p = testing_support::random_member(7, rng, 4.0)) probe.push_back(*p);
    }
    int notation_bad = 0, positives = 0;
    for (const auto& p : probe) {
      const bool ref = satisfies(sets[0], p);
      positives += ref;
      for (const auto& s : sets) notation_bad += satisfies(s, p) != ref;
    }

    std::ostringstream d;
    d << "canonical " << canonical_ok << "/1000, worst closure " << worst_closure << " over " << accepted.size()
      << " shapes, json mismatches " << json_bad << ", notation disagreements " << notation_bad << " ("
      << positives << " members)";
    return Outcome{canonical_ok == 1000 && worst_closure < 1e-9 && json_bad == 0 && notation_bad == 0 && positives > 0,
                   d.str()};
  });

  run(9, "non-periodicity evidence", 0, [] {
    const Patch p = belt_tiling(edge_to_edge_member(1), BeltFamily::Type1EqualAD, thue_morse(8), 4, 8);
    const auto periods = periodicity_check(p);
    bool vertical = false, horizontal = false;
    for (Vec2 v : periods) {
      if (std::abs(cross(v, *p.axis)) < 1e-6 * norm(v)) vertical = true;
      else horizontal = true;
    }
    std::ostringstream d;
    d << periods.size() << " generator(s), along belts " << std::boolalpha << vertical << ", across belts "
      << horizontal;
    return Outcome{vertical && !horizontal, d.str()};
  });

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
