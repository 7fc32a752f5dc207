// Command-line front end: classification, tiling, Venn cells, audits and the
// catalog export. Exit codes: 0 success, 1 bounded search found nothing,
// 2 usage or validation error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "penta/analysis.hpp"
#include "penta/catalog.hpp"
#include "penta/errors.hpp"
#include "penta/io.hpp"
#include "penta/solver.hpp"
#include "penta/tiling.hpp"

using namespace penta;

namespace {

struct Globals {
  double tol = kClassifyTol;
  double solver_tol = kSolverTol;
  int starts = 200;
  std::uint64_t seed = 1;
  int unit_cap = 16;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

SolverOptions solver_options(const Globals& g) {
  SolverOptions o;
  o.starts = g.starts;
  o.seed = g.seed;
  o.tol = g.solver_tol;
  return o;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects NAME=VALUE, got " + item);
    try {
      std::size_t used = 0;
      const double v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      out[item.substr(0, eq)] = v;
    } catch (const std::exception&) {
      throw UsageError("bad number in --param " + item);
    }
  }
  return out;
}

int cmd_classify(const Globals& g, const std::string& input) {
  const PentagonShape p = pentagon_from_json(parse_json(read_input(input)));
  std::cout << dump(classify_json(p, g.tol));
  return 0;
}

struct TileArgs {
  int type = 0;
  std::vector<std::string> params;
  std::string pentagon;
  std::vector<int> patch = {2, 2};
  std::string svg;
  std::string json_out;
  bool no_reflections = false;
};

int cmd_tile(const Globals& g, const TileArgs& a) {
  if (a.type == 0 && a.pentagon.empty()) throw UsageError("tile needs --type or --pentagon");
  if (a.patch.size() != 2 || a.patch[0] < 1 || a.patch[1] < 1)
    throw UsageError("--patch expects two positive integers");
  PentagonShape p;
  if (!a.pentagon.empty()) {
    p = pentagon_from_json(parse_json(read_input(a.pentagon)));
  } else {
    conditions_of(a.type);
    const auto params = parse_params(a.params);
    p = params.empty() ? witness(a.type) : sample_named(a.type, params, g.seed);
  }
  const auto members = membership(p, g.tol);
  int type_id = a.type;
  if (type_id == 0 && !members.empty()) type_id = members.front();
  if (type_id != 0 && std::find(members.begin(), members.end(), type_id) == members.end())
    throw Error(ErrorCode::WrongFamily, "shape is not a member of type " + std::to_string(type_id));

  TilingRecipe recipe;
  const bool custom = a.no_reflections || g.unit_cap != 16;
  if (type_id != 0 && !custom) {
    recipe = representative_recipe(type_id, p);
  } else {
    AssemblyOptions opts;
    opts.max_unit = g.unit_cap;
    opts.seed = g.seed;
    opts.allow_reflections = !a.no_reflections;
    if (type_id != 0) {
      const PentagonShape q = relabel(p, best_residual(conditions_of(type_id), p).labeling);
      recipe = assemble_recipe(q, node_relations(type_id), opts);
    } else {
      recipe = assemble_recipe(p, numeric_node_set(p, true), opts);
    }
  }
  const Patch patch = generate_patch(recipe, a.patch[0], a.patch[1]);
  const ValidationReport v = validate_patch(patch);
  json out;
  out["type"] = type_id == 0 ? json(nullptr) : json(type_id);
  out["membership"] = members;
  out["seed"] = g.seed;
  out["recipe"] = to_json(recipe);
  out["patch"] = {{"m", a.patch[0]}, {"n", a.patch[1]}, {"tiles", patch.tiles.size()}};
  out["validation"] = {{"normalized_overlap", v.normalized_overlap()},
                       {"normalized_coverage_defect", v.normalized_defect()}};
  out["analysis"] = to_json(analyze(patch));
  write_output(a.json_out, dump(out));
  if (!a.svg.empty()) write_output(a.svg, to_svg(patch));
  return 0;
}

struct VennArgs {
  std::vector<int> pair;
  std::vector<int> triple;
  bool all = false;
  std::string json_out;
};

int cmd_venn(const Globals& g, const VennArgs& a) {
  const SolverOptions opts = solver_options(g);
  std::vector<VennCell> cells;
  if (!a.pair.empty()) cells.push_back(venn_cell(intersection_report(a.pair, opts)));
  if (!a.triple.empty()) cells.push_back(venn_cell(intersection_report(a.triple, opts)));
  if (a.all) {
    for (const auto& r : venn_table(opts)) cells.push_back(venn_cell(r));
  }
  if (cells.empty()) throw UsageError("venn needs --pair, --triple or --all");
  json out = to_json(cells);
  write_output(a.json_out, dump(out));
  return 0;
}

struct AuditArgs {
  std::string which;
  int samples = 100;
  std::string json_out;
};

int cmd_audit(const Globals& g, const AuditArgs& a) {
  AssemblyOptions opts;
  opts.max_unit = g.unit_cap;
  opts.seed = g.seed;
  json out;
  out["audit"] = a.which;
  out["seed"] = g.seed;
  if (a.which == "theorem1") {
    if (a.samples < 1) throw UsageError("--samples must be positive");
    const auto report = theorem1_audit(theorem1_samples(a.samples, g.seed), opts);
    out["samples"] = a.samples;
    out["report"] = to_json(report);
    write_output(a.json_out, dump(out));
    std::cerr << "theorem1: " << report.found << " edge-to-edge recipes, " << report.violations
              << " violations, " << report.inconclusive << " inconclusive\n";
    return 0;
  }
  const auto report = reflection_audit(reflection_audit_shapes(), opts);
  out["unit_cap"] = g.unit_cap;
  out["report"] = to_json(report);
  write_output(a.json_out, dump(out));
  for (const auto& e : report.entries) {
    std::cerr << e.category << ": "
              << (e.line_symmetric ? "excluded (line symmetric)"
                                   : e.recipe_found ? "found without reflections" : "NoRecipeFound")
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex pentagonal monotiles: classification, tilings and audits"};
  app.require_subcommand(1);
  Globals g;
  if (const char* env = std::getenv("PENTA_SEED")) {
    try {
      g.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: PENTA_SEED must be an unsigned integer\n";
      return 2;
    }
  }
  app.add_option("--tol", g.tol, "membership tolerance")->check(CLI::PositiveNumber);
  app.add_option("--solver-tol", g.solver_tol, "solver residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--starts", g.starts, "multistart count")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed (default from PENTA_SEED, else 1)");
  app.add_option("--unit-cap", g.unit_cap, "largest translation unit searched")->check(CLI::PositiveNumber);

  std::string classify_input;
  auto* classify = app.add_subcommand("classify", "type membership and residuals of a pentagon");
  classify->add_option("input", classify_input, "pentagon JSON file, or - for stdin")->required();

  TileArgs tile_args;
  auto* tile = app.add_subcommand("tile", "periodic tiling, patch and analysis");
  tile->add_option("--type", tile_args.type, "type family")->check(CLI::Range(1, 15));
  tile->add_option("--param", tile_args.params, "free parameter NAME=VALUE (degrees for angles)");
  tile->add_option("--pentagon", tile_args.pentagon, "pentagon JSON file instead of a type");
  tile->add_option("--patch", tile_args.patch, "patch half-sizes M N")->expected(2);
  tile->add_option("--svg", tile_args.svg, "write an SVG drawing");
  tile->add_option("--json", tile_args.json_out, "write the JSON report here instead of stdout");
  tile->add_flag("--no-reflections", tile_args.no_reflections, "forbid reflected tiles");

  VennArgs venn_args;
  auto* venn = app.add_subcommand("venn", "intersections of type families");
  venn->add_option("--pair", venn_args.pair, "two type ids")->expected(2)->check(CLI::Range(1, 15));
  venn->add_option("--triple", venn_args.triple, "three type ids")->expected(3)->check(CLI::Range(1, 15));
  venn->add_flag("--all", venn_args.all, "all pairs and the named triples");
  venn->add_option("--json", venn_args.json_out, "output path");

  AuditArgs audit_args;
  auto* audit = app.add_subcommand("audit", "empirical audits");
  audit->add_option("which", audit_args.which, "theorem1 or reflections")
      ->required()
      ->check(CLI::IsMember({"theorem1", "reflections"}));
  audit->add_option("--samples", audit_args.samples, "number of theorem1 samples");
  audit->add_option("--json", audit_args.json_out, "output path");

  std::string catalog_action;
  std::string catalog_out;
  auto* catalog = app.add_subcommand("catalog", "type catalog");
  catalog->add_option("action", catalog_action, "export")->required()->check(CLI::IsMember({"export"}));
  catalog->add_option("--json", catalog_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify) return cmd_classify(g, classify_input);
    if (*tile) return cmd_tile(g, tile_args);
    if (*venn) return cmd_venn(g, venn_args);
    if (*audit) return cmd_audit(g, audit_args);
    if (*catalog) {
      write_output(catalog_out, dump(catalog_json()));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NoRecipeFound ? 1 : 2;
  }
  return 2;
}
