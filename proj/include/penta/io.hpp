#pragma once

#include <string>
#include <vector>

#include "penta/analysis.hpp"
#include "penta/catalog.hpp"
#include "penta/solver.hpp"
#include "penta/tiling.hpp"
#include "json.hpp"

namespace penta {

using json = nlohmann::ordered_json;

/// {"angles_deg", "angles_rad", "edges"}. The radian copy makes re-reading exact.
json to_json(const PentagonShape& p);
/// Accepts {"angles_deg", "edges"} (validated and projected onto closure),
/// {"angles_rad", "edges"} (taken as is) or {"vertices": [[x, y] x 5]}.
/// Throws ParseError on malformed input and the pentagon errors on invalid shapes.
PentagonShape pentagon_from_json(const json& j);

json to_json(const Isometry& iso);
Isometry isometry_from_json(const json& j);

json to_json(const TilingRecipe& r);
TilingRecipe recipe_from_json(const json& j);

json to_json(const AnalysisReport& r);
AnalysisReport analysis_from_json(const json& j);

/// One Venn cell as written to disk.
struct VennCell {
  std::vector<int> types;
  Verdict verdict = Verdict::ConvergenceFailure;
  std::vector<PentagonShape> shapes;
  std::vector<bool> line_symmetric;
  int dimension = 0;
};

VennCell venn_cell(const IntersectionReport& r);
/// Object keyed by the sorted type ids joined with commas ("1,7").
json to_json(const std::vector<VennCell>& cells);
std::vector<VennCell> venn_from_json(const json& j);

json classify_json(const PentagonShape& p, double tol = kClassifyTol);
json catalog_json();
json to_json(const Theorem1Report& r);
json to_json(const ReflectionReport& r);

struct SvgOptions {
  double scale = 40.0;  // pixels per unit length
  bool show_window = true;
  bool mark_reflected = true;
};

/// One path per tile. Reflected tiles get class "reflected" and a "*" label;
/// tiles of the central translation unit get class "unit".
std::string to_svg(const Patch& patch, const SvgOptions& opts = {});

/// Pretty-printed JSON with a trailing newline.
std::string dump(const json& j);
json parse_json(const std::string& text);

}  // namespace penta
