#include "penta/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "penta/errors.hpp"

namespace penta {

namespace {

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field \"") + key + "\": " + e.what());
  }
}

std::array<double, 5> five(const json& j, const char* key) {
  const auto v = get_field<std::vector<double>>(j, key);
  if (v.size() != 5) throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" needs 5 numbers");
  std::array<double, 5> out;
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorCode::ParseError, "a point is written [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::Empty, Verdict::FixedShapes, Verdict::Family, Verdict::ConvergenceFailure}) {
    if (s == to_string(v)) return v;
  }
  throw Error(ErrorCode::ParseError, "unknown verdict " + s);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

json to_json(const PentagonShape& p) {
  json j;
  j["angles_deg"] = p.angles_deg();
  j["angles_rad"] = p.angles();
  j["edges"] = p.edges();
  return j;
}

PentagonShape pentagon_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "a pentagon is a JSON object");
  if (j.contains("vertices")) {
    if (!j["vertices"].is_array()) throw Error(ErrorCode::ParseError, "\"vertices\" must be an array");
    Polygon v;
    for (const auto& q : j["vertices"]) v.push_back(vec_from_json(q));
    return pentagon_from_vertices(v);
  }
  const auto edges = five(j, "edges");
  if (j.contains("angles_rad")) {
    const auto a = five(j, "angles_rad");
    // Validate, then keep the stored values bit for bit when they already
    // describe a closed pentagon.
    const PentagonShape projected = PentagonShape::from_radians(a, edges);
    double drift = 0.0;
    for (int i = 0; i < 5; ++i) {
      drift = std::max(drift, std::abs(projected.angle(i) - a[static_cast<std::size_t>(i)]));
      drift = std::max(drift, std::abs(projected.edge(i) - edges[static_cast<std::size_t>(i)] / edges[0]));
    }
    return drift < 1e-9 ? make_shape_unchecked(a, edges) : projected;
  }
  return pentagon_from_angles_edges(five(j, "angles_deg"), edges);
}

json to_json(const Isometry& iso) {
  json j;
  j["reflected"] = iso.reflected;
  j["rotation_deg"] = rad_to_deg(iso.rotation);
  j["rotation_rad"] = iso.rotation;
  j["translation"] = vec_json(iso.translation);
  return j;
}

Isometry isometry_from_json(const json& j) {
  Isometry iso;
  iso.reflected = get_field<bool>(j, "reflected");
  iso.rotation = j.contains("rotation_rad") ? get_field<double>(j, "rotation_rad")
                                            : deg_to_rad(get_field<double>(j, "rotation_deg"));
  iso.translation = vec_from_json(get_field<json>(j, "translation"));
  return iso;
}

json to_json(const TilingRecipe& r) {
  json j;
  j["base"] = to_json(r.base);
  j["unit"] = json::array();
  for (const auto& u : r.unit) j["unit"].push_back(to_json(u));
  j["lattice"] = json::array({vec_json(r.lattice[0]), vec_json(r.lattice[1])});
  return j;
}

TilingRecipe recipe_from_json(const json& j) {
  TilingRecipe r;
  r.base = pentagon_from_json(get_field<json>(j, "base"));
  const json unit = get_field<json>(j, "unit");
  if (!unit.is_array() || unit.empty()) throw Error(ErrorCode::ParseError, "\"unit\" must be a non-empty array");
  for (const auto& u : unit) r.unit.push_back(isometry_from_json(u));
  const json lat = get_field<json>(j, "lattice");
  if (!lat.is_array() || lat.size() != 2) throw Error(ErrorCode::ParseError, "\"lattice\" holds two vectors");
  r.lattice = {vec_from_json(lat[0]), vec_from_json(lat[1])};
  if (std::abs(cross(r.lattice[0], r.lattice[1])) < 1e-12)
    throw Error(ErrorCode::ParseError, "lattice vectors are parallel");
  return r;
}

json to_json(const AnalysisReport& r) {
  json j;
  j["edge_to_edge"] = r.edge_to_edge;
  j["uses_reflections"] = r.uses_reflections;
  j["corona_classes"] = r.corona_classes;
  j["corona_classes_note"] = "corona-class count (finite patch)";
  j["nodes"] = json::array();
  for (const auto& n : r.nodes) {
    json c = json::array();
    for (char ch : n.composition) c.push_back(std::string(1, ch));
    j["nodes"].push_back({{"composition", c}, {"sum_deg", n.sum_deg}, {"flat", n.flat}, {"count", n.count}});
  }
  if (r.periods.empty()) {
    j["periods"] = nullptr;
  } else {
    j["periods"] = json::array();
    for (Vec2 v : r.periods) j["periods"].push_back(vec_json(v));
  }
  return j;
}

AnalysisReport analysis_from_json(const json& j) {
  AnalysisReport r;
  r.edge_to_edge = get_field<bool>(j, "edge_to_edge");
  r.uses_reflections = get_field<bool>(j, "uses_reflections");
  r.corona_classes = get_field<int>(j, "corona_classes");
  for (const auto& n : get_field<json>(j, "nodes")) {
    NodeComposition c;
    for (const auto& s : get_field<std::vector<std::string>>(n, "composition")) {
      if (s.size() != 1 || s[0] < 'A' || s[0] > 'E') throw Error(ErrorCode::ParseError, "bad corner " + s);
      c.composition.push_back(s[0]);
    }
    c.sum_deg = get_field<double>(n, "sum_deg");
    c.flat = n.contains("flat") && get_field<bool>(n, "flat");
    c.count = n.contains("count") ? get_field<int>(n, "count") : 0;
    r.nodes.push_back(std::move(c));
  }
  const json periods = get_field<json>(j, "periods");
  if (!periods.is_null()) {
    for (const auto& v : periods) r.periods.push_back(vec_from_json(v));
  }
  return r;
}

VennCell venn_cell(const IntersectionReport& r) {
  VennCell c;
  c.types = r.types;
  std::sort(c.types.begin(), c.types.end());
  c.verdict = r.verdict;
  for (const auto& s : r.shapes) c.shapes.push_back(s.shape);
  c.line_symmetric = r.line_symmetric;
  c.dimension = r.dimension;
  return c;
}

json to_json(const std::vector<VennCell>& cells) {
  json j = json::object();
  for (const auto& c : cells) {
    std::string key;
    for (std::size_t i = 0; i < c.types.size(); ++i) key += (i ? "," : "") + std::to_string(c.types[i]);
    json cell;
    cell["verdict"] = to_string(c.verdict);
    cell["shapes"] = json::array();
    for (const auto& s : c.shapes) cell["shapes"].push_back(to_json(s));
    cell["line_symmetric"] = c.line_symmetric;
    cell["dimension"] = c.dimension;
    j[key] = cell;
  }
  return j;
}

std::vector<VennCell> venn_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "a Venn table is a JSON object");
  std::vector<VennCell> out;
  for (const auto& [key, cell] : j.items()) {
    VennCell c;
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        c.types.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad Venn key " + key);
      }
    }
    c.verdict = verdict_from_string(get_field<std::string>(cell, "verdict"));
    for (const auto& s : get_field<json>(cell, "shapes")) c.shapes.push_back(pentagon_from_json(s));
    c.line_symmetric = get_field<std::vector<bool>>(cell, "line_symmetric");
    c.dimension = get_field<int>(cell, "dimension");
    out.push_back(std::move(c));
  }
  return out;
}

json classify_json(const PentagonShape& p, double tol) {
  json j;
  j["pentagon"] = to_json(p);
  j["membership"] = membership(p, tol);
  j["tolerance"] = tol;
  j["residuals"] = json::array();
  for (const auto& r : residual_table(p)) {
    j["residuals"].push_back({{"type", r.type},
                              {"residual", r.residual},
                              {"labeling", {{"rotation", r.labeling.rotation}, {"reflected", r.labeling.reflected}}},
                              {"conditions", conditions_of(r.type).text}});
  }
  const auto& m = membership(p, tol);
  j["isohedral_family"] = std::any_of(m.begin(), m.end(), [](int t) { return t <= 5; });
  return j;
}

json catalog_json() {
  json out = json::array();
  for (int t = 1; t <= 15; ++t) {
    const auto& c = conditions_of(t);
    json j;
    j["type"] = t;
    j["conditions"] = c.text;
    j["angle_relations"] = json::array();
    for (const auto& a : c.angle_relations) {
      json row(a.coeffs);
      row.push_back(a.constant_deg);
      j["angle_relations"].push_back(row);
    }
    j["edge_relations"] = json::array();
    for (const auto& e : c.edge_relations) j["edge_relations"].push_back(e.coeffs);
    j["dof"] = degrees_of_freedom(t);
    j["free_parameters"] = free_parameters(t);
    j["witness"] = to_json(witness(t));
    out.push_back(j);
  }
  return out;
}

json to_json(const Theorem1Report& r) {
  json j;
  j["found"] = r.found;
  j["violations"] = r.violations;
  j["inconclusive"] = r.inconclusive;
  j["entries"] = json::array();
  for (const auto& e : r.entries) {
    j["entries"].push_back({{"shape", to_json(e.shape)},
                            {"membership", e.membership},
                            {"recipe_found", e.recipe_found},
                            {"violation", e.violation},
                            {"note", e.note}});
  }
  return j;
}

json to_json(const ReflectionReport& r) {
  json j = json::array();
  for (const auto& e : r.entries) {
    json row = {{"shape", to_json(e.shape)},
                {"membership", e.membership},
                {"category", e.category},
                {"line_symmetric", e.line_symmetric},
                {"searched", !e.line_symmetric},
                {"result", e.line_symmetric ? "excluded" : e.recipe_found ? "found" : "NoRecipeFound"}};
    if (e.recipe) row["recipe"] = to_json(*e.recipe);
    j.push_back(row);
  }
  return j;
}

std::string to_svg(const Patch& patch, const SvgOptions& opts) {
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  for (const auto& t : patch.tiles) {
    for (Vec2 v : t.vertices) {
      lo_x = std::min(lo_x, v.x);
      lo_y = std::min(lo_y, v.y);
      hi_x = std::max(hi_x, v.x);
      hi_y = std::max(hi_y, v.y);
    }
  }
  if (patch.tiles.empty()) lo_x = lo_y = hi_x = hi_y = 0.0;
  const double pad = 0.5;
  const double s = opts.scale;
  // Screen coordinates: y grows downwards.
  auto px = [&](Vec2 v) { return fmt((v.x - lo_x + pad) * s) + "," + fmt((hi_y - v.y + pad) * s); };
  const double width = (hi_x - lo_x + 2 * pad) * s;
  const double height = (hi_y - lo_y + 2 * pad) * s;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  out << "<style>\n"
         "path.tile { fill: #f4f4f4; stroke: #222; stroke-width: 1; }\n"
         "path.tile.reflected { fill: #9ec3e6; }\n"
         "path.tile.unit { fill: #c8c8c8; }\n"
         "path.tile.unit.reflected { fill: #6e9cc8; }\n"
         "path.outline { fill: none; stroke: #000; stroke-width: 2.5; }\n"
         "path.window { fill: none; stroke: #c33; stroke-width: 1; stroke-dasharray: 6 4; }\n"
         "text.mark { font: bold 14px sans-serif; text-anchor: middle; dominant-baseline: central; }\n"
         "</style>\n";
  auto path = [&](const Polygon& poly) {
    std::string d = "M";
    for (Vec2 v : poly) d += " " + px(v);
    return d + " Z";
  };
  for (const auto& t : patch.tiles) {
    const bool unit = patch.lattice && t.i == 0 && t.j == 0;
    std::string cls = "tile";
    if (t.iso.reflected) cls += " reflected";
    if (unit) cls += " unit";
    out << "<path class=\"" << cls << "\" d=\"" << path(t.vertices) << "\"/>\n";
  }
  if (patch.lattice) {
    for (const auto& t : patch.tiles) {
      if (t.i == 0 && t.j == 0) out << "<path class=\"outline\" d=\"" << path(t.vertices) << "\"/>\n";
    }
  }
  if (opts.mark_reflected) {
    for (const auto& t : patch.tiles) {
      if (!t.iso.reflected) continue;
      const Vec2 c = centroid(ccw(t.vertices, true));
      const std::string p = px(c);
      const auto comma = p.find(',');
      out << "<text class=\"mark\" x=\"" << p.substr(0, comma) << "\" y=\"" << p.substr(comma + 1)
          << "\">*</text>\n";
    }
  }
  if (opts.show_window && patch.window.size() >= 3)
    out << "<path class=\"window\" d=\"" << path(patch.window) << "\"/>\n";
  out << "</svg>\n";
  return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace penta
