#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "penta/geometry.hpp"
#include "penta/pentagon.hpp"

namespace penta {

/// Corner compositions allowed at tiling vertices. Each entry is a sorted
/// string of corner letters ("ABB" means A + 2B). Full nodes sum to 360
/// degrees; flat nodes sum to 180 degrees on the interior of another tile's
/// edge. An empty flat list forces edge-to-edge assembly.
struct NodeRelationSet {
  std::vector<std::string> full;
  std::vector<std::string> flat;

  bool allows_flat() const { return !flat.empty(); }
};

/// Node relations of the representative tiling of a type.
NodeRelationSet node_relations(int type_id);
/// Node relations for edge-to-edge tilings of a type (no flat nodes).
NodeRelationSet edge_to_edge_relations(int type_id);
/// Every corner multiset of up to six corners whose angles sum to 360 degrees
/// (and, when requested, up to three summing to 180) for this shape.
NodeRelationSet numeric_node_set(const PentagonShape& p, bool include_flat = false,
                                 double tol = 1e-6);
/// Throws InvalidNodeSet unless every composition sums correctly for `p`.
void check_node_set(const PentagonShape& p, const NodeRelationSet& nodes, double tol = 1e-6);
/// Sum of the corner angles named in `composition`, in degrees.
double composition_sum_deg(const PentagonShape& p, const std::string& composition);

struct TilingRecipe {
  PentagonShape base;
  std::vector<Isometry> unit;
  std::array<Vec2, 2> lattice{};
};

struct PlacedTile {
  /// Images of V0..V4 in label order (clockwise when the tile is reflected).
  Polygon vertices;
  Isometry iso;
  int unit_index = 0;
  int i = 0;
  int j = 0;
};

struct Patch {
  PentagonShape base;
  std::vector<PlacedTile> tiles;
  /// Convex counterclockwise region inside which the patch claims full cover.
  Polygon window;
  /// Lattice vectors when the patch comes from a recipe.
  std::optional<std::array<Vec2, 2>> lattice;
  /// Direction along which the patch is known to repeat (belt axis).
  std::optional<Vec2> axis;
};

/// Tile polygon for an isometry applied to the base, in label order.
Polygon place(const PentagonShape& base, const Isometry& iso);
/// Counterclockwise copy of a placed polygon.
Polygon ccw(const Polygon& labeled, bool reflected);

struct AssemblyOptions {
  int max_unit = 16;
  std::uint64_t seed = 0;
  bool allow_reflections = true;
  /// Upper bound on tried placements over the whole search.
  long budget = 400000;
};

/// Backtracking assembly of a periodic tiling whose vertices follow `nodes`.
/// Returns the smallest translation unit found. Throws NoRecipeFound or
/// InvalidNodeSet.
TilingRecipe assemble_recipe(const PentagonShape& p, const NodeRelationSet& nodes,
                             const AssemblyOptions& opts = {});
/// Recipe for the representative tiling of a type.
TilingRecipe representative_recipe(int type_id, const PentagonShape& p);

/// (2m+1) x (2n+1) lattice translates of the unit.
Patch generate_patch(const TilingRecipe& recipe, int m, int n);

struct ValidationReport {
  double max_overlap = 0.0;
  double coverage_defect = 0.0;
  double window_area = 0.0;
  double normalized_overlap() const { return window_area > 0 ? max_overlap / window_area : 0; }
  double normalized_defect() const { return window_area > 0 ? coverage_defect / window_area : 0; }
};

ValidationReport validate_patch(const Patch& patch);

enum class BeltFamily { Type1EqualAD, Type6 };

/// Vertical belts of the family's tiling joined side by side. connection[k]
/// chooses how belt k+1 attaches to belt k: true joins a mirrored belt,
/// false repeats the belt by translation. Throws WrongFamily.
Patch belt_tiling(const PentagonShape& p, BeltFamily family, const std::vector<bool>& connection,
                  int height, int width);

/// Prefix of the Thue-Morse sequence as booleans.
std::vector<bool> thue_morse(int length);

}  // namespace penta
