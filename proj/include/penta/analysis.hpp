#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "penta/tiling.hpp"

namespace penta {

/// A tile together with every tile sharing at least one boundary point with it.
struct Corona {
  int center = 0;
  std::vector<int> members;  // includes the center
  /// Member polygons carried back by the inverse of the center's isometry,
  /// so the center sits on the base pentagon.
  std::vector<Polygon> signature;
};

/// Throws IncompleteCorona when the tile touches the unfinished patch boundary.
Corona first_corona(const Patch& patch, int tile);

struct CoronaClasses {
  int count = 0;
  /// One center tile per class.
  std::vector<int> representatives;
  /// Class index of each tile, -1 for tiles without a complete corona.
  std::vector<int> tile_class;
};

/// Groups complete coronas by congruence of their signatures (reflections
/// included). Throws IncompleteCorona when no tile has a complete corona.
CoronaClasses corona_classes(const Patch& patch);

struct NodeComposition {
  std::string composition;  // sorted corner letters
  bool flat = false;        // lies on the interior of another tile's edge
  double sum_deg = 0.0;
  int count = 0;
};

/// Compositions of all complete nodes, grouped. Throws InvalidNode when a node
/// has overlapping tiles or a sum away from 360 (180 for flat nodes).
std::vector<NodeComposition> vertex_spectrum(const Patch& patch);

/// True when no complete node lies on the interior of a tile edge.
bool is_edge_to_edge(const Patch& patch);

/// True when both orientations occur. The majority orientation counts as direct.
bool uses_reflections(const Patch& patch);

/// Pure translations carrying tiles onto tiles for the tiles well inside the
/// patch. Holds zero, one or two independent generators.
std::vector<Vec2> periodicity_check(const Patch& patch);

struct AnalysisReport {
  bool edge_to_edge = false;
  bool uses_reflections = false;
  int corona_classes = 0;
  std::vector<NodeComposition> nodes;
  std::vector<Vec2> periods;
};

AnalysisReport analyze(const Patch& patch);

struct Theorem1Entry {
  PentagonShape shape;
  std::vector<int> membership;
  bool recipe_found = false;
  bool violation = false;
  std::string note;
};

struct Theorem1Report {
  std::vector<Theorem1Entry> entries;
  int found = 0;
  int violations = 0;
  int inconclusive = 0;
};

/// For each shape, searches an edge-to-edge tiling built from the shape's own
/// 360-degree corner sums and checks membership in Types 1, 2 or 4 to 9.
Theorem1Report theorem1_audit(const std::vector<PentagonShape>& shapes,
                              const AssemblyOptions& opts = {});

/// Member of type 1, 2 or 4 to 9 that tiles edge to edge: Type 1 with a = d,
/// Type 2 with a = d and c = e, otherwise the stored witness. Throws WrongFamily
/// for the other types.
PentagonShape edge_to_edge_member(int type_id);

/// Random members of Types 1, 2 and 4 to 9 drawn with edge relations that let
/// them tile edge to edge.
std::vector<PentagonShape> theorem1_samples(int count, std::uint64_t seed);

struct ReflectionEntry {
  PentagonShape shape;
  std::vector<int> membership;
  std::string category;
  bool line_symmetric = false;
  bool recipe_found = false;
  std::optional<TilingRecipe> recipe;
};

struct ReflectionReport {
  std::vector<ReflectionEntry> entries;
};

/// Searches tilings without reflected tiles for shapes outside Type 1 that
/// belong to Types 7 to 13, or to Type 2 only. Line-symmetric shapes are
/// listed but not searched.
ReflectionReport reflection_audit(const std::vector<PentagonShape>& shapes,
                                  const AssemblyOptions& opts = {});

/// Default shapes for the reflection audit: family witnesses plus named
/// intersection shapes.
std::vector<PentagonShape> reflection_audit_shapes();

}  // namespace penta
