#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tactile/vec3.hpp"

namespace tactile::geometry {

// Raw contents of a Wavefront OBJ file restricted to `v` and `f` records.
// Polygons keep their original arity so that validation can report
// non-triangulated faces; load_scene() requires triangles.
struct ObjDocument {
  std::vector<Vec3> vertices;
  std::vector<std::vector<std::uint32_t>> polygons;  // 0-based vertex indices
  std::vector<std::size_t> polygon_lines;            // 1-based source line
};

// Throws Error{ParseError} on malformed records, out-of-range indices or
// non-finite coordinates.
ObjDocument parse_obj(std::string_view text);
ObjDocument read_obj_file(const std::string& path);

// Face -> texture level assignment read from a sidecar file.
//
// Grammar, one rule per line, `#` starts a comment:
//   <first>[-<last>] <level>     inclusive 0-based face range
//   *  <level>                   every face
// Levels are 0 (smooth), 1 (rough), 2 (rougher). Later rules override
// earlier ones.
struct MaterialRule {
  std::size_t first = 0;
  std::size_t last = 0;
  bool all = false;
  std::uint8_t level = 0;
};

struct MaterialMap {
  std::vector<MaterialRule> rules;

  static MaterialMap uniform(std::uint8_t level) {
    return MaterialMap{{MaterialRule{0, 0, true, level}}};
  }

  // Per-face levels (default 0) and which faces any rule touched.
  void apply(std::size_t face_count, std::vector<std::uint8_t>& levels,
             std::vector<bool>& assigned) const;
};

MaterialMap parse_material_map(std::string_view text);
MaterialMap read_material_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace tactile::geometry
