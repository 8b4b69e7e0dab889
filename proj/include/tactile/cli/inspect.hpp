#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tactile/geometry/feature.hpp"

namespace tactile::cli {

enum class Verdict { Pass, Warn, Fail };
std::string verdict_name(Verdict v);

struct SceneCheck {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

struct SceneReport {
  std::vector<SceneCheck> checks;
  std::size_t triangles = 0;
  Verdict overall() const;
  std::string text() const;
};

// Triangulation, manifoldness, degenerate triangles and material coverage.
// Unparseable OBJ or material files throw Error{ParseError}.
SceneReport validate_scene(const std::string& obj_path, const std::string& material_path,
                           const geometry::FeatureThresholds& thresholds = {});

// `0-4,7,9-10`
std::string compress_ranges(const std::vector<std::size_t>& sorted);

// One parsed frame log record.
struct FrameRecord {
  std::int64_t tick = 0;
  std::string mode;
  std::string feature;
  std::int64_t n = 0;
  std::int64_t shift = 0;
  int frames = 1;
  std::string grid;  // 36 characters
};

std::vector<FrameRecord> parse_frame_log(const std::string& text);  // throws Error{ParseError}

// 6 lines of 6 characters; concatenated they equal record.grid.
std::string render_text(const FrameRecord& record);

// Static SVG of consecutive ticks; excluded corners drawn as crosses.
std::string render_svg(const std::vector<FrameRecord>& records);

// Records with first <= tick <= last; throws Error{BadRange} when the range
// is inverted or selects nothing.
std::vector<FrameRecord> select_ticks(const std::vector<FrameRecord>& records, std::int64_t first,
                                      std::int64_t last);

}  // namespace tactile::cli
