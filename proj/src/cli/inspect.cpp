#include "tactile/cli/inspect.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tactile/error.hpp"
#include "tactile/geometry/mesh.hpp"
#include "tactile/geometry/obj.hpp"
#include "tactile/geometry/scene.hpp"
#include "tactile/patterns/grid.hpp"

namespace tactile::cli {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Warn: return "WARN";
    case Verdict::Fail: return "FAIL";
  }
  return "?";
}

Verdict SceneReport::overall() const {
  Verdict v = Verdict::Pass;
  for (const auto& c : checks) v = std::max(v, c.verdict);
  return v;
}

std::string SceneReport::text() const {
  std::ostringstream out;
  out << "triangles: " << triangles << '\n';
  for (const auto& c : checks) {
    out << c.name << ": " << verdict_name(c.verdict);
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
  }
  out << "result: " << verdict_name(overall()) << '\n';
  return out.str();
}

std::string compress_ranges(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[j] + 1) ++j;
    if (!s.empty()) s += ',';
    s += std::to_string(v[i]);
    if (j > i) s += '-' + std::to_string(v[j]);
    i = j + 1;
  }
  return s;
}

SceneReport validate_scene(const std::string& obj_path, const std::string& material_path,
                           const geometry::FeatureThresholds& thresholds) {
  const auto doc = geometry::read_obj_file(obj_path);
  SceneReport report;

  std::vector<std::size_t> bad_lines;
  for (std::size_t i = 0; i < doc.polygons.size(); ++i) {
    if (doc.polygons[i].size() != 3) bad_lines.push_back(doc.polygon_lines[i]);
  }
  report.checks.push_back({"triangulated", bad_lines.empty() ? Verdict::Pass : Verdict::Fail,
                           bad_lines.empty() ? "" : "non-triangle faces at lines " + compress_ranges(bad_lines)});

  std::vector<std::array<std::uint32_t, 3>> tris;
  tris.reserve(doc.polygons.size());
  for (const auto& p : doc.polygons) {
    if (p.size() == 3) tris.push_back({p[0], p[1], p[2]});
  }
  report.triangles = tris.size();
  if (tris.empty()) report.checks.push_back({"non-empty", Verdict::Fail, "no triangles"});

  std::vector<std::size_t> degenerate;
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> edge_faces;
  for (std::size_t f = 0; f < tris.size(); ++f) {
    const auto& t = tris[f];
    const auto& a = doc.vertices[t[0]];
    const Vec3 n = cross(doc.vertices[t[1]] - a, doc.vertices[t[2]] - a);
    if (0.5 * norm(n) < 1e-12) {
      degenerate.push_back(f);
      continue;
    }
    for (int e = 0; e < 3; ++e) {
      auto u = t[e], v = t[(e + 1) % 3];
      if (u > v) std::swap(u, v);
      ++edge_faces[{u, v}];
    }
  }
  report.checks.push_back({"degenerate", degenerate.empty() ? Verdict::Pass : Verdict::Warn,
                           degenerate.empty() ? "" : "zero-area faces " + compress_ranges(degenerate)});

  std::size_t boundary = 0;
  std::vector<std::string> nonmanifold;
  for (const auto& [edge, count] : edge_faces) {
    if (count == 1) ++boundary;
    if (count > 2 && nonmanifold.size() < 10) {
      nonmanifold.push_back(std::to_string(edge.first) + "-" + std::to_string(edge.second));
    }
  }
  std::string nm;
  for (const auto& e : nonmanifold) nm += (nm.empty() ? "" : ",") + e;
  report.checks.push_back({"manifold", nonmanifold.empty() ? Verdict::Pass : Verdict::Fail,
                           nonmanifold.empty()
                               ? (boundary ? std::to_string(boundary) + " boundary edges" : std::string("closed"))
                               : "edges shared by more than two faces: " + nm});

  if (material_path.empty()) {
    report.checks.push_back({"materials", Verdict::Pass, "no material file, all faces smooth"});
  } else {
    const auto map = geometry::read_material_file(material_path);
    std::vector<std::uint8_t> levels;
    std::vector<bool> assigned;
    map.apply(tris.size(), levels, assigned);
    std::vector<std::size_t> missing;
    for (std::size_t f = 0; f < assigned.size(); ++f) {
      if (!assigned[f]) missing.push_back(f);
    }
    bool overreach = false;
    for (const auto& r : map.rules) overreach = overreach || (!r.all && r.last >= tris.size());
    std::string detail;
    if (!missing.empty()) detail = "unassigned faces " + compress_ranges(missing);
    if (overreach) detail += std::string(detail.empty() ? "" : "; ") + "rules past the last face";
    report.checks.push_back({"materials", detail.empty() ? Verdict::Pass : Verdict::Warn, detail});
  }

  if (report.overall() != Verdict::Fail) {
    try {
      const auto scene = geometry::load_scene_files(obj_path, material_path, thresholds);
      report.checks.push_back({"features", Verdict::Pass,
                               std::to_string(scene.sharp_edge_count()) + " sharp edges, " +
                                   std::to_string(scene.corner_count()) + " corners"});
    } catch (const Error& e) {
      report.checks.push_back({"load", Verdict::Fail, std::string(error_code_name(e.code())) + ": " + e.what()});
    }
  }
  return report;
}

std::vector<FrameRecord> parse_frame_log(const std::string& text) {
  std::vector<FrameRecord> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    FrameRecord r;
    std::string extra;
    if (!(ls >> r.tick >> r.mode >> r.feature >> r.n >> r.shift >> r.frames >> r.grid) || (ls >> extra) ||
        r.grid.size() != static_cast<std::size_t>(patterns::kCellCount) ||
        r.grid.find_first_not_of("#.") != std::string::npos) {
      throw Error(ErrorCode::ParseError, "frame log line " + std::to_string(line_no) + ": malformed record");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string render_text(const FrameRecord& r) {
  std::string s;
  for (int row = 0; row < patterns::kRows; ++row) {
    s += r.grid.substr(static_cast<std::size_t>(row * patterns::kCols), patterns::kCols);
    s += '\n';
  }
  return s;
}

std::string render_svg(const std::vector<FrameRecord>& records) {
  constexpr int kCell = 14;
  constexpr int kPad = 10;
  constexpr int kPanel = patterns::kCols * kCell + 2 * kPad;
  constexpr int kLabel = 16;
  std::ostringstream s;
  const int per_row = 8;
  const int cols = std::max<int>(1, std::min<int>(per_row, static_cast<int>(records.size())));
  const int rows = (static_cast<int>(records.size()) + per_row - 1) / per_row;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * kPanel << "\" height=\""
    << std::max(1, rows) * (kPanel + kLabel) << "\" font-family=\"monospace\" font-size=\"10\">\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const int ox = static_cast<int>(i % per_row) * kPanel;
    const int oy = static_cast<int>(i / per_row) * (kPanel + kLabel);
    s << "<g id=\"tick-" << r.tick << "\">\n";
    s << "<text x=\"" << ox + kPad << "\" y=\"" << oy + 11 << "\">" << r.tick << ' ' << r.feature << " n=" << r.n
      << "</text>\n";
    for (int row = 0; row < patterns::kRows; ++row) {
      for (int col = 0; col < patterns::kCols; ++col) {
        const int cx = ox + kPad + col * kCell + kCell / 2;
        const int cy = oy + kLabel + kPad + row * kCell + kCell / 2;
        if (patterns::is_excluded(row, col)) {
          const int d = 3;
          s << "<path d=\"M" << cx - d << ' ' << cy - d << "L" << cx + d << ' ' << cy + d << "M" << cx + d << ' '
            << cy - d << "L" << cx - d << ' ' << cy + d << "\" stroke=\"#999\"/>\n";
          continue;
        }
        const bool on = r.grid[static_cast<std::size_t>(patterns::cell_bit(row, col))] == '#';
        s << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"5\" fill=\"" << (on ? "#d33" : "#fff")
          << "\" stroke=\"#333\"/>\n";
      }
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<FrameRecord> select_ticks(const std::vector<FrameRecord>& records, std::int64_t first,
                                      std::int64_t last) {
  if (first > last) throw Error(ErrorCode::BadRange, "tick range " + std::to_string(first) + ".." + std::to_string(last) + " is inverted");
  std::vector<FrameRecord> out;
  for (const auto& r : records) {
    if (r.tick >= first && r.tick <= last) out.push_back(r);
  }
  if (out.empty()) {
    throw Error(ErrorCode::BadRange, "no ticks in " + std::to_string(first) + ".." + std::to_string(last) +
                                         " (log has " + std::to_string(records.size()) + ")");
  }
  return out;
}

}  // namespace tactile::cli
