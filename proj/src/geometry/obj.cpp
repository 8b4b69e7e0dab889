#include "tactile/geometry/obj.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tactile/error.hpp"

namespace tactile::geometry {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view tok, std::size_t line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(line_no, "bad number '" + std::string(tok) + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view tok, std::size_t line_no) {
  Int v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(line_no, "bad integer '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

ObjDocument parse_obj(std::string_view text) {
  ObjDocument doc;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    const auto line = strip_comment(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;

    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "v") {
      if (tok.size() < 4) fail(line_no, "vertex needs 3 coordinates");
      const Vec3 v{parse_double(tok[1], line_no), parse_double(tok[2], line_no),
                   parse_double(tok[3], line_no)};
      if (!is_finite(v)) fail(line_no, "non-finite vertex coordinate");
      doc.vertices.push_back(v);
    } else if (tok[0] == "f") {
      if (tok.size() < 4) fail(line_no, "face needs at least 3 vertices");
      std::vector<std::uint32_t> poly;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        // v, v/vt, v//vn, v/vt/vn: only the position index matters.
        auto ref = tok[i].substr(0, tok[i].find('/'));
        const auto idx = parse_int<long long>(ref, line_no);
        const auto n = static_cast<long long>(doc.vertices.size());
        const long long resolved = idx < 0 ? n + idx : idx - 1;
        if (idx == 0 || resolved < 0 || resolved >= n) {
          fail(line_no, "vertex index " + std::string(ref) + " out of range");
        }
        poly.push_back(static_cast<std::uint32_t>(resolved));
      }
      doc.polygons.push_back(std::move(poly));
      doc.polygon_lines.push_back(line_no);
    }
    // vn, vt, o, g, s, usemtl, mtllib and friends are ignored.
    if (nl == std::string_view::npos) break;
  }
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ObjDocument read_obj_file(const std::string& path) { return parse_obj(read_text_file(path)); }

void MaterialMap::apply(std::size_t face_count, std::vector<std::uint8_t>& levels,
                        std::vector<bool>& assigned) const {
  levels.assign(face_count, 0);
  assigned.assign(face_count, false);
  for (const auto& r : rules) {
    const std::size_t first = r.all ? 0 : r.first;
    const std::size_t last = r.all ? face_count : std::min(r.last + 1, face_count);
    for (std::size_t f = first; f < last; ++f) {
      levels[f] = r.level;
      assigned[f] = true;
    }
  }
}

MaterialMap parse_material_map(std::string_view text) {
  MaterialMap map;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    const auto tok = split_ws(strip_comment(text.substr(pos, end - pos)));
    ++line_no;
    pos = end + 1;
    if (!tok.empty()) {
      if (tok.size() != 2) fail(line_no, "expected '<range> <level>'");
      MaterialRule rule;
      if (tok[0] == "*") {
        rule.all = true;
      } else {
        const auto dash = tok[0].find('-');
        rule.first = parse_int<std::size_t>(tok[0].substr(0, dash), line_no);
        rule.last = dash == std::string_view::npos
                        ? rule.first
                        : parse_int<std::size_t>(tok[0].substr(dash + 1), line_no);
        if (rule.last < rule.first) fail(line_no, "empty face range");
      }
      const int level = parse_int<int>(tok[1], line_no);
      if (level < 0 || level > 2) fail(line_no, "texture level must be 0, 1 or 2");
      rule.level = static_cast<std::uint8_t>(level);
      map.rules.push_back(rule);
    }
    if (nl == std::string_view::npos) break;
  }
  return map;
}

MaterialMap read_material_file(const std::string& path) {
  return parse_material_map(read_text_file(path));
}

}  // namespace tactile::geometry
