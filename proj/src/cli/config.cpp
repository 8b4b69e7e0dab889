#include "tactile/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "tactile/error.hpp"
#include "tactile/geometry/obj.hpp"

namespace tactile::cli {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double as_double(const std::string& key, const std::string& v) {
  double d = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, d);
  if (ec != std::errc{} || p != end || !std::isfinite(d)) bad(key + ": expected a number, got '" + v + "'");
  return d;
}

template <typename Int>
Int as_int(const std::string& key, const std::string& v) {
  Int i = 0;
  const char* first = v.data();
  if (!v.empty() && v[0] == '+') ++first;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(first, end, i);
  if (ec != std::errc{} || p != end) bad(key + ": expected an integer, got '" + v + "'");
  return i;
}

using Setter = std::function<void(Config&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"paths.scene", [](Config& c, const auto&, const auto& v) { c.scene = v; }},
      {"paths.materials", [](Config& c, const auto&, const auto& v) { c.materials = v; }},
      {"paths.trace", [](Config& c, const auto&, const auto& v) { c.trace = v; }},
      {"paths.trace_spec", [](Config& c, const auto&, const auto& v) { c.trace_spec = v; }},
      {"paths.out", [](Config& c, const auto&, const auto& v) { c.out_dir = v; }},
      {"paths.calibration", [](Config& c, const auto&, const auto& v) { c.calibration = v; }},
      {"params.alpha", [](Config& c, const auto& k, const auto& v) { c.params.alpha = as_double(k, v); }},
      {"params.beta", [](Config& c, const auto& k, const auto& v) { c.params.beta = as_int<int>(k, v); }},
      {"params.k_smooth", [](Config& c, const auto& k, const auto& v) { c.params.texture_k[0] = as_int<int>(k, v); }},
      {"params.k_rough", [](Config& c, const auto& k, const auto& v) { c.params.texture_k[1] = as_int<int>(k, v); }},
      {"params.k_rougher", [](Config& c, const auto& k, const auto& v) { c.params.texture_k[2] = as_int<int>(k, v); }},
      {"params.max_ring_radius",
       [](Config& c, const auto& k, const auto& v) { c.params.max_ring_radius = as_int<int>(k, v); }},
      {"params.slide_threshold_mm_s",
       [](Config& c, const auto& k, const auto& v) { c.params.slide_threshold_mm_s = as_double(k, v); }},
      {"thresholds.contact_mm",
       [](Config& c, const auto& k, const auto& v) { c.context.contact_threshold_mm = as_double(k, v); }},
      {"thresholds.release_mm",
       [](Config& c, const auto& k, const auto& v) { c.context.release_threshold_mm = as_double(k, v); }},
      {"thresholds.window",
       [](Config& c, const auto& k, const auto& v) { c.context.stabilization_window = as_int<int>(k, v); }},
      {"thresholds.lambda",
       [](Config& c, const auto& k, const auto& v) { c.context.smoothing_lambda = as_double(k, v); }},
      {"thresholds.sharp_deg",
       [](Config& c, const auto& k, const auto& v) { c.thresholds.sharp_dihedral_deg = as_double(k, v); }},
      {"thresholds.corner_deficit_deg",
       [](Config& c, const auto& k, const auto& v) { c.thresholds.corner_deficit_deg = as_double(k, v); }},
      {"thresholds.corner_edges",
       [](Config& c, const auto& k, const auto& v) { c.thresholds.corner_min_sharp_edges = as_int<int>(k, v); }},
      {"thresholds.band_mm", [](Config& c, const auto& k, const auto& v) { c.thresholds.band_mm = as_double(k, v); }},
      {"calibration.scan",
       [](Config& c, const auto& k, const auto& v) {
         if (v == "compact") c.scan = stimulus::ScanMode::Compact;
         else if (v == "fixed") c.scan = stimulus::ScanMode::FixedSlot;
         else bad(k + ": expected 'compact' or 'fixed'");
       }},
      {"seed", [](Config& c, const auto& k, const auto& v) { c.seed = as_int<std::uint64_t>(k, v); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void set_config_value(Config& config, const std::string& key_in, const std::string& value) {
  const auto key = trim(key_in);
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) {
    std::vector<std::string> hits;
    for (const auto& [name, _] : table) {
      if (name.size() > key.size() && name.compare(name.size() - key.size(), key.size(), key) == 0 &&
          name[name.size() - key.size() - 1] == '.') {
        hits.push_back(name);
      }
    }
    if (hits.empty()) bad("unknown config key '" + key + "'");
    if (hits.size() > 1) bad("ambiguous config key '" + key + "'");
    it = table.find(hits.front());
  }
  it->second(config, it->first, trim(value));
}

void apply_override(Config& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) bad("expected key=value, got '" + assignment + "'");
  set_config_value(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

Config parse_config(const std::string& text, Config base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad("config line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (!setters().count(key)) bad("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    set_config_value(base, key, line.substr(eq + 1));
  }
  return base;
}

Config read_config(const std::string& path, Config base) {
  return parse_config(geometry::read_text_file(path), std::move(base));
}

void Config::validate() const {
  try {
    params.validate();
    context.validate();
  } catch (const Error& e) {
    bad(e.what());
  }
  if (!(thresholds.sharp_dihedral_deg > 0.0 && thresholds.sharp_dihedral_deg < 180.0)) {
    bad("thresholds.sharp_deg must be in (0, 180)");
  }
  if (!(thresholds.corner_deficit_deg > 0.0 && thresholds.corner_deficit_deg < 360.0)) {
    bad("thresholds.corner_deficit_deg must be in (0, 360)");
  }
  if (thresholds.corner_min_sharp_edges < 2 || thresholds.corner_min_sharp_edges > 16) {
    bad("thresholds.corner_edges must be in [2, 16]");
  }
  if (!(thresholds.band_mm > 0.0 && thresholds.band_mm <= 50.0)) bad("thresholds.band_mm must be in (0, 50]");
}

}  // namespace tactile::cli
