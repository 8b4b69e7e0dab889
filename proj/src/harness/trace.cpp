#include "tactile/harness/trace.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "tactile/error.hpp"
#include "tactile/geometry/obj.hpp"

namespace tactile::harness {

std::string trace_kind_name(TraceKind k) {
  switch (k) {
    case TraceKind::Approach: return "approach";
    case TraceKind::HoldAtAngle: return "hold_at_angle";
    case TraceKind::Slide: return "slide";
    case TraceKind::Composite: return "composite";
  }
  return "?";
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::BadSpec, msg); }

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double d = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, d);
  if (ec != std::errc{} || p != end || !std::isfinite(d)) bad(key + ": bad number '" + v + "'");
  return d;
}

Vec3 to_vec(const std::string& key, const std::string& v) {
  std::vector<double> xs;
  std::stringstream ss(v);
  std::string part;
  while (std::getline(ss, part, ',')) xs.push_back(to_double(key, trim(part)));
  if (xs.size() != 3) bad(key + ": expected x,y,z");
  return {xs[0], xs[1], xs[2]};
}

TraceKind to_kind(const std::string& v, bool allow_composite) {
  if (v == "approach") return TraceKind::Approach;
  if (v == "hold_at_angle") return TraceKind::HoldAtAngle;
  if (v == "slide") return TraceKind::Slide;
  if (v == "composite" && allow_composite) return TraceKind::Composite;
  bad("unknown trace kind '" + v + "'");
}

using KeyMap = std::map<std::string, std::string>;

TraceSegment parse_segment(const KeyMap& keys, const std::string& prefix, std::set<std::string>& used) {
  auto get = [&](const char* name) -> const std::string* {
    const auto it = keys.find(prefix + name);
    if (it == keys.end()) return nullptr;
    used.insert(it->first);
    return &it->second;
  };
  TraceSegment s;
  const auto* kind = get("kind");
  if (!kind) bad("missing key '" + prefix + "kind'");
  s.kind = to_kind(*kind, false);
  if (const auto* v = get("duration_s")) s.duration_s = to_double(prefix + "duration_s", *v);
  if (const auto* v = get("speed_mm_s")) s.speed_mm_s = to_double(prefix + "speed_mm_s", *v);
  if (const auto* v = get("start")) s.start = to_vec(prefix + "start", *v);
  if (const auto* v = get("pad_normal")) s.pad_normal = to_vec(prefix + "pad_normal", *v);
  if (const auto* v = get("pad_forward")) s.pad_forward = to_vec(prefix + "pad_forward", *v);
  if (const auto* v = get("direction")) s.direction = to_vec(prefix + "direction", *v);
  if (const auto* v = get("point")) s.point = to_vec(prefix + "point", *v);
  if (const auto* v = get("surface_normal")) s.surface_normal = to_vec(prefix + "surface_normal", *v);
  if (const auto* v = get("heading")) s.heading = to_vec(prefix + "heading", *v);
  if (const auto* v = get("theta_deg")) s.theta_deg = to_double(prefix + "theta_deg", *v);
  if (const auto* v = get("pitch_deg")) s.pitch_deg = to_double(prefix + "pitch_deg", *v);
  if (const auto* v = get("standoff_mm")) s.standoff_mm = to_double(prefix + "standoff_mm", *v);
  return s;
}

void validate_segment(const TraceSegment& s, const std::string& name) {
  if (!(s.duration_s > 0.0)) bad(name + ": duration must be > 0");
  if (!(s.speed_mm_s >= 0.0)) bad(name + ": speed must be >= 0");
  if (norm(s.pad_normal) < 1e-9 || norm(s.pad_forward) < 1e-9) bad(name + ": zero pad axis");
  if (std::abs(dot(normalized(s.pad_normal), normalized(s.pad_forward))) > 1e-6) {
    bad(name + ": pad_normal and pad_forward are not orthogonal");
  }
  if (s.kind == TraceKind::Slide && norm(s.direction) < 1e-9) bad(name + ": zero slide direction");
  if (s.kind == TraceKind::HoldAtAngle) {
    if (!(s.theta_deg > -90.0 && s.theta_deg < 90.0)) bad(name + ": theta must be in (-90, 90)");
    if (!(s.pitch_deg > 0.0 && s.pitch_deg < 90.0)) bad(name + ": pitch must be in (0, 90)");
    if (norm(s.surface_normal) < 1e-9) bad(name + ": zero surface normal");
    if (norm(reject(s.heading, normalized(s.surface_normal))) < 1e-9) bad(name + ": heading along the surface normal");
  }
}

}  // namespace

TraceSpec parse_trace_spec(const std::string& text, std::optional<std::uint64_t> seed_override) {
  KeyMap keys;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad("line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) bad("line " + std::to_string(line_no) + ": empty key");
    if (!keys.emplace(key, trim(line.substr(eq + 1))).second) bad("duplicate key '" + key + "'");
  }

  std::set<std::string> used;
  auto take = [&](const std::string& k) -> const std::string* {
    const auto it = keys.find(k);
    if (it == keys.end()) return nullptr;
    used.insert(k);
    return &it->second;
  };

  TraceSpec spec;
  const auto* kind = take("kind");
  if (!kind) bad("missing key 'kind'");
  spec.kind = to_kind(*kind, true);
  if (const auto* v = take("rate_hz")) spec.rate_hz = to_double("rate_hz", *v);
  if (const auto* v = take("jitter_mm")) spec.jitter_mm = to_double("jitter_mm", *v);
  if (const auto* v = take("seed")) {
    std::uint64_t seed = 0;
    const auto* end = v->data() + v->size();
    auto [p, ec] = std::from_chars(v->data(), end, seed);
    if (ec != std::errc{} || p != end) bad("seed: bad integer '" + *v + "'");
    spec.seed = seed;
  }

  if (spec.kind == TraceKind::Composite) {
    const auto* names = take("segments");
    if (!names || names->empty()) bad("composite trace needs 'segments = a,b,...'");
    std::stringstream ss(*names);
    std::string name;
    std::set<std::string> seen;
    while (std::getline(ss, name, ',')) {
      name = trim(name);
      if (name.empty() || !seen.insert(name).second) bad("bad or repeated segment name '" + name + "'");
      spec.segments.push_back(parse_segment(keys, name + ".", used));
    }
  } else {
    // The kind key is shared by the spec and its single segment.
    keys["kind"] = *kind;
    spec.segments.push_back(parse_segment(keys, "", used));
  }
  for (const auto& [k, v] : keys) {
    if (!used.count(k)) bad("unknown key '" + k + "'");
  }
  if (seed_override) spec.seed = seed_override;
  if (!(spec.rate_hz > 0.0 && spec.rate_hz <= 10000.0)) bad("rate_hz must be in (0, 10000]");
  if (!(spec.jitter_mm >= 0.0)) bad("jitter_mm must be >= 0");
  if (spec.jitter_mm > 0.0 && !spec.seed) bad("jittered traces need a seed");
  for (std::size_t i = 0; i < spec.segments.size(); ++i) {
    validate_segment(spec.segments[i], "segment " + std::to_string(i));
  }
  return spec;
}

TraceSpec read_trace_spec(const std::string& path, std::optional<std::uint64_t> seed) {
  return parse_trace_spec(geometry::read_text_file(path), seed);
}

HoldFrame hold_frame(const Vec3& surface_normal, const Vec3& heading, double theta_deg, double pitch_deg) {
  const Vec3 n = normalized(surface_normal);
  const Vec3 h = normalized(reject(heading, n));
  const Vec3 r = cross(h, n);
  const double psi = deg_to_rad(pitch_deg);
  const double a = std::tan(psi) * std::tan(deg_to_rad(theta_deg));
  return {normalized(r * a - h * std::tan(psi) - n), h * std::cos(psi) - n * std::sin(psi)};
}

PoseTrace synth_trace(const TraceSpec& spec) {
  if (spec.segments.empty()) bad("trace has no segments");
  if (!(spec.rate_hz > 0.0)) bad("rate_hz must be > 0");
  if (spec.jitter_mm > 0.0 && !spec.seed) bad("jittered traces need a seed");
  PoseTrace out;
  double t0 = 0.0;
  Vec3 cursor{0, 0, 0};
  for (std::size_t si = 0; si < spec.segments.size(); ++si) {
    const auto& s = spec.segments[si];
    validate_segment(s, "segment " + std::to_string(si));
    const auto steps = static_cast<long>(std::llround(s.duration_s * spec.rate_hz));
    if (steps < 1) bad("segment " + std::to_string(si) + " is shorter than one sample");
    Pose base;
    base.pad_normal = normalized(s.pad_normal);
    base.pad_forward = normalized(s.pad_forward);
    Vec3 start = s.start.value_or(cursor);
    Vec3 velocity{};
    switch (s.kind) {
      case TraceKind::Approach: velocity = base.pad_normal * s.speed_mm_s; break;
      case TraceKind::Slide: velocity = normalized(s.direction) * s.speed_mm_s; break;
      case TraceKind::HoldAtAngle: {
        const auto f = hold_frame(s.surface_normal, s.heading, s.theta_deg, s.pitch_deg);
        base.pad_normal = f.pad_normal;
        base.pad_forward = f.pad_forward;
        start = s.point + normalized(s.surface_normal) * s.standoff_mm;
        break;
      }
      case TraceKind::Composite: bad("nested composite");
    }
    for (long i = (si == 0 ? 0 : 1); i <= steps; ++i) {
      // Time from the sample index, not accumulated, so rounding cannot drift.
      const double local = static_cast<double>(i) / spec.rate_hz;
      Pose p = base;
      p.t = t0 + local;
      p.position = start + velocity * local;
      out.push_back(p);
    }
    t0 += static_cast<double>(steps) / spec.rate_hz;
    cursor = start + velocity * (static_cast<double>(steps) / spec.rate_hz);
  }
  if (spec.jitter_mm > 0.0) {
    std::mt19937_64 rng(*spec.seed);
    std::normal_distribution<double> noise(0.0, spec.jitter_mm);
    for (auto& p : out) {
      const double dx = noise(rng);
      const double dy = noise(rng);
      const double dz = noise(rng);
      p.position = p.position + Vec3{dx, dy, dz};
    }
  }
  return out;
}

namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, p - buf);
}

}  // namespace

void write_pose_csv(std::ostream& out, const PoseTrace& trace) {
  out << "t,px,py,pz,nx,ny,nz,fx,fy,fz\n";
  for (const auto& p : trace) {
    const double vals[] = {p.t,
                           p.position.x, p.position.y, p.position.z,
                           p.pad_normal.x, p.pad_normal.y, p.pad_normal.z,
                           p.pad_forward.x, p.pad_forward.y, p.pad_forward.z};
    for (int i = 0; i < 10; ++i) {
      if (i) out << ',';
      put(out, vals[i]);
    }
    out << '\n';
  }
}

PoseTrace parse_pose_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  PoseTrace out;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "t,px,py,pz,nx,ny,nz,fx,fy,fz") {
        throw Error(ErrorCode::ParseError, "pose csv: expected header t,px,py,pz,nx,ny,nz,fx,fy,fz");
      }
      header = true;
      continue;
    }
    double v[10];
    std::stringstream ss(line);
    std::string cell;
    int n = 0;
    while (std::getline(ss, cell, ',')) {
      if (n == 10) {
        n = 11;
        break;
      }
      cell = trim(cell);
      const auto* end = cell.data() + cell.size();
      auto [p, ec] = std::from_chars(cell.data(), end, v[n]);
      if (ec != std::errc{} || p != end || !std::isfinite(v[n])) {
        throw Error(ErrorCode::ParseError, "pose csv line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      ++n;
    }
    if (n != 10) {
      throw Error(ErrorCode::ParseError, "pose csv line " + std::to_string(line_no) + ": expected 10 columns");
    }
    Pose p;
    p.t = v[0];
    p.position = {v[1], v[2], v[3]};
    p.pad_normal = {v[4], v[5], v[6]};
    p.pad_forward = {v[7], v[8], v[9]};
    if (std::abs(norm(p.pad_normal) - 1.0) > 1e-6 || std::abs(norm(p.pad_forward) - 1.0) > 1e-6 ||
        std::abs(dot(p.pad_normal, p.pad_forward)) > 1e-6) {
      throw Error(ErrorCode::ParseError, "pose csv line " + std::to_string(line_no) + ": pad axes not orthonormal");
    }
    out.push_back(p);
  }
  if (!header) throw Error(ErrorCode::ParseError, "pose csv: missing header");
  return out;
}

PoseTrace read_pose_csv(const std::string& path) { return parse_pose_csv(geometry::read_text_file(path)); }

}  // namespace tactile::harness
