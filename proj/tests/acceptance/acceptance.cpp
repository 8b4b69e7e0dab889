// Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tactile/context/fsm.hpp"
#include "tactile/context/orientation.hpp"
#include "tactile/error.hpp"
#include "tactile/geometry/scene.hpp"
#include "tactile/harness/replay.hpp"
#include "tactile/harness/trace.hpp"
#include "tactile/patterns/synthesis.hpp"
#include "tactile/stimulus/device.hpp"
#include "tactile/stimulus/schedule.hpp"

using namespace tactile;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

geometry::SceneModel scene_of(geometry::TriangleMesh mesh, std::uint8_t level = 0) {
  std::vector<geometry::MeshSource> src;
  src.push_back({std::move(mesh), geometry::MaterialMap::uniform(level)});
  return geometry::load_scene(std::move(src));
}

// 1. n(t) against an integer micrometre displacement accumulator.
Outcome velocity_integration() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> speed(0, 80), ms(1, 50), pieces(1, 40);
  const patterns::SynthesisParams params;
  long checks = 0;
  for (int profile = 0; profile < 500; ++profile) {
    patterns::PatternClock clock;
    long long um = 0;
    const int n = pieces(rng);
    for (int i = 0; i < n; ++i) {
      const int v = speed(rng);
      const int dur = ms(rng);
      // Sub-step each piece at 72 Hz-like steps of 1 ms to exercise accumulation.
      for (int step = 0; step < dur; ++step) {
        clock = patterns::advance_approach(clock, v, 1e-3, params);
        um += v;  // mm/s * 1 ms = 1 um per (mm/s)
        if (clock.frame_index() != um / 2000) {
          return {false, "profile " + std::to_string(profile) + ": n=" + std::to_string(clock.frame_index()) +
                             " displacement_um=" + std::to_string(um)};
        }
        ++checks;
      }
    }
  }
  const double t = seconds_since(start);
  if (t >= 5.0) return {false, "runtime " + std::to_string(t) + " s"};
  return {true, "500 profiles, " + std::to_string(checks) + " exact checks, " + std::to_string(t) + " s"};
}

// 2. 20 mm/s for 1 s: 10 shifts at k=1, 5 at k=2, 0 at k=0; clock level
// and through the full replay on a textured plane.
Outcome texture_rate() {
  const auto start = Clock::now();
  const patterns::SynthesisParams params;
  std::string detail;
  for (int k : {0, 1, 2}) {
    const int expect = k == 0 ? 0 : 10 / k;
    patterns::PatternClock c;
    for (int i = 0; i < 72; ++i) c = patterns::advance_texture(c, 20.0, 1.0 / 72.0, k, params);
    if (c.shift_count() != expect) return {false, "clock k=" + std::to_string(k) + ": " + std::to_string(c.shift_count())};

    const auto scene = scene_of(geometry::make_plane(400, 8, 0.0), static_cast<std::uint8_t>(k));
    harness::TraceSpec spec;
    spec.kind = harness::TraceKind::Slide;
    harness::TraceSegment seg;
    seg.kind = harness::TraceKind::Slide;
    seg.start = Vec3{0, 0, 0.5};
    spec.segments.push_back(seg);
    const auto r = harness::run_replay(scene, harness::synth_trace(spec));
    const auto shifts = r.reports.back().shift_count;
    if (shifts != expect) return {false, "replay k=" + std::to_string(k) + ": " + std::to_string(shifts)};
    detail += "k=" + std::to_string(k) + ":" + std::to_string(shifts) + " ";
  }
  const double t = seconds_since(start);
  if (t >= 1.0) return {false, "runtime " + std::to_string(t) + " s"};
  return {true, detail + std::to_string(t) + " s"};
}

// 3. Sweep in integer tenths of a degree so the reference intervals are exact.
Outcome orientation_buckets() {
  using context::OrientationLevel;
  for (int i = -900; i <= 900; ++i) {
    const double theta = i / 10.0;
    OrientationLevel expect;
    if (i < -300) expect = OrientationLevel::SteepLeft;
    else if (i < 0) expect = OrientationLevel::ShallowLeft;
    else if (i < 300) expect = OrientationLevel::ShallowRight;
    else expect = OrientationLevel::SteepRight;
    const auto got = context::quantize_orientation(theta);
    if (got.level != expect) return {false, "theta=" + std::to_string(theta)};
  }
  if (context::quantize_orientation(0.0).level != OrientationLevel::ShallowRight ||
      context::quantize_orientation(90.0).level != OrientationLevel::SteepRight) {
    return {false, "closed endpoints"};
  }
  return {true, "1801 angles"};
}

// 4. Bin vectors from compass angles, independent of the implementation table.
Outcome directional_coupling() {
  int checks = 0;
  for (int b = 0; b < 8; ++b) {
    const double a = b * 45.0 * 3.14159265358979323846 / 180.0;
    const int col = static_cast<int>(std::lround(std::sin(a)));
    const int row = -static_cast<int>(std::lround(std::cos(a)));  // forward is row 0
    const auto bin = static_cast<context::DirectionBin>(b);
    for (int count = 0; count <= 12; ++count) {
      for (int k : {0, 1, 2}) {
        const auto plus = patterns::texture_translation(bin, count, k, +1);
        const auto minus = patterns::texture_translation(bin, count, k, -1);
        if (plus.dcol != -col * count * k || plus.drow != -row * count * k) {
          return {false, "bin " + std::to_string(b) + " count " + std::to_string(count)};
        }
        if (minus.dcol != -plus.dcol || minus.drow != -plus.drow) return {false, "beta flip, bin " + std::to_string(b)};
        // The pattern moves by the same wrapped vector: track one lattice cell.
        const std::uint64_t cell = std::uint64_t{1} << patterns::cell_bit(2, 2);
        const auto moved = patterns::texture_pattern(patterns::PatternFrame(cell, {}), count, bin, k, +1);
        const int r = ((2 + plus.drow) % 6 + 6) % 6;
        const int c = ((2 + plus.dcol) % 6 + 6) % 6;
        if (moved.lattice() != (std::uint64_t{1} << patterns::cell_bit(r, c))) {
          return {false, "pattern translation, bin " + std::to_string(b)};
        }
        ++checks;
      }
    }
  }
  const auto right = patterns::texture_translation(context::DirectionBin::Right, 1, 1, +1);
  if (right.dcol != -1 || right.drow != 0) return {false, "right movement does not shift left"};
  return {true, std::to_string(checks) + " (bin, count, k) cases"};
}

Outcome check_schedule(const stimulus::StimulationSchedule& s) {
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const auto& e = s.events[i];
    if (e.width_us != 200) return {false, "width " + std::to_string(e.width_us)};
    if (e.amplitude_ua % 10 != 0 || e.amplitude_ua > 10000) return {false, "amplitude " + std::to_string(e.amplitude_ua)};
    if (e.start_us + e.width_us > 8000) return {false, "event past the cycle"};
    if (i > 0 && e.start_us - (s.events[i - 1].start_us + s.events[i - 1].width_us) < 45) return {false, "gap < 45 us"};
  }
  return {};
}

// 5.
Outcome schedule_feasibility() {
  const auto full = stimulus::compile_schedule(patterns::PatternFrame(patterns::PatternFrame::kLatticeMask, {}),
                                               stimulus::CalibrationProfile::uniform(10000));
  if (full.events.size() != 32 || full.occupied_us() != 7840) {
    return {false, "worst case occupies " + std::to_string(full.occupied_us()) + " us"};
  }
  if (auto o = check_schedule(full); !o.pass) return o;
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<std::uint64_t> bits(0, patterns::PatternFrame::kLatticeMask);
  std::uniform_int_distribution<int> amp(0, 1000);
  std::uniform_real_distribution<double> scale(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    stimulus::CalibrationProfile p;
    for (auto& a : p.region_ua) a = amp(rng) * 10;
    p.global_scale = scale(rng);
    const auto s = stimulus::compile_schedule(patterns::PatternFrame(bits(rng), {}), p,
                                              i % 2 ? stimulus::ScanMode::FixedSlot : stimulus::ScanMode::Compact);
    if (auto o = check_schedule(s); !o.pass) return {false, "fuzz " + std::to_string(i) + ": " + o.detail};
  }
  return {true, "worst case 7840 us; 10000 fuzzed frames"};
}

// 6. Brute-force closest point, analytically labelled; points within
// 0.01 mm of the band boundary are ambiguous and skipped.
Outcome geometry_oracle() {
  const Vec3 size{200, 200, 200};
  const auto mesh = geometry::make_box({0, 0, 0}, size);
  const auto cube = scene_of(mesh);
  const auto feats = oracle::box_features({0, 0, 0}, size);
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-115.0, 115.0), off(-5.0, 5.0), unit(0.0, 1.0);
  std::uniform_int_distribution<int> edge(0, 11), corner(0, 7);
  int agree = 0, checked = 0, skipped = 0;
  for (int i = 0; i < 10000; ++i) {
    Vec3 p;
    switch (i % 3) {
      case 0: p = {u(rng), u(rng), u(rng)}; break;
      case 1: {
        const auto& [a, b] = feats.edges[edge(rng)];
        p = a + (b - a) * unit(rng) + Vec3{off(rng), off(rng), off(rng)};
        break;
      }
      default: p = feats.corners[corner(rng)] + Vec3{off(rng), off(rng), off(rng)}; break;
    }
    const auto ref = oracle::brute_closest(mesh, p);
    const auto lab = oracle::classify_box_point(feats, ref.point, 2.0);
    if (std::abs(lab.corner_distance - 2.0) < 0.01 || std::abs(lab.edge_distance - 2.0) < 0.01) {
      ++skipped;
      continue;
    }
    ++checked;
    const auto c = geometry::query_contact(cube, p);
    if (static_cast<int>(c.feature) == static_cast<int>(lab.label) && std::abs(std::abs(c.signed_distance) - ref.distance) < 1e-6) {
      ++agree;
    }
  }
  if (agree != checked) return {false, std::to_string(checked - agree) + " of " + std::to_string(checked) + " cube points disagree"};

  const auto sphere = scene_of(geometry::make_icosphere({0, 0, 0}, 50.0, 3));
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 p = normalized(Vec3{g(rng), g(rng), g(rng)}) * (35.0 + 30.0 * unit(rng));
    if (geometry::query_contact(sphere, p).feature != geometry::Feature::Face) return {false, "sphere point not Face"};
  }
  return {true, std::to_string(checked) + " cube points agree (" + std::to_string(skipped) +
                    " in the ambiguity band), 2000 sphere points Face"};
}

// 7. All four arcs through the full pipeline and at the state machine, plus
// no flicker under alternating features.
Outcome fsm_behaviour() {
  using context::Mode;
  const auto cube = scene_of(geometry::make_box({0, 0, 0}, {200, 200, 200}));
  auto modes_of = [&](const std::string& text) {
    std::vector<Mode> m;
    for (const auto& r : harness::run_replay(cube, harness::synth_trace(harness::parse_trace_spec(text))).reports) {
      m.push_back(r.mode);
    }
    return m;
  };
  auto has_arc = [](const std::vector<Mode>& m, Mode a, Mode b) {
    for (std::size_t i = 1; i < m.size(); ++i) {
      if (m[i - 1] == a && m[i] == b) return true;
    }
    return false;
  };
  // Press in, hold, pull away slowly.
  const auto press = modes_of(
      "kind = composite\nsegments = down,up\ndown.kind = approach\ndown.start = 0,0,104\ndown.speed_mm_s = 10\n"
      "down.duration_s = 0.5\nup.kind = slide\nup.direction = 0,0,1\nup.speed_mm_s = 20\nup.duration_s = 1\n");
  // Graze: touch and leave faster than the stabilization window.
  const auto graze = modes_of(
      "kind = composite\nsegments = down,up\ndown.kind = approach\ndown.start = 0,0,101.5\n"
      "down.speed_mm_s = 72\ndown.duration_s = 0.0139\nup.kind = slide\nup.direction = 0,0,1\n"
      "up.speed_mm_s = 720\nup.duration_s = 0.0278\n");
  if (press.front() != Mode::Idle || !has_arc(press, Mode::Idle, Mode::Approaching) ||
      !has_arc(press, Mode::Approaching, Mode::Interacting) || !has_arc(press, Mode::Interacting, Mode::Idle)) {
    return {false, "press trace misses an arc"};
  }
  if (!has_arc(graze, Mode::Approaching, Mode::Idle) || has_arc(graze, Mode::Approaching, Mode::Interacting)) {
    return {false, "graze trace misses Approaching -> Idle"};
  }

  context::InteractionState s;
  for (int i = 0; i < 1000; ++i) {
    context::TickObservation o;
    o.contact.signed_distance = 0.5;
    o.contact.feature = i % 2 ? geometry::Feature::Edge : geometry::Feature::Face;
    if (i % 2) o.contact.edge_orientation_bin = geometry::EdgeBin::V;
    s = context::step_fsm(s, o, 1.0 / 72.0);
    if (s.mode == Mode::Interacting) return {false, "alternating features reached Interacting"};
  }
  return {true, "Idle->Approaching->Interacting->Idle, Approaching->Idle, 1000 alternating ticks"};
}

harness::PoseTrace benchmark_trace() {
  harness::TraceSpec spec;
  spec.kind = harness::TraceKind::Composite;
  spec.jitter_mm = 0.05;
  spec.seed = 77;
  auto seg = [](harness::TraceKind kind, int steps) {
    harness::TraceSegment s;
    s.kind = kind;
    s.duration_s = steps / 72.0;
    return s;
  };
  auto down = seg(harness::TraceKind::Approach, 108);
  down.start = Vec3{-4, -4, 76};
  down.speed_mm_s = 10;
  spec.segments.push_back(down);
  const Vec3 dirs[] = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
  for (const auto& d : dirs) {
    auto s = seg(harness::TraceKind::Slide, 432);
    s.direction = d;
    s.speed_mm_s = 1.5;
    spec.segments.push_back(s);
  }
  auto hold = seg(harness::TraceKind::HoldAtAngle, 164);
  hold.point = {0, 0, 60};
  hold.theta_deg = -40;
  spec.segments.push_back(hold);
  return harness::synth_trace(spec);
}

struct BunnyRun {
  harness::ReplayResult a, b;
  double build_s = 0;
};

BunnyRun& bunny() {
  static BunnyRun run = [] {
    BunnyRun r;
    const auto t = Clock::now();
    const auto scene = scene_of(geometry::make_blob({0, 0, 0}, 60.0, 6), 1);
    r.build_s = seconds_since(t);
    const auto trace = benchmark_trace();
    r.a = harness::run_replay(scene, trace);
    r.b = harness::run_replay(scene, trace);
    return r;
  }();
  return run;
}

// 8.
Outcome determinism() {
  const auto& r = bunny();
  if (r.a.frame_log != r.b.frame_log) return {false, "frame logs differ"};
  if (r.a.schedule_csv != r.b.schedule_csv) return {false, "schedule logs differ"};
  std::size_t active = 0;
  for (const auto& t : r.a.reports) active += t.mode != context::Mode::Idle ? 1 : 0;
  return {true, std::to_string(r.a.reports.size()) + " ticks (" + std::to_string(active) + " in contact), " +
                    std::to_string(r.a.frame_log.size()) + " + " + std::to_string(r.a.schedule_csv.size()) +
                    " log bytes identical"};
}

// 9.
Outcome performance() {
  const auto& r = bunny();
  if (r.a.reports.size() != 2000) return {false, "expected 2000 ticks, got " + std::to_string(r.a.reports.size())};
  const auto m = harness::summarize(r.a.reports);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "81920 triangles; synthesis+compile p50 %.1f p95 %.1f max %.1f us; with geometry p50 %.1f p95 %.1f "
                "max %.1f us",
                m.p50_us, m.p95_us, m.max_us, m.inclusive_p50_us, m.inclusive_p95_us, m.inclusive_max_us);
  return {m.p95_us < 14000.0, buf};
}

// 10.
Outcome wire_round_trip() {
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<std::uint64_t> bits(0, patterns::PatternFrame::kLatticeMask);
  std::uniform_int_distribution<int> amp(0, 1000), flip(1, 255);
  long corruptions = 0;
  for (int i = 0; i < 10000; ++i) {
    stimulus::CalibrationProfile p;
    for (auto& a : p.region_ua) a = amp(rng) * 10;
    const auto s = stimulus::compile_schedule(patterns::PatternFrame(bits(rng), {}), p);
    const auto seq = static_cast<std::uint8_t>(i & 0xFF);
    const auto f = stimulus::encode_device_frame(s, seq);
    const auto d = stimulus::decode_device_frame(f);
    if (d.seq != seq) return {false, "sequence mismatch"};
    // Zero-amplitude events carry no current and have no wire presence.
    std::vector<stimulus::StimEvent> live;
    for (const auto& e : s.events) {
      if (e.amplitude_ua > 0) live.push_back(e);
    }
    if (d.schedule.events.size() != live.size()) return {false, "event count mismatch in schedule " + std::to_string(i)};
    for (std::size_t j = 0; j < live.size(); ++j) {
      const auto& x = live[j];
      const auto& y = d.schedule.events[j];
      if (x.electrode != y.electrode || x.width_us != y.width_us || std::abs(x.amplitude_ua - y.amplitude_ua) >= 40) {
        return {false, "event mismatch in schedule " + std::to_string(i)};
      }
    }
    for (std::size_t byte = 0; byte < f.size(); ++byte) {
      auto g = f;
      g[byte] ^= static_cast<std::uint8_t>(flip(rng));
      try {
        stimulus::decode_device_frame(g);
        return {false, "undetected corruption at byte " + std::to_string(byte)};
      } catch (const Error&) {
        ++corruptions;
      }
    }
  }
  return {true, "10000 schedules, " + std::to_string(corruptions) + " single-byte corruptions detected"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"velocity integration oracle", velocity_integration},
      {"texture rate 10 Hz / 5 Hz / 0", texture_rate},
      {"orientation bucket conformance", orientation_buckets},
      {"directional coupling", directional_coupling},
      {"schedule feasibility", schedule_feasibility},
      {"geometry oracle", geometry_oracle},
      {"state machine behaviour", fsm_behaviour},
      {"replay determinism", determinism},
      {"performance budget", performance},
      {"wire round trip", wire_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
