#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tactile/context/fsm.hpp"
#include "tactile/geometry/scene.hpp"
#include "tactile/harness/trace.hpp"
#include "tactile/patterns/clock.hpp"
#include "tactile/stimulus/calibration.hpp"
#include "tactile/stimulus/device.hpp"
#include "tactile/stimulus/schedule.hpp"

namespace tactile::harness {

inline constexpr double kTickRateHz = 72.0;
inline constexpr double kBudgetUs = 14000.0;

struct ReplayConfig {
  patterns::SynthesisParams params;
  context::ContextConfig context;
  std::optional<stimulus::CalibrationProfile> calibration = stimulus::default_profile();
  stimulus::ScanMode scan = stimulus::ScanMode::Compact;
  double tick_rate_hz = kTickRateHz;
  std::size_t queue_depth = 4;
  bool threaded_logging = true;  // frame log written by a consumer thread
  bool keep_device_frames = false;
};

struct TickReport {
  std::int64_t tick = 0;
  double t = 0.0;
  double compute_us = 0.0;    // synthesis + schedule compile
  double inclusive_us = 0.0;  // also geometry query, kinematics and state machine
  context::Mode mode = context::Mode::Idle;
  std::optional<context::FeatureKey> feature;
  std::int64_t frame_index = 0;
  std::int64_t shift_count = 0;
  int frames = 1;  // > 1 when the tick was interpolated
  int events = 0;  // stimulation events across this tick's frames
};

struct ReplayResult {
  std::string frame_log;
  std::string schedule_csv;
  std::vector<TickReport> reports;
  std::vector<stimulus::DeviceFrame> device_frames;  // one per 125 Hz cycle, if kept
  std::int64_t cycles = 0;
  std::size_t dropped_frames = 0;
};

// Position lerp, slerp of both pad axes, then forward re-orthogonalized.
Pose interpolate_pose(const PoseTrace& trace, double t);

// Fixed 1/72 s ticks over the trace span: ceil(duration * 72) reports.
// Each tick feeds the frames it synthesizes into a depth-4 drop-oldest
// queue drained by a simulated 125 Hz stimulation cycle. Throws
// Error{EmptyTrace} for fewer than two poses and
// Error{NonMonotoneTimestamps}.
ReplayResult run_replay(const geometry::SceneModel& scene, const PoseTrace& trace,
                        const ReplayConfig& config = {});

std::string frame_log_header();

struct Metrics {
  std::size_t ticks = 0;
  double p50_us = 0, p95_us = 0, max_us = 0;
  double inclusive_p50_us = 0, inclusive_p95_us = 0, inclusive_max_us = 0;
  std::size_t budget_violations = 0;  // ticks with compute_us > 14 ms
  std::map<int, std::size_t> frames_histogram;
  std::map<std::string, std::size_t> mode_ticks;
  std::size_t events = 0;
};

// Nearest-rank percentiles. Returns zeros for an empty list.
Metrics summarize(const std::vector<TickReport>& reports);
std::string metrics_json(const Metrics& m, std::int64_t cycles = -1, std::size_t dropped = 0);

}  // namespace tactile::harness
