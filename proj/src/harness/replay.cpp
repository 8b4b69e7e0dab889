#include "tactile/harness/replay.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "tactile/context/orientation.hpp"
#include "tactile/error.hpp"
#include "tactile/patterns/synthesis.hpp"
#include "tactile/stimulus/queue.hpp"

namespace tactile::harness {

namespace {

Vec3 slerp(const Vec3& a, const Vec3& b, double u) {
  const double c = std::clamp(dot(a, b), -1.0, 1.0);
  const double w = std::acos(c);
  const double s = std::sin(w);
  if (s < 1e-9) {
    if (c > 0.0) return normalized(a * (1.0 - u) + b * u);
    return u < 0.5 ? a : b;
  }
  return a * (std::sin((1.0 - u) * w) / s) + b * (std::sin(u * w) / s);
}

double micros(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double, std::micro>(d).count();
}

}  // namespace

Pose interpolate_pose(const PoseTrace& trace, double t) {
  if (trace.empty()) throw Error(ErrorCode::EmptyTrace, "empty pose trace");
  if (t <= trace.front().t) return trace.front();
  if (t >= trace.back().t) return trace.back();
  const auto hi = std::upper_bound(trace.begin(), trace.end(), t,
                                   [](double v, const Pose& p) { return v < p.t; });
  const auto& b = *hi;
  const auto& a = *(hi - 1);
  const double u = (t - a.t) / (b.t - a.t);
  Pose p;
  p.t = t;
  p.position = a.position + (b.position - a.position) * u;
  p.pad_normal = normalized(slerp(a.pad_normal, b.pad_normal, u));
  const Vec3 f = normalized(reject(slerp(a.pad_forward, b.pad_forward, u), p.pad_normal));
  p.pad_forward = norm2(f) > 0.5 ? f : a.pad_forward;
  return p;
}

std::string frame_log_header() { return "# tick mode feature n shift frames grid\n"; }

ReplayResult run_replay(const geometry::SceneModel& scene, const PoseTrace& trace,
                        const ReplayConfig& config) {
  using clock = std::chrono::steady_clock;
  if (trace.size() < 2) throw Error(ErrorCode::EmptyTrace, "trace needs at least two poses");
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (!(trace[i].t > trace[i - 1].t)) {
      throw Error(ErrorCode::NonMonotoneTimestamps,
                  "pose " + std::to_string(i) + ": t=" + std::to_string(trace[i].t) + " does not advance");
    }
  }
  config.params.validate();
  config.context.validate();
  if (!(config.tick_rate_hz > 0.0)) throw Error(ErrorCode::ConfigError, "tick rate must be > 0");

  const double t0 = trace.front().t;
  const double t_end = trace.back().t;
  const double rate = config.tick_rate_hz;
  const auto ticks = static_cast<std::int64_t>(std::ceil((t_end - t0) * rate - 1e-9));

  ReplayResult result;
  result.reports.reserve(static_cast<std::size_t>(ticks));

  stimulus::BoundedQueue<std::string> log_queue(64, stimulus::OverflowPolicy::Block);
  std::string log = frame_log_header();
  std::thread writer;
  if (config.threaded_logging) {
    writer = std::thread([&] {
      while (auto line = log_queue.pop()) log += *line;
    });
  }
  auto emit_log = [&](std::string line) {
    if (config.threaded_logging) log_queue.push(std::move(line));
    else log += line;
  };

  stimulus::BoundedQueue<stimulus::StimulationSchedule> frames(config.queue_depth);
  stimulus::StimulationSchedule current;
  std::ostringstream schedule_csv;
  stimulus::write_schedule_csv_header(schedule_csv);
  const double cycle_s = stimulus::kCyclePeriodUs * 1e-6;

  context::InteractionState state;
  context::KinematicsFilter filter(config.context.smoothing_lambda);
  Pose prev = trace.front();
  double prev_t = t0;

  try {
    for (std::int64_t k = 0; k < ticks; ++k) {
      const double t = std::min(t0 + static_cast<double>(k + 1) / rate, t_end);
      const Pose pose = interpolate_pose(trace, t);

      const auto start = clock::now();
      const auto contact = geometry::query_contact(scene, pose.position, pose.frame());
      const auto raw = context::estimate_kinematics(prev, pose, contact);
      const auto kin = filter.update(raw, pose, contact);
      context::TickObservation obs{contact, kin, std::nullopt};
      if (contact.signed_distance <= config.context.release_threshold_mm) {
        const auto directed = context::pad_directed_contact(pose, contact);
        if (context::theta_defined(pose, directed)) {
          obs.orientation = context::quantize_orientation(context::compute_theta(pose, directed));
        }
      }
      state = context::step_fsm(state, obs, t - prev_t, config.context, config.params);
      if (state.mode == context::Mode::Idle) filter.reset();

      const auto synth_start = clock::now();
      const auto tick_frames = patterns::synthesize_tick(state, contact, kin, config.params);
      std::vector<stimulus::StimulationSchedule> schedules;
      schedules.reserve(tick_frames.size());
      for (const auto& f : tick_frames) {
        schedules.push_back(stimulus::compile_schedule(f, config.calibration, config.scan));
      }
      const auto stop = clock::now();

      TickReport r;
      r.tick = k;
      r.t = t;
      r.compute_us = micros(stop - synth_start);
      r.inclusive_us = micros(stop - start);
      r.mode = state.mode;
      if (state.mode != context::Mode::Idle) r.feature = state.stable_feature;
      r.frame_index = state.pattern_clock.frame_index();
      r.shift_count = state.pattern_clock.shift_count();
      r.frames = static_cast<int>(tick_frames.size());
      for (const auto& s : schedules) r.events += static_cast<int>(s.events.size());
      result.reports.push_back(r);

      std::ostringstream line;
      line << k << ' ' << context::mode_name(r.mode) << ' '
           << (r.feature ? context::feature_key_name(*r.feature) : std::string("-")) << ' ' << r.frame_index
           << ' ' << r.shift_count << ' ' << r.frames << ' ' << tick_frames.back().grid_string() << '\n';
      emit_log(line.str());

      for (auto& s : schedules) frames.push(std::move(s));

      // Cycles starting inside this tick's interval see its frames.
      while (t0 + static_cast<double>(result.cycles) * cycle_s < t - 1e-12) {
        if (auto s = frames.try_pop()) current = std::move(*s);
        stimulus::write_schedule_csv(schedule_csv, result.cycles, current);
        if (config.keep_device_frames) {
          result.device_frames.push_back(
              stimulus::encode_device_frame(current, static_cast<std::uint8_t>(result.cycles & 0xFF)));
        }
        ++result.cycles;
      }

      prev = pose;
      prev_t = t;
    }
  } catch (...) {
    log_queue.close();
    if (writer.joinable()) writer.join();
    throw;
  }
  log_queue.close();
  if (writer.joinable()) writer.join();

  result.frame_log = std::move(log);
  result.schedule_csv = schedule_csv.str();
  result.dropped_frames = frames.dropped();
  return result;
}

Metrics summarize(const std::vector<TickReport>& reports) {
  Metrics m;
  m.ticks = reports.size();
  if (reports.empty()) return m;
  std::vector<double> ex, in;
  ex.reserve(reports.size());
  in.reserve(reports.size());
  for (const auto& r : reports) {
    ex.push_back(r.compute_us);
    in.push_back(r.inclusive_us);
    if (r.compute_us > kBudgetUs) ++m.budget_violations;
    ++m.frames_histogram[r.frames];
    ++m.mode_ticks[std::string(context::mode_name(r.mode))];
    m.events += static_cast<std::size_t>(r.events);
  }
  std::sort(ex.begin(), ex.end());
  std::sort(in.begin(), in.end());
  auto rank = [](const std::vector<double>& v, double p) {
    const auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
    return v[std::clamp<std::size_t>(idx, 1, v.size()) - 1];
  };
  m.p50_us = rank(ex, 0.50);
  m.p95_us = rank(ex, 0.95);
  m.max_us = ex.back();
  m.inclusive_p50_us = rank(in, 0.50);
  m.inclusive_p95_us = rank(in, 0.95);
  m.inclusive_max_us = in.back();
  return m;
}

std::string metrics_json(const Metrics& m, std::int64_t cycles, std::size_t dropped) {
  nlohmann::ordered_json j;
  j["ticks"] = m.ticks;
  j["budget_us"] = kBudgetUs;
  j["exclusive_us"] = {{"p50", m.p50_us}, {"p95", m.p95_us}, {"max", m.max_us}};
  j["inclusive_us"] = {{"p50", m.inclusive_p50_us}, {"p95", m.inclusive_p95_us}, {"max", m.inclusive_max_us}};
  j["budget_violations"] = m.budget_violations;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [frames, count] : m.frames_histogram) hist[std::to_string(frames)] = count;
  j["frames_per_tick"] = hist;
  nlohmann::ordered_json modes = nlohmann::ordered_json::object();
  for (const auto& [mode, count] : m.mode_ticks) modes[mode] = count;
  j["mode_ticks"] = modes;
  j["events"] = m.events;
  if (cycles >= 0) {
    j["cycles"] = cycles;
    j["dropped_frames"] = dropped;
  }
  return j.dump(2) + "\n";
}

}  // namespace tactile::harness
