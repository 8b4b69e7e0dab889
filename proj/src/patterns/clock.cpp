#include "tactile/patterns/clock.hpp"

#include <cmath>

#include "tactile/error.hpp"

namespace tactile::patterns {

void SynthesisParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::ConfigError, "alpha must be > 0");
  if (beta != 1 && beta != -1) throw Error(ErrorCode::ConfigError, "beta must be +1 or -1");
  for (int k : texture_k) {
    if (k < 0 || k > 8) throw Error(ErrorCode::ConfigError, "texture multiplier must be in [0, 8]");
  }
  if (max_ring_radius < 0 || max_ring_radius > 2) {
    throw Error(ErrorCode::ConfigError, "max_ring_radius must be in [0, 2]");
  }
  if (!(electrode_spacing_mm > 0.0)) throw Error(ErrorCode::ConfigError, "electrode spacing must be > 0");
  if (!(slide_threshold_mm_s >= 0.0)) throw Error(ErrorCode::ConfigError, "slide threshold must be >= 0");
}

std::int64_t PatternClock::frame_index() const {
  return static_cast<std::int64_t>(std::floor(approach_phase));
}

std::int64_t PatternClock::shift_count() const {
  return static_cast<std::int64_t>(std::floor(texture_phase));
}

namespace {

double snapped(double phase) {
  const double r = std::round(phase);
  return std::abs(phase - r) < kPhaseSnap ? r : phase;
}

void check_step(double v, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::OutOfRange, "dt must be > 0");
  if (!(v >= 0.0)) throw Error(ErrorCode::OutOfRange, "velocity must be >= 0");
}

}  // namespace

PatternClock advance_approach(PatternClock clock, double v_approach, double dt,
                              const SynthesisParams& params) {
  check_step(v_approach, dt);
  clock.approach_phase = snapped(clock.approach_phase +
                                 params.alpha * v_approach * dt / params.electrode_spacing_mm);
  return clock;
}

PatternClock advance_texture(PatternClock clock, double v_slide, double dt, int k,
                             const SynthesisParams& params) {
  check_step(v_slide, dt);
  if (k == 0) return clock;
  clock.texture_phase =
      snapped(clock.texture_phase + v_slide * dt / (params.electrode_spacing_mm * k));
  return clock;
}

PatternClock advance_sliding(PatternClock clock, const context::KinematicsSample& kin, double dt,
                             int k, const SynthesisParams& params) {
  const auto before = clock.shift_count();
  clock = advance_texture(clock, kin.v_slide, dt, k, params);
  const auto events = clock.shift_count() - before;
  if (events > 0 && kin.slide_direction_bin) {
    const auto step = texture_translation(*kin.slide_direction_bin, events, k, params.beta);
    clock.texture_offset = wrap_offset({clock.texture_offset.dcol + step.dcol,
                                        clock.texture_offset.drow + step.drow});
  }
  return clock;
}

GridOffset direction_vector(context::DirectionBin bin) {
  using context::DirectionBin;
  switch (bin) {
    case DirectionBin::Forward: return {0, -1};
    case DirectionBin::ForwardRight: return {1, -1};
    case DirectionBin::Right: return {1, 0};
    case DirectionBin::BackwardRight: return {1, 1};
    case DirectionBin::Backward: return {0, 1};
    case DirectionBin::BackwardLeft: return {-1, 1};
    case DirectionBin::Left: return {-1, 0};
    case DirectionBin::ForwardLeft: return {-1, -1};
  }
  return {};
}

GridOffset texture_translation(context::DirectionBin bin, std::int64_t shift_count, int k, int beta) {
  const auto v = direction_vector(bin);
  const auto scale = -static_cast<std::int64_t>(beta) * shift_count * k;
  return {static_cast<int>(v.dcol * scale), static_cast<int>(v.drow * scale)};
}

GridOffset wrap_offset(GridOffset o) {
  auto wrap = [](int v, int n) { return ((v % n) + n) % n; };
  return {wrap(o.dcol, kCols), wrap(o.drow, kRows)};
}

}  // namespace tactile::patterns
