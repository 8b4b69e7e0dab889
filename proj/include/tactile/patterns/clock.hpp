#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "tactile/context/kinematics.hpp"
#include "tactile/patterns/frame.hpp"
#include "tactile/patterns/grid.hpp"

namespace tactile::patterns {

struct SynthesisParams {
  double alpha = 1.0;  // approach expansion scale, > 0
  int beta = +1;       // +1 shifts opposite to the motion, -1 with it
  // Shift multiplier per texture level: smooth, rough, rougher.
  std::array<int, 3> texture_k{0, 1, 2};
  int max_ring_radius = 2;  // electrode spacings
  double electrode_spacing_mm = kElectrodeSpacingMm;
  double slide_threshold_mm_s = 1.0;  // below this an interacting finger is "stationary"

  int k_for_level(std::uint8_t level) const { return texture_k[level < 3 ? level : 2]; }

  // Throws Error{ConfigError} when an invariant is violated.
  void validate() const;
};

// Velocity-integrated pattern phases. Both phases are dimensionless: one
// unit is one frame (approach) or one shift event (texture).
struct PatternClock {
  double approach_phase = 0.0;
  double texture_phase = 0.0;
  GridOffset texture_offset;  // accumulated wrapped translation, in [0, 6)

  // Values at the start of the current tick, for interpolation.
  std::int64_t tick_start_frame = 0;
  std::int64_t tick_start_shift = 0;
  GridOffset tick_start_offset;

  std::int64_t frame_index() const;
  std::int64_t shift_count() const;

  bool operator==(const PatternClock&) const = default;
};

// Phases are snapped onto an integer when within this distance, so that
// exact multiples of the electrode spacing are not lost to rounding.
inline constexpr double kPhaseSnap = 1e-9;

// approach_phase += alpha * v * dt / d. Throws Error{OutOfRange} for
// dt <= 0 or v < 0.
PatternClock advance_approach(PatternClock clock, double v_approach, double dt,
                              const SynthesisParams& params);

// texture_phase += v * dt / (d * k); k = 0 leaves the phase alone.
PatternClock advance_texture(PatternClock clock, double v_slide, double dt, int k,
                             const SynthesisParams& params);

// advance_texture() plus one wrapped translation step per new shift event,
// taken along the current slide direction.
PatternClock advance_sliding(PatternClock clock, const context::KinematicsSample& kin, double dt,
                             int k, const SynthesisParams& params);

// Unit grid vector of a slide direction (columns right, rows backward).
GridOffset direction_vector(context::DirectionBin bin);

// -beta * shift_count * k * direction_vector(bin).
GridOffset texture_translation(context::DirectionBin bin, std::int64_t shift_count, int k, int beta);

GridOffset wrap_offset(GridOffset o);

}  // namespace tactile::patterns
