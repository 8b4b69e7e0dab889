#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tactile/context/kinematics.hpp"
#include "tactile/context/orientation.hpp"
#include "tactile/geometry/types.hpp"
#include "tactile/patterns/clock.hpp"

namespace tactile::context {

enum class Mode : std::uint8_t { Idle, Approaching, Interacting };

std::string_view mode_name(Mode m);

// Feature class plus edge bin: two edges of different orientation are
// different contexts.
struct FeatureKey {
  geometry::Feature feature = geometry::Feature::Face;
  std::optional<geometry::EdgeBin> edge_bin;

  static FeatureKey of(const geometry::ContactSample& c) { return {c.feature, c.edge_orientation_bin}; }
  bool operator==(const FeatureKey&) const = default;
};

// "Face", "Corner", "Edge:H" ...
std::string feature_key_name(const FeatureKey& key);

struct ContextConfig {
  double contact_threshold_mm = 1.0;
  double release_threshold_mm = 8.0;
  int stabilization_window = 3;  // ticks
  double smoothing_lambda = 0.5;

  void validate() const;  // throws Error{ConfigError}
};

struct InteractionState {
  Mode mode = Mode::Idle;
  std::optional<FeatureKey> stable_feature;
  std::optional<FeatureKey> candidate_feature;
  int stability_counter = 0;
  std::optional<ContactOrientation> stable_orientation;
  std::optional<OrientationLevel> candidate_orientation;
  int orientation_counter = 0;
  patterns::PatternClock pattern_clock;
  std::optional<geometry::ContactSample> last_contact;

  bool operator==(const InteractionState&) const = default;
};

// What the pipeline observed this tick.
struct TickObservation {
  geometry::ContactSample contact;
  KinematicsSample kin;
  std::optional<ContactOrientation> orientation;  // absent when theta is undefined
};

// One tick of the interaction state machine:
//   Idle -> Approaching         signed distance <= contact threshold
//   Approaching -> Interacting  feature unchanged for the stabilization window
//   any -> Idle                 signed distance > release threshold
// Also advances the pattern clock while in contact: the approach phase
// always, the texture phase while sliding. Textures only show once
// interacting, but the shift count runs from the first contact tick. Throws Error{OutOfRange} for
// tick_dt <= 0.
InteractionState step_fsm(const InteractionState& state, const TickObservation& obs, double tick_dt,
                          const ContextConfig& config = {},
                          const patterns::SynthesisParams& params = {});

}  // namespace tactile::context
