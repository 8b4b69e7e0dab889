#include "tactile/context/fsm.hpp"

#include <algorithm>
#include <cmath>

#include "tactile/error.hpp"

namespace tactile::context {

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Idle: return "Idle";
    case Mode::Approaching: return "Approaching";
    case Mode::Interacting: return "Interacting";
  }
  return "?";
}

std::string feature_key_name(const FeatureKey& key) {
  std::string s(geometry::feature_name(key.feature));
  if (key.edge_bin) {
    s += ':';
    s += geometry::edge_bin_name(*key.edge_bin);
  }
  return s;
}

void ContextConfig::validate() const {
  if (!(contact_threshold_mm > 0.0 && contact_threshold_mm <= 10.0)) {
    throw Error(ErrorCode::ConfigError, "contact threshold must be in (0, 10] mm");
  }
  if (!(release_threshold_mm > contact_threshold_mm && release_threshold_mm <= 100.0)) {
    throw Error(ErrorCode::ConfigError, "release threshold must be in (contact, 100] mm");
  }
  if (stabilization_window < 1 || stabilization_window > 50) {
    throw Error(ErrorCode::ConfigError, "stabilization window must be in [1, 50] ticks");
  }
  if (!(smoothing_lambda > 0.0 && smoothing_lambda <= 1.0)) {
    throw Error(ErrorCode::ConfigError, "smoothing lambda must be in (0, 1]");
  }
}

namespace {

template <typename T>
void track(std::optional<T>& candidate, int& counter, const T& observed, int window) {
  if (candidate && *candidate == observed) {
    counter = std::min(counter + 1, window);
  } else {
    candidate = observed;
    counter = 1;
  }
}

}  // namespace

InteractionState step_fsm(const InteractionState& state, const TickObservation& obs, double tick_dt,
                          const ContextConfig& config, const patterns::SynthesisParams& params) {
  if (!(tick_dt > 0.0)) throw Error(ErrorCode::OutOfRange, "tick dt must be > 0");
  const double distance = obs.contact.signed_distance;
  const FeatureKey key = FeatureKey::of(obs.contact);
  const int window = config.stabilization_window;

  InteractionState next = state;
  switch (state.mode) {
    case Mode::Idle:
      if (distance > config.contact_threshold_mm) return InteractionState{};
      next = InteractionState{};
      next.mode = Mode::Approaching;
      next.stable_feature = key;
      next.candidate_feature = key;
      next.stability_counter = 1;
      next.stable_orientation = obs.orientation;
      if (obs.orientation) {
        next.candidate_orientation = obs.orientation->level;
        next.orientation_counter = 1;
      }
      break;
    case Mode::Approaching:
    case Mode::Interacting:
      if (distance > config.release_threshold_mm) return InteractionState{};
      track(next.candidate_feature, next.stability_counter, key, window);
      if (next.stability_counter >= window) {
        next.stable_feature = next.candidate_feature;
        if (next.mode == Mode::Approaching) next.mode = Mode::Interacting;
      }
      if (obs.orientation) {
        track(next.candidate_orientation, next.orientation_counter, obs.orientation->level, window);
        if (!next.stable_orientation || next.orientation_counter >= window) {
          next.stable_orientation = obs.orientation;
        } else if (next.stable_orientation->level == obs.orientation->level) {
          next.stable_orientation->theta = obs.orientation->theta;
        }
      }
      break;
  }
  next.last_contact = obs.contact;

  auto& clock = next.pattern_clock;
  clock.tick_start_frame = clock.frame_index();
  clock.tick_start_shift = clock.shift_count();
  clock.tick_start_offset = clock.texture_offset;
  clock = patterns::advance_approach(clock, obs.kin.v_approach, tick_dt, params);
  if (obs.kin.v_slide > params.slide_threshold_mm_s) {
    clock = patterns::advance_sliding(clock, obs.kin, tick_dt, params.k_for_level(obs.contact.k_texture),
                                      params);
  }
  return next;
}

}  // namespace tactile::context
