#include "tactile/patterns/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "tactile/error.hpp"

namespace tactile::patterns {

using context::Mode;
using geometry::EdgeBin;
using geometry::Feature;

namespace {

std::uint64_t bit(int row, int col) { return std::uint64_t{1} << cell_bit(row, col); }

// Distance of an index from the even-grid centre 2.5, in half-cells.
double off_centre(int i) { return std::abs(i - 2.5); }

std::uint64_t face_ring(int radius) {
  std::uint64_t m = 0;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      const double ring = std::max(off_centre(r), off_centre(c)) - 0.5;
      if (static_cast<int>(ring) == radius) m |= bit(r, c);
    }
  }
  return m;
}

std::uint64_t edge_line(EdgeBin bin, std::int64_t n) {
  const double reach = static_cast<double>(std::min<std::int64_t>(n, 2)) + 0.5;
  std::uint64_t m = 0;
  for (int i = 0; i < kRows; ++i) {
    if (off_centre(i) > reach) continue;
    switch (bin) {
      case EdgeBin::H: m |= bit(2, i); break;
      case EdgeBin::V: m |= bit(i, 2); break;
      case EdgeBin::D1: m |= bit(i, kCols - 1 - i); break;
      case EdgeBin::D2: m |= bit(i, i); break;
    }
  }
  return m;
}

constexpr std::uint64_t kCentreBlock = (std::uint64_t{1} << 14) | (std::uint64_t{1} << 15) |
                                       (std::uint64_t{1} << 20) | (std::uint64_t{1} << 21);

int wrap(int v, int n) { return ((v % n) + n) % n; }

}  // namespace

PatternFrame base_pattern(Feature feature, std::optional<EdgeBin> bin, std::int64_t n,
                          const SynthesisParams& params) {
  if (n < 0) throw Error(ErrorCode::OutOfRange, "frame index must be >= 0");
  switch (feature) {
    case Feature::Face: {
      const auto radius = static_cast<int>(std::min<std::int64_t>(n, params.max_ring_radius));
      return {face_ring(radius), provenance::FaceRing{n}};
    }
    case Feature::Edge: {
      const EdgeBin b = bin.value_or(EdgeBin::H);
      return {edge_line(b, n), provenance::EdgeLine{b, n}};
    }
    case Feature::Corner:
      return {kCentreBlock, provenance::CornerPoint{n}};
  }
  return {};
}

std::uint64_t translate_clipped(std::uint64_t lattice, GridOffset offset) {
  std::uint64_t out = 0;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      if (!((lattice >> cell_bit(r, c)) & 1u)) continue;
      const int nr = r + offset.drow;
      const int nc = c + offset.dcol;
      if (on_grid(nr, nc)) out |= bit(nr, nc);
    }
  }
  return out;
}

std::uint64_t translate_wrapped(std::uint64_t lattice, GridOffset offset) {
  std::uint64_t out = 0;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      if ((lattice >> cell_bit(r, c)) & 1u) {
        out |= bit(wrap(r + offset.drow, kRows), wrap(c + offset.dcol, kCols));
      }
    }
  }
  return out;
}

PatternFrame contact_pattern(const PatternFrame& base, const context::ContactOrientation& orientation) {
  return {translate_clipped(base.lattice(), {orientation.delta_x, 0}),
          provenance::ContactShifted{orientation.level}};
}

PatternFrame texture_pattern(const PatternFrame& base, std::int64_t shift_count,
                             std::optional<context::DirectionBin> bin, int k, int beta) {
  if (k == 0 || !bin) return base;
  return texture_pattern(base, wrap_offset(texture_translation(*bin, shift_count % 6, k, beta)));
}

PatternFrame texture_pattern(const PatternFrame& base, GridOffset offset) {
  const auto w = wrap_offset(offset);
  return {translate_wrapped(base.lattice(), w), provenance::TextureShifted{w}};
}

namespace {

const context::FeatureKey& checked_feature(const context::InteractionState& state) {
  if (!state.stable_feature || !state.last_contact) {
    throw Error(ErrorCode::InconsistentState, "active state without a stable feature or contact");
  }
  return *state.stable_feature;
}

bool sliding(const context::KinematicsSample& kin, const SynthesisParams& params) {
  return kin.v_slide > params.slide_threshold_mm_s;
}

PatternFrame interacting_frame(const context::InteractionState& state, const PatternFrame& base,
                               const geometry::ContactSample& contact,
                               const context::KinematicsSample& kin, const SynthesisParams& params,
                               GridOffset offset) {
  if (sliding(kin, params)) {
    if (params.k_for_level(contact.k_texture) == 0) return base;
    return texture_pattern(base, offset);
  }
  context::ContactOrientation o{0.0, context::OrientationLevel::ShallowRight, 0};
  if (state.stable_orientation) o = *state.stable_orientation;
  return contact_pattern(base, o);
}

}  // namespace

PatternFrame synthesize(const context::InteractionState& state, const geometry::ContactSample& contact,
                        const context::KinematicsSample& kin, const SynthesisParams& params) {
  if (state.mode == Mode::Idle) return PatternFrame::off();
  const auto& key = checked_feature(state);
  const auto base = base_pattern(key, state.pattern_clock.frame_index(), params);
  if (state.mode == Mode::Approaching) return base;
  return interacting_frame(state, base, contact, kin, params, state.pattern_clock.texture_offset);
}

std::vector<PatternFrame> synthesize_tick(const context::InteractionState& state,
                                          const geometry::ContactSample& contact,
                                          const context::KinematicsSample& kin,
                                          const SynthesisParams& params) {
  std::vector<PatternFrame> frames;
  if (state.mode == Mode::Idle) {
    frames.push_back(PatternFrame::off());
    return frames;
  }
  const auto& key = checked_feature(state);
  const auto& clock = state.pattern_clock;
  const auto n1 = clock.frame_index();
  const auto n0 = std::clamp(clock.tick_start_frame, std::int64_t{0}, n1);

  if (state.mode == Mode::Approaching) {
    for (auto n = n0 + 1; n < n1; ++n) frames.push_back(base_pattern(key, n, params));
  } else if (sliding(kin, params) && params.k_for_level(contact.k_texture) != 0 &&
             kin.slide_direction_bin) {
    // Replay each intermediate shift event from the tick-start offset.
    const auto events = clock.shift_count() - clock.tick_start_shift;
    const int k = params.k_for_level(contact.k_texture);
    const auto base = base_pattern(key, n1, params);
    for (std::int64_t e = 1; e < events; ++e) {
      const auto step = texture_translation(*kin.slide_direction_bin, e % 6, k, params.beta);
      frames.push_back(texture_pattern(base, {clock.tick_start_offset.dcol + step.dcol,
                                              clock.tick_start_offset.drow + step.drow}));
    }
  }
  frames.push_back(synthesize(state, contact, kin, params));
  return frames;
}

}  // namespace tactile::patterns
