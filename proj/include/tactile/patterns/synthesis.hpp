#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tactile/context/fsm.hpp"
#include "tactile/context/kinematics.hpp"
#include "tactile/context/orientation.hpp"
#include "tactile/geometry/types.hpp"
#include "tactile/patterns/clock.hpp"
#include "tactile/patterns/frame.hpp"

namespace tactile::patterns {

// Face: Chebyshev ring min(n, max_ring_radius) around the centre 2x2 block.
// Edge: line through the centre along the bin orientation, min(2+2n, 6)
// cells long. Corner: the centre block for every n. Throws
// Error{OutOfRange} for n < 0.
PatternFrame base_pattern(geometry::Feature feature, std::optional<geometry::EdgeBin> bin,
                          std::int64_t n, const SynthesisParams& params = {});

inline PatternFrame base_pattern(const context::FeatureKey& key, std::int64_t n,
                                 const SynthesisParams& params = {}) {
  return base_pattern(key.feature, key.edge_bin, n, params);
}

// Lattice translation. Clipped drops cells leaving the 6x6 grid; wrapped
// folds them back toroidally.
std::uint64_t translate_clipped(std::uint64_t lattice, GridOffset offset);
std::uint64_t translate_wrapped(std::uint64_t lattice, GridOffset offset);

// Horizontal shift by orientation.delta_x columns, clipped.
PatternFrame contact_pattern(const PatternFrame& base, const context::ContactOrientation& orientation);

// Wrapped shift by texture_translation(bin, shift_count, k, beta). k = 0
// or no direction returns the base unchanged.
PatternFrame texture_pattern(const PatternFrame& base, std::int64_t shift_count,
                             std::optional<context::DirectionBin> bin, int k, int beta);

// Wrapped shift by an already accumulated offset.
PatternFrame texture_pattern(const PatternFrame& base, GridOffset offset);

// The frame for the state after this tick's step_fsm(). Throws
// Error{InconsistentState} for an active state missing its feature or
// last contact.
PatternFrame synthesize(const context::InteractionState& state, const geometry::ContactSample& contact,
                        const context::KinematicsSample& kin, const SynthesisParams& params = {});

// synthesize() plus the intermediate frames when the clock moved by more
// than one electrode spacing within the tick. The last element is always
// synthesize(); the vector is never empty.
std::vector<PatternFrame> synthesize_tick(const context::InteractionState& state,
                                          const geometry::ContactSample& contact,
                                          const context::KinematicsSample& kin,
                                          const SynthesisParams& params = {});

}  // namespace tactile::patterns
