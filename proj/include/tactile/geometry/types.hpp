#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "tactile/vec3.hpp"

namespace tactile::geometry {

enum class Feature : std::uint8_t { Face, Edge, Corner };

// Edge orientation in the finger-pad plane: 0, 45, 90 and 135 degrees.
enum class EdgeBin : std::uint8_t { H, D1, V, D2 };

std::string_view feature_name(Feature f);
std::string_view edge_bin_name(EdgeBin b);

// Orthonormal finger-pad basis. `normal` points out of the pad skin, toward
// the surface being touched; `forward` is the distal direction.
struct PadFrame {
  Vec3 normal{0.0, 0.0, -1.0};
  Vec3 forward{0.0, 1.0, 0.0};

  Vec3 right() const { return cross(normal, forward); }

  static PadFrame world() { return {}; }
};

struct ContactSample {
  Vec3 query_point;
  Vec3 closest_point;
  double signed_distance = 0.0;  // mm, negative inside
  Vec3 surface_normal{0.0, 0.0, 1.0};
  Vec3 surface_tangent{1.0, 0.0, 0.0};
  Feature feature = Feature::Face;
  std::optional<EdgeBin> edge_orientation_bin;
  std::uint8_t k_texture = 0;
  std::uint32_t triangle = 0;  // nearest triangle (global index)
  bool orientation_degenerate = false;

  bool operator==(const ContactSample&) const = default;
};

}  // namespace tactile::geometry
