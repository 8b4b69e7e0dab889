#pragma once

#include <cstdint>
#include <string_view>

#include "tactile/context/kinematics.hpp"
#include "tactile/geometry/types.hpp"

namespace tactile::context {

enum class OrientationLevel : std::uint8_t { SteepLeft, ShallowLeft, ShallowRight, SteepRight };

std::string_view orientation_name(OrientationLevel level);

struct ContactOrientation {
  double theta = 0.0;  // degrees, [-90, 90]
  OrientationLevel level = OrientationLevel::ShallowRight;
  int delta_x = 1;  // electrode columns

  bool operator==(const ContactOrientation&) const = default;
};

int orientation_delta_x(OrientationLevel level);

// [-90,-30) SteepLeft, [-30,0) ShallowLeft, [0,30) ShallowRight,
// [30,90] SteepRight. Throws Error{OutOfRange} outside [-90, 90].
ContactOrientation quantize_orientation(double theta_deg);

// Signed angle between the ray pad centre -> contact point and the surface
// tangent the pad faces, both projected onto the contact's tangent plane.
// Left of the pad's forward direction is negative. The ray is a line, so
// the result folds into [-90, 90]. Throws Error{DegenerateRay} when the pad
// centre and contact point coincide.
double compute_theta(const FingerPose& pose, const geometry::ContactSample& contact);

// False when the ray is (nearly) along the surface normal, i.e. the pad
// meets the surface head-on and has no lateral orientation.
bool theta_defined(const FingerPose& pose, const geometry::ContactSample& contact, double eps_mm = 1e-6);

// The contact re-aimed along the pad normal: its closest_point becomes the
// point where the pad-normal ray meets the contact's tangent plane (ray
// length at least `min_lever_mm`). Returns the input unchanged when the pad
// does not face the surface.
geometry::ContactSample pad_directed_contact(const FingerPose& pose,
                                             const geometry::ContactSample& contact,
                                             double min_lever_mm = 1.0);

}  // namespace tactile::context
