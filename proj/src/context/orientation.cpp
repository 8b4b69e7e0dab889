#include "tactile/context/orientation.hpp"

#include <algorithm>
#include <cmath>

#include "tactile/error.hpp"

namespace tactile::context {

std::string_view orientation_name(OrientationLevel level) {
  switch (level) {
    case OrientationLevel::SteepLeft: return "SteepLeft";
    case OrientationLevel::ShallowLeft: return "ShallowLeft";
    case OrientationLevel::ShallowRight: return "ShallowRight";
    case OrientationLevel::SteepRight: return "SteepRight";
  }
  return "?";
}

int orientation_delta_x(OrientationLevel level) {
  switch (level) {
    case OrientationLevel::SteepLeft: return -2;
    case OrientationLevel::ShallowLeft: return -1;
    case OrientationLevel::ShallowRight: return 1;
    case OrientationLevel::SteepRight: return 2;
  }
  return 0;
}

ContactOrientation quantize_orientation(double theta) {
  if (!(theta >= -90.0 && theta <= 90.0)) {
    throw Error(ErrorCode::OutOfRange, "theta " + std::to_string(theta) + " outside [-90, 90]");
  }
  OrientationLevel level;
  if (theta < -30.0) {
    level = OrientationLevel::SteepLeft;
  } else if (theta < 0.0) {
    level = OrientationLevel::ShallowLeft;
  } else if (theta < 30.0) {
    level = OrientationLevel::ShallowRight;
  } else {
    level = OrientationLevel::SteepRight;
  }
  return {theta, level, orientation_delta_x(level)};
}

double compute_theta(const FingerPose& pose, const geometry::ContactSample& contact) {
  const Vec3 ray = contact.closest_point - pose.position;
  if (norm(ray) < 1e-9) throw Error(ErrorCode::DegenerateRay, "pad centre coincides with contact point");
  const Vec3 n = contact.surface_normal;
  const Vec3 flat = reject(ray, n);
  Vec3 tangent = normalized(reject(pose.pad_forward, n));
  if (norm2(tangent) < 0.5) tangent = contact.surface_tangent;
  const Vec3 right = cross(tangent, n);
  const double theta = rad_to_deg(std::atan2(dot(flat, right), std::abs(dot(flat, tangent))));
  return std::clamp(theta, -90.0, 90.0);
}

bool theta_defined(const FingerPose& pose, const geometry::ContactSample& contact, double eps_mm) {
  const Vec3 ray = contact.closest_point - pose.position;
  return norm(reject(ray, contact.surface_normal)) > eps_mm;
}

geometry::ContactSample pad_directed_contact(const FingerPose& pose,
                                             const geometry::ContactSample& contact,
                                             double min_lever_mm) {
  const Vec3 n = contact.surface_normal;
  const double facing = dot(pose.pad_normal, n);
  if (facing > -1e-6) return contact;
  const double lever = std::max(std::abs(contact.signed_distance), min_lever_mm) / -facing;
  geometry::ContactSample out = contact;
  out.query_point = pose.position;
  out.closest_point = contact.closest_point + reject(pose.pad_normal, n) * lever;
  const double d = norm(out.closest_point - pose.position);
  out.signed_distance = contact.signed_distance < 0.0 ? -d : d;
  return out;
}

}  // namespace tactile::context
