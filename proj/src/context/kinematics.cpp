#include "tactile/context/kinematics.hpp"

#include <cmath>

#include "tactile/error.hpp"

namespace tactile::context {

std::string_view direction_name(DirectionBin b) {
  switch (b) {
    case DirectionBin::Forward: return "Forward";
    case DirectionBin::ForwardRight: return "ForwardRight";
    case DirectionBin::Right: return "Right";
    case DirectionBin::BackwardRight: return "BackwardRight";
    case DirectionBin::Backward: return "Backward";
    case DirectionBin::BackwardLeft: return "BackwardLeft";
    case DirectionBin::Left: return "Left";
    case DirectionBin::ForwardLeft: return "ForwardLeft";
  }
  return "?";
}

DirectionBin quantize_direction(double azimuth_deg) {
  double a = std::fmod(azimuth_deg, 360.0);
  if (a < 0.0) a += 360.0;
  const auto k = static_cast<long>(std::ceil((a - 22.5) / 45.0));
  return static_cast<DirectionBin>(((k % 8) + 8) % 8);
}

namespace {

struct TangentFrame {
  Vec3 forward;
  Vec3 right;
};

TangentFrame tangent_frame(const FingerPose& pose, const geometry::ContactSample& contact) {
  const Vec3 n = contact.surface_normal;
  Vec3 fwd = normalized(reject(pose.pad_forward, n));
  if (norm2(fwd) < 0.5) fwd = contact.surface_tangent;
  return {fwd, cross(fwd, n)};
}

}  // namespace

KinematicsSample make_kinematics(double v_approach, const Vec3& slide_velocity,
                                 const FingerPose& pose, const geometry::ContactSample& contact) {
  KinematicsSample k;
  k.v_approach = std::max(0.0, v_approach);
  k.slide_velocity = slide_velocity;
  k.v_slide = norm(slide_velocity);
  if (k.v_slide > 0.0) {
    const auto frame = tangent_frame(pose, contact);
    double az = rad_to_deg(std::atan2(dot(slide_velocity, frame.right), dot(slide_velocity, frame.forward)));
    if (az < 0.0) az += 360.0;
    k.azimuth_deg = az;
    k.slide_direction_bin = quantize_direction(az);
  }
  return k;
}

KinematicsSample estimate_kinematics(const FingerPose& prev, const FingerPose& curr,
                                     const geometry::ContactSample& contact) {
  const double dt = curr.t - prev.t;
  if (!(dt > 0.0)) throw Error(ErrorCode::ZeroDt, "pose timestamps do not advance");
  const Vec3 disp = curr.position - prev.position;
  const Vec3 n = contact.surface_normal;
  const double closing = -dot(disp, n) / dt;
  // Moving away never runs the pattern backwards.
  return make_kinematics(std::max(0.0, closing), reject(disp, n) / dt, curr, contact);
}

KinematicsSample KinematicsFilter::update(const KinematicsSample& raw, const FingerPose& pose,
                                          const geometry::ContactSample& contact) {
  if (!seeded_) {
    v_approach_ = raw.v_approach;
    slide_velocity_ = raw.slide_velocity;
    seeded_ = true;
  } else {
    v_approach_ = lambda_ * raw.v_approach + (1.0 - lambda_) * v_approach_;
    slide_velocity_ = raw.slide_velocity * lambda_ + slide_velocity_ * (1.0 - lambda_);
  }
  return make_kinematics(v_approach_, slide_velocity_, pose, contact);
}

}  // namespace tactile::context
