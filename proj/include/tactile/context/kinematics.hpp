#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "tactile/geometry/types.hpp"
#include "tactile/vec3.hpp"

namespace tactile::context {

struct FingerPose {
  double t = 0.0;  // seconds
  Vec3 position;   // finger-pad centre, mm
  Vec3 pad_normal{0.0, 0.0, -1.0};
  Vec3 pad_forward{0.0, 1.0, 0.0};

  geometry::PadFrame frame() const { return {pad_normal, pad_forward}; }
  bool operator==(const FingerPose&) const = default;
};

// Sliding direction in the pad frame, clockwise from distal.
enum class DirectionBin : std::uint8_t {
  Forward,
  ForwardRight,
  Right,
  BackwardRight,
  Backward,
  BackwardLeft,
  Left,
  ForwardLeft,
};

std::string_view direction_name(DirectionBin b);

// Nearest of the 8 centres at 45 degree steps; a boundary goes to the lower
// bin (67.5 -> ForwardRight, 337.5 -> ForwardLeft).
DirectionBin quantize_direction(double azimuth_deg);

struct KinematicsSample {
  double v_approach = 0.0;  // mm/s toward the surface, >= 0
  double v_slide = 0.0;     // mm/s tangential, >= 0
  Vec3 slide_velocity;      // tangential velocity vector, mm/s
  double azimuth_deg = 0.0;
  std::optional<DirectionBin> slide_direction_bin;

  bool operator==(const KinematicsSample&) const = default;
};

// Builds the sample from velocity components, expressing the slide
// direction in the pad frame projected onto the contact's tangent plane.
KinematicsSample make_kinematics(double v_approach, const Vec3& slide_velocity,
                                 const FingerPose& pose, const geometry::ContactSample& contact);

// Unsmoothed finite difference between two poses. Throws Error{ZeroDt}
// unless curr.t > prev.t.
KinematicsSample estimate_kinematics(const FingerPose& prev, const FingerPose& curr,
                                     const geometry::ContactSample& contact);

// Exponential moving average of the approach speed and slide velocity. The
// first update seeds the average with the raw sample.
class KinematicsFilter {
 public:
  explicit KinematicsFilter(double lambda = 0.5) : lambda_(lambda) {}

  KinematicsSample update(const KinematicsSample& raw, const FingerPose& pose,
                          const geometry::ContactSample& contact);
  void reset() { seeded_ = false; }
  double lambda() const { return lambda_; }

 private:
  double lambda_;
  bool seeded_ = false;
  double v_approach_ = 0.0;
  Vec3 slide_velocity_;
};

}  // namespace tactile::context
