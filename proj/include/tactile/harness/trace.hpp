#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tactile/context/kinematics.hpp"
#include "tactile/vec3.hpp"

namespace tactile::harness {

using Pose = context::FingerPose;
using PoseTrace = std::vector<Pose>;

enum class TraceKind { Approach, HoldAtAngle, Slide, Composite };

// One generated motion. Unused fields are ignored by the generator.
struct TraceSegment {
  TraceKind kind = TraceKind::Approach;
  double duration_s = 1.0;
  double speed_mm_s = 20.0;
  std::optional<Vec3> start;  // defaults to where the previous segment ended
  Vec3 pad_normal{0, 0, -1};
  Vec3 pad_forward{0, 1, 0};
  Vec3 direction{1, 0, 0};  // slide direction, world frame

  // hold_at_angle: pad centre held `standoff_mm` above `point` on a
  // surface with normal `surface_normal`, heading along `heading`, pitched
  // by `pitch_deg` and rolled so that the contact angle is `theta_deg`.
  Vec3 point{0, 0, 0};
  Vec3 surface_normal{0, 0, 1};
  Vec3 heading{0, 1, 0};
  double theta_deg = 0.0;
  double pitch_deg = 30.0;
  double standoff_mm = 0.5;
};

struct TraceSpec {
  TraceKind kind = TraceKind::Approach;
  double rate_hz = 72.0;
  double jitter_mm = 0.0;  // Gaussian position noise, per axis
  std::optional<std::uint64_t> seed;
  std::vector<TraceSegment> segments;  // one unless composite
};

std::string trace_kind_name(TraceKind k);

// Flat key=value text. Single traces use bare keys (`kind`, `speed_mm_s`,
// `duration_s`, `start = x,y,z`, ...); composites list `segments = a,b` and
// prefix segment keys with the segment name (`a.kind = approach`).
// `seed` replaces any seed in the text. Throws Error{BadSpec}.
TraceSpec parse_trace_spec(const std::string& text, std::optional<std::uint64_t> seed = {});
TraceSpec read_trace_spec(const std::string& path, std::optional<std::uint64_t> seed = {});

// N = round(duration * rate) + 1 poses per segment, consecutive segments
// sharing their boundary pose. Throws Error{BadSpec}.
PoseTrace synth_trace(const TraceSpec& spec);

// Header `t,px,py,pz,nx,ny,nz,fx,fy,fz`.
void write_pose_csv(std::ostream& out, const PoseTrace& trace);
PoseTrace parse_pose_csv(const std::string& text);  // throws Error{ParseError}
PoseTrace read_pose_csv(const std::string& path);

// Pad axes for holding at a contact angle; exposed for tests.
struct HoldFrame {
  Vec3 pad_normal;
  Vec3 pad_forward;
};
HoldFrame hold_frame(const Vec3& surface_normal, const Vec3& heading, double theta_deg, double pitch_deg);

}  // namespace tactile::harness
