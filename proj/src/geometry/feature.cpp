#include "tactile/geometry/feature.hpp"

#include <cmath>

namespace tactile::geometry {

std::string_view feature_name(Feature f) {
  switch (f) {
    case Feature::Face: return "Face";
    case Feature::Edge: return "Edge";
    case Feature::Corner: return "Corner";
  }
  return "?";
}

std::string_view edge_bin_name(EdgeBin b) {
  switch (b) {
    case EdgeBin::H: return "H";
    case EdgeBin::D1: return "D1";
    case EdgeBin::V: return "V";
    case EdgeBin::D2: return "D2";
  }
  return "?";
}

Feature classify_feature(const SimplexDescriptor& simplex, const Sharpness& sharpness,
                         const FeatureThresholds& t) {
  if (simplex.distance_mm > t.band_mm) return Feature::Face;
  switch (simplex.kind) {
    case SimplexKind::Edge:
      return sharpness.dihedral_deg >= t.sharp_dihedral_deg ? Feature::Edge : Feature::Face;
    case SimplexKind::Vertex: {
      const bool cone = sharpness.closed && std::abs(sharpness.cone_deficit_deg) >= t.corner_deficit_deg;
      return sharpness.sharp_edge_count >= t.corner_min_sharp_edges || cone ? Feature::Corner
                                                                            : Feature::Face;
    }
    case SimplexKind::Triangle:
      return Feature::Face;
  }
  return Feature::Face;
}

EdgeBin edge_bin_from_angle(double degrees) {
  double a = std::fmod(degrees, 180.0);
  if (a < 0.0) a += 180.0;
  const auto k = static_cast<long>(std::ceil((a - 22.5) / 45.0));
  return static_cast<EdgeBin>(((k % 4) + 4) % 4);
}

EdgeOrientation quantize_edge_orientation(const Vec3& edge_dir, const PadFrame& view) {
  double x = dot(edge_dir, view.right());
  double y = dot(edge_dir, view.forward);
  EdgeOrientation out;
  if (std::hypot(x, y) < 1e-9) {
    out.degenerate = true;
    return out;
  }
  // A line has no direction: fold into the upper half plane first so that
  // d and -d give bit-identical angles.
  if (y < 0.0 || (y == 0.0 && x < 0.0)) {
    x = -x;
    y = -y;
  }
  double a = rad_to_deg(std::atan2(y, x));
  if (a >= 180.0) a = 0.0;
  out.angle_deg = a;
  out.bin = edge_bin_from_angle(a);
  return out;
}

}  // namespace tactile::geometry
