#pragma once

#include <cstdint>

#include "tactile/geometry/types.hpp"

namespace tactile::geometry {

struct FeatureThresholds {
  double sharp_dihedral_deg = 30.0;  // edge is sharp at or above this
  double corner_deficit_deg = 30.0;  // |angle deficit| making a cone tip
  int corner_min_sharp_edges = 3;
  double band_mm = 2.0;  // one electrode spacing
};

enum class SimplexKind : std::uint8_t { Vertex, Edge, Triangle };

struct SimplexDescriptor {
  SimplexKind kind = SimplexKind::Triangle;
  std::uint32_t index = 0;
  double distance_mm = 0.0;  // from the closest surface point to the simplex
};

struct Sharpness {
  double dihedral_deg = 0.0;      // edges: angle between adjacent face normals
  int sharp_edge_count = 0;       // vertices: incident sharp edges
  double cone_deficit_deg = 0.0;  // vertices: 360 minus incident corner angles
  bool closed = true;             // vertices: every incident edge has 2 faces
};

Feature classify_feature(const SimplexDescriptor& simplex, const Sharpness& sharpness,
                         const FeatureThresholds& thresholds = {});

// Angle in degrees (any range) to the edge bin: nearest of 0/45/90/135 with
// boundaries going to the lower bin and 157.5..180 wrapping to H.
EdgeBin edge_bin_from_angle(double degrees);

struct EdgeOrientation {
  EdgeBin bin = EdgeBin::H;
  bool degenerate = false;  // edge parallel to the pad normal
  double angle_deg = 0.0;   // in [0, 180)
};

EdgeOrientation quantize_edge_orientation(const Vec3& edge_dir, const PadFrame& view);

}  // namespace tactile::geometry
