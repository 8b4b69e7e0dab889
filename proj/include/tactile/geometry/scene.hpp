#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tactile/geometry/bvh.hpp"
#include "tactile/geometry/feature.hpp"
#include "tactile/geometry/mesh.hpp"
#include "tactile/geometry/obj.hpp"
#include "tactile/geometry/types.hpp"

namespace tactile::geometry {

struct MeshSource {
  TriangleMesh mesh;
  MaterialMap materials;
};

struct EdgeInfo {
  std::uint32_t v0 = 0;
  std::uint32_t v1 = 0;
  std::array<std::uint32_t, 2> faces{};
  std::uint8_t face_count = 0;
  double dihedral_deg = 0.0;  // 180 for boundary edges
  bool sharp = false;
  Vec3 pseudo_normal;
};

struct VertexInfo {
  Vec3 pseudo_normal;  // angle weighted
  int sharp_edges = 0;
  double cone_deficit_deg = 0.0;
  bool closed = true;
  bool corner = false;
};

struct FaceInfo {
  Vec3 normal;
  double area = 0.0;
  std::array<std::uint32_t, 3> edges{};  // edges ab, bc, ca
  std::uint8_t k_texture = 0;
  std::uint32_t mesh = 0;
};

// Triangle meshes merged into one indexed soup plus the per-edge and
// per-vertex sharpness data the contact query needs. Immutable after load.
class SceneModel {
 public:
  std::size_t mesh_count() const { return mesh_count_; }
  std::size_t triangle_count() const { return triangles_.size(); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t bvh_depth() const { return triangle_bvh_.depth(); }

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<FaceInfo>& faces() const { return faces_; }
  const std::vector<EdgeInfo>& edges() const { return edges_; }
  const std::vector<VertexInfo>& vertex_info() const { return vertex_info_; }
  const FeatureThresholds& thresholds() const { return thresholds_; }
  const Aabb& bounds() const { return bounds_; }

  std::size_t sharp_edge_count() const { return sharp_edges_.size(); }
  std::size_t corner_count() const { return corners_.size(); }

 private:
  friend SceneModel load_scene(std::vector<MeshSource>, const FeatureThresholds&);
  friend ContactSample query_contact(const SceneModel&, const Vec3&, const PadFrame&);

  std::size_t mesh_count_ = 0;
  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<FaceInfo> faces_;
  std::vector<EdgeInfo> edges_;
  std::vector<VertexInfo> vertex_info_;
  std::vector<std::uint32_t> sharp_edges_;  // edge ids
  std::vector<std::uint32_t> corners_;      // vertex ids
  Bvh triangle_bvh_;                        // over non-degenerate faces
  std::vector<std::uint32_t> bvh_faces_;
  Bvh sharp_edge_bvh_;
  Bvh corner_bvh_;
  FeatureThresholds thresholds_;
  Aabb bounds_;
};

// Throws Error{ParseError} for non-finite coordinates, bad indices or a bad
// bounding box, Error{DegenerateMesh} when no triangle has area, and
// Error{NonManifold} for edges shared by more than two faces.
SceneModel load_scene(std::vector<MeshSource> sources, const FeatureThresholds& thresholds = {});

// Reads an OBJ file and an optional material sidecar (empty path: all 0).
SceneModel load_scene_files(const std::string& obj_path, const std::string& material_path = {},
                            const FeatureThresholds& thresholds = {});

enum class TriangleRegion : std::uint8_t { V0, V1, V2, E01, E12, E20, Inside };

struct TrianglePoint {
  Vec3 point;
  TriangleRegion region = TriangleRegion::Inside;
};

TrianglePoint closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                                        const Vec3& c);

Vec3 closest_point_on_segment(const Vec3& p, const Vec3& a, const Vec3& b);

// Nearest surface point and its geometric context. `view` orients the edge
// bin; ties between equidistant triangles go to the smallest index.
ContactSample query_contact(const SceneModel& scene, const Vec3& p,
                            const PadFrame& view = PadFrame::world());

}  // namespace tactile::geometry
