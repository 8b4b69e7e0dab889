#include "tactile/geometry/scene.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tactile/error.hpp"

namespace tactile::geometry {

namespace {

constexpr double kMinArea = 1e-12;  // mm^2

double corner_angle(const Vec3& at, const Vec3& b, const Vec3& c) {
  const Vec3 u = normalized(b - at);
  const Vec3 v = normalized(c - at);
  return std::acos(std::clamp(dot(u, v), -1.0, 1.0));
}

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

// Pose-independent tangent for faces and corners.
Vec3 canonical_tangent(const Vec3& n) {
  const Vec3 axis = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  return normalized(reject(axis, n));
}

// Lines have no direction; pick the representative with the first non-zero
// component positive.
Vec3 canonical_direction(Vec3 d) {
  if (d.x < 0.0 || (d.x == 0.0 && (d.y < 0.0 || (d.y == 0.0 && d.z < 0.0)))) d = -d;
  return d;
}

}  // namespace

TrianglePoint closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                                        const Vec3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = dot(ab, ap);
  const double d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return {a, TriangleRegion::V0};

  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp);
  const double d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return {b, TriangleRegion::V1};

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return {a + ab * v, TriangleRegion::E01};
  }

  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp);
  const double d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return {c, TriangleRegion::V2};

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return {a + ac * w, TriangleRegion::E20};
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return {b + (c - b) * w, TriangleRegion::E12};
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return {a + ab * v + ac * w, TriangleRegion::Inside};
}

Vec3 closest_point_on_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = norm2(ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + ab * t;
}

SceneModel load_scene(std::vector<MeshSource> sources, const FeatureThresholds& thresholds) {
  SceneModel s;
  s.thresholds_ = thresholds;
  s.mesh_count_ = sources.size();

  for (std::uint32_t m = 0; m < sources.size(); ++m) {
    const auto& src = sources[m];
    const auto offset = static_cast<std::uint32_t>(s.vertices_.size());
    for (const auto& v : src.mesh.vertices) {
      if (!is_finite(v)) throw Error(ErrorCode::ParseError, "non-finite vertex coordinate");
      s.vertices_.push_back(v);
      s.bounds_.expand(v);
    }
    std::vector<std::uint8_t> levels;
    std::vector<bool> assigned;
    src.materials.apply(src.mesh.triangles.size(), levels, assigned);
    for (std::size_t f = 0; f < src.mesh.triangles.size(); ++f) {
      Triangle t = src.mesh.triangles[f];
      for (auto& i : t) {
        if (i >= src.mesh.vertices.size()) {
          throw Error(ErrorCode::ParseError, "triangle references missing vertex");
        }
        i += offset;
      }
      s.triangles_.push_back(t);
      FaceInfo info;
      info.k_texture = levels[f];
      info.mesh = m;
      s.faces_.push_back(info);
    }
  }

  if (s.triangles_.empty()) throw Error(ErrorCode::DegenerateMesh, "scene has no triangles");
  {
    const Vec3 ext = s.bounds_.extent();
    const int flat_axes = (ext.x <= 0.0) + (ext.y <= 0.0) + (ext.z <= 0.0);
    if (flat_axes > 1) throw Error(ErrorCode::ParseError, "degenerate bounding box");
  }

  // Face normals, areas and the edge table.
  std::unordered_map<std::uint64_t, std::uint32_t> edge_ids;
  edge_ids.reserve(s.triangles_.size() * 2);
  std::vector<bool> face_ok(s.triangles_.size());
  for (std::uint32_t f = 0; f < s.triangles_.size(); ++f) {
    const auto& t = s.triangles_[f];
    const Vec3& a = s.vertices_[t[0]];
    const Vec3& b = s.vertices_[t[1]];
    const Vec3& c = s.vertices_[t[2]];
    const Vec3 n = cross(b - a, c - a);
    const double area = 0.5 * norm(n);
    s.faces_[f].area = area;
    s.faces_[f].normal = area > kMinArea ? normalized(n) : Vec3{};
    face_ok[f] = area > kMinArea;

    for (int k = 0; k < 3; ++k) {
      const std::uint32_t u = t[k];
      const std::uint32_t w = t[(k + 1) % 3];
      const auto key = edge_key(u, w);
      auto [it, inserted] = edge_ids.try_emplace(key, static_cast<std::uint32_t>(s.edges_.size()));
      if (inserted) {
        EdgeInfo e;
        e.v0 = std::min(u, w);
        e.v1 = std::max(u, w);
        s.edges_.push_back(e);
      }
      s.faces_[f].edges[k] = it->second;
      if (!face_ok[f]) continue;
      EdgeInfo& e = s.edges_[it->second];
      if (e.face_count == 2) {
        throw Error(ErrorCode::NonManifold,
                    "edge (" + std::to_string(e.v0) + "," + std::to_string(e.v1) +
                        ") is shared by more than two faces");
      }
      e.faces[e.face_count++] = f;
    }
  }

  if (std::none_of(face_ok.begin(), face_ok.end(), [](bool b) { return b; })) {
    throw Error(ErrorCode::DegenerateMesh, "every triangle has zero area");
  }

  auto winding_agrees = [&](std::uint32_t f, std::uint32_t a, std::uint32_t b) {
    const auto& t = s.triangles_[f];
    for (int k = 0; k < 3; ++k) {
      if (t[k] == a && t[(k + 1) % 3] == b) return true;
    }
    return false;
  };

  for (auto& e : s.edges_) {
    if (e.face_count == 0) continue;
    const Vec3 n0 = s.faces_[e.faces[0]].normal;
    if (e.face_count == 1) {
      e.dihedral_deg = 180.0;
      e.sharp = true;
      e.pseudo_normal = n0;
      continue;
    }
    Vec3 n1 = s.faces_[e.faces[1]].normal;
    // Consistently wound neighbours traverse the shared edge in opposite
    // directions; otherwise flip the second normal.
    if (winding_agrees(e.faces[0], e.v0, e.v1) == winding_agrees(e.faces[1], e.v0, e.v1)) {
      n1 = -n1;
    }
    e.dihedral_deg = rad_to_deg(std::acos(std::clamp(dot(n0, n1), -1.0, 1.0)));
    e.sharp = e.dihedral_deg >= thresholds.sharp_dihedral_deg;
    e.pseudo_normal = normalized(n0 + n1);
    if (norm2(e.pseudo_normal) == 0.0) e.pseudo_normal = n0;
  }

  s.vertex_info_.assign(s.vertices_.size(), VertexInfo{});
  std::vector<double> angle_sum(s.vertices_.size(), 0.0);
  std::vector<bool> used(s.vertices_.size(), false);
  for (std::uint32_t f = 0; f < s.triangles_.size(); ++f) {
    if (!face_ok[f]) continue;
    const auto& t = s.triangles_[f];
    for (int k = 0; k < 3; ++k) {
      const auto v = t[k];
      const double ang = corner_angle(s.vertices_[v], s.vertices_[t[(k + 1) % 3]],
                                      s.vertices_[t[(k + 2) % 3]]);
      angle_sum[v] += ang;
      s.vertex_info_[v].pseudo_normal += s.faces_[f].normal * ang;
      used[v] = true;
    }
  }
  for (const auto& e : s.edges_) {
    if (e.face_count == 0) continue;
    for (const auto v : {e.v0, e.v1}) {
      if (e.sharp) ++s.vertex_info_[v].sharp_edges;
      if (e.face_count < 2) s.vertex_info_[v].closed = false;
    }
  }
  for (std::uint32_t v = 0; v < s.vertices_.size(); ++v) {
    auto& vi = s.vertex_info_[v];
    vi.pseudo_normal = normalized(vi.pseudo_normal);
    vi.cone_deficit_deg = 360.0 - rad_to_deg(angle_sum[v]);
    if (!used[v]) {
      vi.closed = false;
      continue;
    }
    const Sharpness sh{0.0, vi.sharp_edges, vi.cone_deficit_deg, vi.closed};
    vi.corner = classify_feature({SimplexKind::Vertex, v, 0.0}, sh, thresholds) == Feature::Corner;
    if (vi.corner) s.corners_.push_back(v);
  }

  std::vector<Aabb> boxes;
  boxes.reserve(s.triangles_.size());
  for (std::uint32_t f = 0; f < s.triangles_.size(); ++f) {
    if (!face_ok[f]) continue;
    Aabb box;
    for (const auto v : s.triangles_[f]) box.expand(s.vertices_[v]);
    boxes.push_back(box);
    s.bvh_faces_.push_back(f);
  }
  s.triangle_bvh_ = Bvh(boxes);

  boxes.clear();
  for (std::uint32_t e = 0; e < s.edges_.size(); ++e) {
    if (!s.edges_[e].sharp) continue;
    Aabb box;
    box.expand(s.vertices_[s.edges_[e].v0]);
    box.expand(s.vertices_[s.edges_[e].v1]);
    boxes.push_back(box);
    s.sharp_edges_.push_back(e);
  }
  s.sharp_edge_bvh_ = Bvh(boxes);

  boxes.clear();
  for (const auto v : s.corners_) {
    Aabb box;
    box.expand(s.vertices_[v]);
    boxes.push_back(box);
  }
  s.corner_bvh_ = Bvh(boxes);
  return s;
}

SceneModel load_scene_files(const std::string& obj_path, const std::string& material_path,
                            const FeatureThresholds& thresholds) {
  MeshSource src;
  src.mesh = mesh_from_obj(read_obj_file(obj_path));
  if (!material_path.empty()) src.materials = read_material_file(material_path);
  std::vector<MeshSource> sources;
  sources.push_back(std::move(src));
  return load_scene(std::move(sources), thresholds);
}

ContactSample query_contact(const SceneModel& s, const Vec3& p, const PadFrame& view) {
  auto tri_hit = s.triangle_bvh_.nearest(p, [&](std::uint32_t i) {
    const auto& t = s.triangles_[s.bvh_faces_[i]];
    return norm2(p - closest_point_on_triangle(p, s.vertices_[t[0]], s.vertices_[t[1]],
                                               s.vertices_[t[2]])
                         .point);
  });
  // load_scene guarantees at least one indexed face.
  const std::uint32_t face = s.bvh_faces_[tri_hit->index];
  const auto& t = s.triangles_[face];
  const auto cp = closest_point_on_triangle(p, s.vertices_[t[0]], s.vertices_[t[1]],
                                            s.vertices_[t[2]]);

  ContactSample out;
  out.query_point = p;
  out.closest_point = cp.point;
  out.triangle = face;
  out.k_texture = s.faces_[face].k_texture;

  const auto& fi = s.faces_[face];
  switch (cp.region) {
    case TriangleRegion::V0: out.surface_normal = s.vertex_info_[t[0]].pseudo_normal; break;
    case TriangleRegion::V1: out.surface_normal = s.vertex_info_[t[1]].pseudo_normal; break;
    case TriangleRegion::V2: out.surface_normal = s.vertex_info_[t[2]].pseudo_normal; break;
    case TriangleRegion::E01: out.surface_normal = s.edges_[fi.edges[0]].pseudo_normal; break;
    case TriangleRegion::E12: out.surface_normal = s.edges_[fi.edges[1]].pseudo_normal; break;
    case TriangleRegion::E20: out.surface_normal = s.edges_[fi.edges[2]].pseudo_normal; break;
    case TriangleRegion::Inside: out.surface_normal = fi.normal; break;
  }

  const Vec3 offset = p - cp.point;
  const double dist = norm(offset);
  out.signed_distance = dot(offset, out.surface_normal) < 0.0 ? -dist : dist;

  const auto& th = s.thresholds_;
  const double band2 = th.band_mm * th.band_mm;
  const Vec3 c = cp.point;

  if (auto hit = s.corner_bvh_.nearest(
          c, [&](std::uint32_t i) { return norm2(c - s.vertices_[s.corners_[i]]); }, band2)) {
    const auto v = s.corners_[hit->index];
    const auto& vi = s.vertex_info_[v];
    const SimplexDescriptor simplex{SimplexKind::Vertex, v, std::sqrt(hit->distance2)};
    out.feature = classify_feature(simplex, {0.0, vi.sharp_edges, vi.cone_deficit_deg, vi.closed}, th);
  }
  if (out.feature == Feature::Face) {
    if (auto hit = s.sharp_edge_bvh_.nearest(
            c,
            [&](std::uint32_t i) {
              const auto& e = s.edges_[s.sharp_edges_[i]];
              return norm2(c - closest_point_on_segment(c, s.vertices_[e.v0], s.vertices_[e.v1]));
            },
            band2)) {
      const auto id = s.sharp_edges_[hit->index];
      const auto& e = s.edges_[id];
      const SimplexDescriptor simplex{SimplexKind::Edge, id, std::sqrt(hit->distance2)};
      out.feature = classify_feature(simplex, {e.dihedral_deg, 0, 0.0, true}, th);
      if (out.feature == Feature::Edge) {
        const Vec3 dir = canonical_direction(normalized(s.vertices_[e.v1] - s.vertices_[e.v0]));
        const auto orient = quantize_edge_orientation(dir, view);
        out.edge_orientation_bin = orient.bin;
        out.orientation_degenerate = orient.degenerate;
        out.surface_tangent = normalized(reject(dir, out.surface_normal));
      }
    }
  }
  if (out.feature != Feature::Edge || norm2(out.surface_tangent) < 0.5) {
    out.surface_tangent = canonical_tangent(out.surface_normal);
  }
  return out;
}

}  // namespace tactile::geometry
