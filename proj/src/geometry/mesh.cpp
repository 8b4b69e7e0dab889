#include "tactile/geometry/mesh.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <utility>

#include "tactile/error.hpp"

namespace tactile::geometry {

TriangleMesh mesh_from_obj(const ObjDocument& doc) {
  TriangleMesh mesh;
  mesh.vertices = doc.vertices;
  mesh.triangles.reserve(doc.polygons.size());
  for (std::size_t i = 0; i < doc.polygons.size(); ++i) {
    const auto& poly = doc.polygons[i];
    if (poly.size() != 3) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(doc.polygon_lines[i]) +
                                             ": face with " + std::to_string(poly.size()) +
                                             " vertices is not triangulated");
    }
    mesh.triangles.push_back({poly[0], poly[1], poly[2]});
  }
  return mesh;
}

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void orient_outward(TriangleMesh& mesh, const Vec3& center) {
  for (auto& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    const Vec3 n = cross(b - a, c - a);
    if (dot(n, (a + b + c) / 3.0 - center) < 0.0) std::swap(t[1], t[2]);
  }
}

}  // namespace

std::string write_obj(const TriangleMesh& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 40 + mesh.triangles.size() * 24);
  for (const auto& v : mesh.vertices) {
    out += "v ";
    append_number(out, v.x);
    out += ' ';
    append_number(out, v.y);
    out += ' ';
    append_number(out, v.z);
    out += '\n';
  }
  for (const auto& t : mesh.triangles) {
    out += "f " + std::to_string(t[0] + 1) + ' ' + std::to_string(t[1] + 1) + ' ' +
           std::to_string(t[2] + 1) + '\n';
  }
  return out;
}

TriangleMesh make_box(const Vec3& center, const Vec3& size) {
  TriangleMesh mesh;
  const Vec3 h = size * 0.5;
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.push_back(center + Vec3{(i & 1) ? h.x : -h.x, (i & 2) ? h.y : -h.y,
                                          (i & 4) ? h.z : -h.z});
  }
  // Quads as corner bit patterns; winding fixed up afterwards.
  const int quads[6][4] = {{0, 1, 3, 2}, {4, 5, 7, 6}, {0, 1, 5, 4},
                           {2, 3, 7, 6}, {0, 2, 6, 4}, {1, 3, 7, 5}};
  for (const auto& q : quads) {
    mesh.triangles.push_back({std::uint32_t(q[0]), std::uint32_t(q[1]), std::uint32_t(q[2])});
    mesh.triangles.push_back({std::uint32_t(q[0]), std::uint32_t(q[2]), std::uint32_t(q[3])});
  }
  orient_outward(mesh, center);
  return mesh;
}

TriangleMesh make_icosphere(const Vec3& center, double radius, int subdivisions) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                             {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                             {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : verts) v = normalized(v);
  std::vector<Triangle> tris = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoint;
    auto mid = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      verts.push_back(normalized((verts[a] + verts[b]) * 0.5));
      const auto id = static_cast<std::uint32_t>(verts.size() - 1);
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Triangle> next;
    next.reserve(tris.size() * 4);
    for (const auto& t : tris) {
      const auto ab = mid(t[0], t[1]);
      const auto bc = mid(t[1], t[2]);
      const auto ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  TriangleMesh mesh;
  mesh.vertices.reserve(verts.size());
  for (const auto& v : verts) mesh.vertices.push_back(center + v * radius);
  mesh.triangles = std::move(tris);
  orient_outward(mesh, center);
  return mesh;
}

TriangleMesh make_blob(const Vec3& center, double radius, int subdivisions, double relief) {
  TriangleMesh mesh = make_icosphere({0, 0, 0}, 1.0, subdivisions);
  for (auto& v : mesh.vertices) {
    const double lobes = std::sin(2.0 * v.x + 0.3) * std::cos(3.0 * v.y) +
                         0.5 * std::sin(4.0 * v.z + 1.1) + 0.25 * std::cos(5.0 * v.x * v.y);
    v = center + v * (radius * (1.0 + relief * lobes));
  }
  return mesh;
}

TriangleMesh make_plane(double size, int divisions, double height) {
  TriangleMesh mesh;
  const int n = std::max(divisions, 1);
  const double step = size / n;
  const double origin = -size * 0.5;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh.vertices.push_back({origin + i * step, origin + j * step, height});
    }
  }
  auto id = [n](int i, int j) { return static_cast<std::uint32_t>(j * (n + 1) + i); };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return mesh;
}

}  // namespace tactile::geometry
