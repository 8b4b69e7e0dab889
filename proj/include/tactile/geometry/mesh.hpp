#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tactile/geometry/obj.hpp"
#include "tactile/vec3.hpp"

namespace tactile::geometry {

using Triangle = std::array<std::uint32_t, 3>;

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;  // counter-clockwise seen from outside
};

// Throws Error{ParseError} when a polygon is not a triangle.
TriangleMesh mesh_from_obj(const ObjDocument& doc);

std::string write_obj(const TriangleMesh& mesh);

// Closed procedural shapes, millimetres, outward winding.
TriangleMesh make_box(const Vec3& center, const Vec3& size);
TriangleMesh make_icosphere(const Vec3& center, double radius, int subdivisions);
// Smooth organic shape: an icosphere whose radius is modulated by low
// frequency harmonics. Subdivision 6 yields 81920 triangles.
TriangleMesh make_blob(const Vec3& center, double radius, int subdivisions,
                       double relief = 0.08);
// Open square tiled with 2 * divisions^2 triangles in the plane z = height,
// facing +z.
TriangleMesh make_plane(double size, int divisions, double height = 0.0);

}  // namespace tactile::geometry
