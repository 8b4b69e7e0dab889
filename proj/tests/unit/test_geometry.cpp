#include <random>
#include <thread>

#include "doctest.h"
#include "oracles.hpp"
#include "tactile/error.hpp"
#include "tactile/geometry/scene.hpp"

using namespace tactile;
using namespace tactile::geometry;

namespace {

SceneModel scene_of(TriangleMesh mesh, std::uint8_t level = 0) {
  std::vector<MeshSource> src;
  src.push_back({std::move(mesh), MaterialMap::uniform(level)});
  return load_scene(std::move(src));
}

const Vec3 kCubeSize{200, 200, 200};

}  // namespace

TEST_CASE("load_scene: canonical primitives") {
  const auto cube = scene_of(make_box({0, 0, 0}, kCubeSize));
  CHECK(cube.triangle_count() == 12);
  CHECK(cube.sharp_edge_count() == 12);
  CHECK(cube.corner_count() == 8);

  const auto sphere = scene_of(make_icosphere({0, 0, 0}, 50.0, 2), 1);
  CHECK(sphere.triangle_count() == 320);
  CHECK(sphere.bvh_depth() > 0);
  CHECK(sphere.sharp_edge_count() == 0);
  CHECK(sphere.corner_count() == 0);
  for (const auto& f : sphere.faces()) CHECK(f.k_texture == 1);
  double max_dihedral = 0.0;
  for (const auto& e : sphere.edges()) max_dihedral = std::max(max_dihedral, e.dihedral_deg);
  CHECK(max_dihedral < 30.0);
}

TEST_CASE("parse_obj rejects malformed input") {
  CHECK_THROWS_AS(parse_obj("v 0 0 nan\nv 1 0 0\nv 0 1 0\nf 1 2 3\n"), Error);
  try {
    parse_obj("v 0 0 nan\n");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  CHECK_THROWS_AS(parse_obj("v 0 0\n"), Error);
  CHECK_THROWS_AS(parse_obj("v 0 0 0\nf 1 2 3\n"), Error);
  CHECK_THROWS_AS(parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 x 3\n"), Error);

  const auto doc = parse_obj("# quad\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nvn 0 0 1\nf 1//1 2//1 3//1 4//1\n");
  CHECK(doc.polygons.size() == 1);
  CHECK(doc.polygons[0].size() == 4);
  CHECK(doc.polygon_lines[0] == 7);
  CHECK_THROWS_AS(mesh_from_obj(doc), Error);

  const auto neg = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf -3 -2 -1\n");
  CHECK(neg.polygons[0] == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("load_scene error paths") {
  TriangleMesh flat;
  flat.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 3, 1}};
  flat.triangles = {{0, 1, 2}};
  try {
    scene_of(flat);
    FAIL("expected DegenerateMesh");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateMesh);
  }

  TriangleMesh fan;
  fan.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}};
  fan.triangles = {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}};
  try {
    scene_of(fan);
    FAIL("expected NonManifold");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonManifold);
  }

  CHECK_THROWS_AS(load_scene({}), Error);
}

TEST_CASE("material map grammar") {
  const auto map = parse_material_map("# levels\n* 1\n0-3 2\n7 0\n");
  std::vector<std::uint8_t> levels;
  std::vector<bool> assigned;
  map.apply(10, levels, assigned);
  CHECK(levels == std::vector<std::uint8_t>{2, 2, 2, 2, 1, 1, 1, 0, 1, 1});
  CHECK(std::all_of(assigned.begin(), assigned.end(), [](bool b) { return b; }));

  parse_material_map("2-4 1").apply(6, levels, assigned);
  CHECK(assigned == std::vector<bool>{false, false, true, true, true, false});

  CHECK_THROWS_AS(parse_material_map("0-3 5"), Error);
  CHECK_THROWS_AS(parse_material_map("4-1 1"), Error);
  CHECK_THROWS_AS(parse_material_map("0 1 2"), Error);
}

TEST_CASE("query_contact: cube examples") {
  const auto cube = scene_of(make_box({0, 0, 0}, kCubeSize));

  const auto face = query_contact(cube, {0, 0, 101});
  CHECK(face.feature == Feature::Face);
  CHECK(face.signed_distance == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(face.surface_normal.z == doctest::Approx(1.0));
  CHECK_FALSE(face.edge_orientation_bin.has_value());

  const auto corner = query_contact(cube, {101.5, 101.0, 101.2});
  CHECK(corner.feature == Feature::Corner);
  CHECK_FALSE(corner.edge_orientation_bin.has_value());

  // On the top face, 1 mm from two edges meeting at a vertex.
  CHECK(query_contact(cube, {99, 99, 100.5}).feature == Feature::Corner);

  const auto edge = query_contact(cube, {0, 101, 101});
  CHECK(edge.feature == Feature::Edge);
  REQUIRE(edge.edge_orientation_bin.has_value());
  CHECK(*edge.edge_orientation_bin == EdgeBin::H);
  CHECK(std::abs(edge.surface_tangent.x) == doctest::Approx(1.0));

  // Inside the band but on the face.
  CHECK(query_contact(cube, {0, 98.5, 100.5}).feature == Feature::Edge);
  CHECK(query_contact(cube, {0, 97.5, 100.5}).feature == Feature::Face);

  const auto inside = query_contact(cube, {0, 0, 90});
  CHECK(inside.signed_distance == doctest::Approx(-10.0));
}

TEST_CASE("classify_feature rules") {
  CHECK(classify_feature({SimplexKind::Triangle, 0, 0.0}, {}) == Feature::Face);
  CHECK(classify_feature({SimplexKind::Edge, 0, 0.0}, {0.0, 0, 0, true}) == Feature::Face);
  CHECK(classify_feature({SimplexKind::Edge, 0, 0.0}, {90.0, 0, 0, true}) == Feature::Edge);
  CHECK(classify_feature({SimplexKind::Edge, 0, 2.5}, {90.0, 0, 0, true}) == Feature::Face);
  CHECK(classify_feature({SimplexKind::Edge, 0, 0.0}, {29.9, 0, 0, true}) == Feature::Face);
  CHECK(classify_feature({SimplexKind::Vertex, 0, 0.0}, {0.0, 3, 90.0, true}) == Feature::Corner);
  CHECK(classify_feature({SimplexKind::Vertex, 0, 0.0}, {0.0, 2, 0.0, true}) == Feature::Face);
  // Smooth cone tip: no sharp edges but a large deficit.
  CHECK(classify_feature({SimplexKind::Vertex, 0, 0.0}, {0.0, 0, 120.0, true}) == Feature::Corner);
  CHECK(classify_feature({SimplexKind::Vertex, 0, 0.0}, {0.0, 0, 120.0, false}) == Feature::Face);

  // Against the primitive's known angles.
  const auto cube = scene_of(make_box({0, 0, 0}, kCubeSize));
  int sharp = 0;
  for (const auto& e : cube.edges()) {
    if (e.face_count != 2) continue;
    const auto f = classify_feature({SimplexKind::Edge, 0, 0.0}, {e.dihedral_deg, 0, 0, true});
    if (e.dihedral_deg > 45.0) {
      CHECK(e.dihedral_deg == doctest::Approx(90.0));
      CHECK(f == Feature::Edge);
      ++sharp;
    } else {
      CHECK(e.dihedral_deg == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(f == Feature::Face);
    }
  }
  CHECK(sharp == 12);
  for (const auto& v : cube.vertex_info()) {
    CHECK(v.sharp_edges == 3);
    CHECK(v.cone_deficit_deg == doctest::Approx(90.0));
    CHECK(v.corner);
  }
}

TEST_CASE("edge orientation quantization") {
  CHECK(edge_bin_from_angle(0.0) == EdgeBin::H);
  CHECK(edge_bin_from_angle(50.0) == EdgeBin::D1);
  CHECK(edge_bin_from_angle(22.5) == EdgeBin::H);
  CHECK(edge_bin_from_angle(67.5) == EdgeBin::D1);
  CHECK(edge_bin_from_angle(112.5) == EdgeBin::V);
  CHECK(edge_bin_from_angle(157.5) == EdgeBin::D2);
  CHECK(edge_bin_from_angle(170.0) == EdgeBin::H);

  // Exhaustive 1 degree sweep against nearest-centre arithmetic.
  const std::vector<double> centres = {0, 45, 90, 135, 180};
  for (int a = 0; a < 360; ++a) {
    const int expected = oracle::nearest_centre(a % 180, centres) % 4;
    CHECK(static_cast<int>(edge_bin_from_angle(a)) == expected);
  }

  const PadFrame view;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 d{u(rng), u(rng), u(rng)};
    const auto a = quantize_edge_orientation(d, view);
    const auto b = quantize_edge_orientation(-d, view);
    CHECK(a.bin == b.bin);
    CHECK(a.angle_deg == b.angle_deg);
    CHECK(a.angle_deg >= 0.0);
    CHECK(a.angle_deg < 180.0);
  }

  const auto deg = quantize_edge_orientation({0, 0, 1}, view);
  CHECK(deg.degenerate);
  CHECK(deg.bin == EdgeBin::H);

  // A rotated pad turns a world-x edge into a vertical one.
  PadFrame turned;
  turned.forward = {1, 0, 0};
  CHECK(quantize_edge_orientation({1, 0, 0}, turned).bin == EdgeBin::V);
}

TEST_CASE("closest-point correctness against brute force") {
  std::mt19937_64 rng(11);
  const std::vector<TriangleMesh> meshes = {make_box({0, 0, 0}, kCubeSize),
                                            make_icosphere({5, -3, 2}, 50.0, 2),
                                            make_blob({0, 0, 0}, 60.0, 3)};
  for (const auto& mesh : meshes) {
    const auto scene = scene_of(mesh);
    std::uniform_real_distribution<double> u(-150.0, 150.0);
    for (int i = 0; i < 1000; ++i) {
      const Vec3 p{u(rng), u(rng), u(rng)};
      const auto c = query_contact(scene, p);
      const auto ref = oracle::brute_closest(mesh, p);
      CHECK(std::abs(std::abs(c.signed_distance) - ref.distance) < 1e-6);
      CHECK(std::abs(std::abs(c.signed_distance) - norm(p - c.closest_point)) < 1e-6);
      CHECK(std::abs(norm(c.surface_normal) - 1.0) < 1e-6);
      CHECK(std::abs(norm(c.surface_tangent) - 1.0) < 1e-6);
      CHECK(std::abs(dot(c.surface_normal, c.surface_tangent)) < 1e-6);
      CHECK(c.edge_orientation_bin.has_value() == (c.feature == Feature::Edge));
    }
  }
}

TEST_CASE("signed distance sign on closed meshes") {
  const auto mesh = make_icosphere({0, 0, 0}, 50.0, 3);
  const auto scene = scene_of(mesh);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-80.0, 80.0);
  for (int i = 0; i < 500; ++i) {
    const Vec3 p{u(rng), u(rng), u(rng)};
    const auto c = query_contact(scene, p);
    // The icosphere is inscribed in the radius-50 sphere; stay clear of the gap.
    if (norm(p) > 50.5) CHECK(c.signed_distance > 0.0);
    if (norm(p) < 45.0) CHECK(c.signed_distance < 0.0);
  }
}

TEST_CASE("sphere classifies Face everywhere; cube bands match analytic labels") {
  const auto sphere = scene_of(make_icosphere({0, 0, 0}, 50.0, 2));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p = normalized(Vec3{g(rng), g(rng), g(rng)}) * (40.0 + 20.0 * (i % 7) / 6.0);
    CHECK(query_contact(sphere, p).feature == Feature::Face);
  }

  const auto mesh = make_box({0, 0, 0}, kCubeSize);
  const auto cube = scene_of(mesh);
  const auto feats = oracle::box_features({0, 0, 0}, kCubeSize);
  std::uniform_real_distribution<double> off(-6.0, 6.0);
  std::uniform_int_distribution<int> pick(0, 11);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& [a, b] = feats.edges[pick(rng)];
    const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const Vec3 p = a + (b - a) * t + Vec3{off(rng), off(rng), off(rng)};
    const auto ref = oracle::brute_closest(mesh, p);
    const auto lab = oracle::classify_box_point(feats, ref.point, 2.0);
    if (std::abs(lab.corner_distance - 2.0) < 0.01 || std::abs(lab.edge_distance - 2.0) < 0.01) continue;
    const auto c = query_contact(cube, p);
    ++checked;
    CHECK(static_cast<int>(c.feature) == static_cast<int>(lab.label));
  }
  CHECK(checked > 900);
}

TEST_CASE("query_contact is pure and safe for concurrent readers") {
  const auto scene = scene_of(make_blob({0, 0, 0}, 60.0, 4));
  std::vector<Vec3> pts;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-90.0, 90.0);
  for (int i = 0; i < 400; ++i) pts.push_back({u(rng), u(rng), u(rng)});
  std::vector<ContactSample> ref;
  for (const auto& p : pts) ref.push_back(query_contact(scene, p));
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(query_contact(scene, pts[i]) == ref[i]);

  std::vector<int> mismatches(4, 0);
  std::vector<std::thread> readers;
  for (int r = 0; r < 4; ++r) {
    readers.emplace_back([&, r] {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!(query_contact(scene, pts[i]) == ref[i])) ++mismatches[r];
      }
    });
  }
  for (auto& t : readers) t.join();
  for (int m : mismatches) CHECK(m == 0);
}

TEST_CASE("equidistant triangles resolve to the smallest index") {
  const auto mesh = make_box({0, 0, 0}, kCubeSize);
  const auto cube = scene_of(mesh);
  const auto c = query_contact(cube, {0, 0, 0});
  std::size_t smallest = mesh.triangles.size();
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto& t = mesh.triangles[i];
    const auto q = oracle::triangle_point({0, 0, 0}, mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
    if (std::abs(norm(q) - 100.0) < 1e-9) smallest = std::min(smallest, i);
  }
  CHECK(c.triangle == smallest);
}

TEST_CASE("multiple meshes keep their own texture levels") {
  std::vector<MeshSource> src;
  src.push_back({make_box({-150, 0, 0}, {100, 100, 100}), MaterialMap::uniform(0)});
  src.push_back({make_box({150, 0, 0}, {100, 100, 100}), MaterialMap::uniform(2)});
  const auto scene = load_scene(std::move(src));
  CHECK(scene.mesh_count() == 2);
  CHECK(scene.triangle_count() == 24);
  CHECK(query_contact(scene, {-150, 0, 51}).k_texture == 0);
  CHECK(query_contact(scene, {150, 0, 51}).k_texture == 2);
}

TEST_CASE("obj round trip through write_obj") {
  const auto mesh = make_icosphere({1, 2, 3}, 10.0, 1);
  const auto back = mesh_from_obj(parse_obj(write_obj(mesh)));
  CHECK(back.vertices == mesh.vertices);
  CHECK(back.triangles == mesh.triangles);
}
