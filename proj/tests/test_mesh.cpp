#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "magspec/domain_io.hpp"
#include "magspec/mesh.hpp"

using namespace magspec;

namespace {

// L-shaped hexagon (non-convex): unit square with the top-right quarter cut.
Domain l_shape() {
  return polygon_domain({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}}, 1, "l-shape");
}

long euler_characteristic(const Mesh& m) {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      edges.emplace(std::min(t[i], t[(i + 1) % 3]), std::max(t[i], t[(i + 1) % 3]));
    }
  }
  return static_cast<long>(m.vertex_count()) - static_cast<long>(edges.size()) +
         static_cast<long>(m.triangle_count());
}

}  // namespace

TEST_CASE("level-0 triangulations") {
  const Mesh tri = triangulate(builtin_domain("triangle"));
  CHECK(tri.triangle_count() == 3);  // centroid fan
  CHECK(tri.vertex_count() == 4);
  CHECK(tri.boundary_edges.size() == 3);
  CHECK(is_conforming(tri));

  const Mesh square = triangulate(builtin_domain("square"));
  CHECK(square.triangle_count() == 4);
  CHECK(is_conforming(square));

  const Mesh lshape = triangulate(l_shape());
  CHECK(lshape.triangle_count() == 4);  // ear clipping: n - 2
  CHECK(lshape.vertex_count() == 6);
  CHECK(is_conforming(lshape));
  CHECK(mesh_area(lshape) == doctest::Approx(0.75).epsilon(1e-14));

  const Mesh disk = triangulate(builtin_domain("disk"));
  CHECK(disk.triangle_count() == 256);
  CHECK(disk.curved_axes.has_value());
  CHECK(is_conforming(disk));
}

TEST_CASE("red refinement counts and conformity") {
  const Mesh square = triangulate(builtin_domain("square"));
  CHECK(refine(square, 0).triangle_count() == 4);

  const Mesh fine = refine(square, 3);
  CHECK(fine.triangle_count() == 4 * 64);
  CHECK(fine.level == 3);
  CHECK(is_conforming(fine));
  CHECK(euler_characteristic(fine) == 1);

  const Mesh lshape = refine(triangulate(l_shape()), 2);
  CHECK(is_conforming(lshape));
  CHECK(euler_characteristic(lshape) == 1);
  CHECK(mesh_area(lshape) == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("triangle areas sum to the polygon area at every level") {
  for (const char* name : {"triangle", "square", "hexagon"}) {
    const Domain d = builtin_domain(name);
    const double a = area(d);
    const Mesh base = triangulate(d);
    for (int level = 0; level <= 3; ++level) {
      CHECK(mesh_area(refine(base, level)) == doctest::Approx(a).epsilon(1e-12));
    }
  }
}

TEST_CASE("red refinement preserves the minimum angle exactly") {
  for (const char* name : {"triangle", "hexagon"}) {
    const Mesh base = triangulate(builtin_domain(name));
    const double angle0 = mesh_min_angle(base);
    for (int level : {1, 2, 3}) {
      CHECK(mesh_min_angle(refine(base, level)) == doctest::Approx(angle0).epsilon(1e-12));
    }
  }
}

TEST_CASE("mapping commutes with refinement for polygon meshes") {
  Mat2 t;
  t << 1.4, 0.3, -0.2, 0.9;
  const Mesh base = triangulate(builtin_domain("hexagon"));
  const Mesh a = refine(map_mesh(base, t), 2);
  const Mesh b = map_mesh(refine(base, 2), t);
  REQUIRE(a.vertex_count() == b.vertex_count());
  REQUIRE(a.triangles == b.triangles);
  for (std::size_t i = 0; i < a.vertex_count(); ++i) {
    CHECK((a.vertices[i] - b.vertices[i]).norm() <= 1e-12);
  }
}

TEST_CASE("map_mesh scales area by the determinant and restores orientation") {
  const Mesh square = refine(triangulate(builtin_domain("square")), 2);
  Mat2 stretch;
  stretch << 2, 0, 0, 1;
  CHECK(mesh_area(map_mesh(square, stretch)) == doctest::Approx(2.0).epsilon(1e-13));

  Mat2 mirror;
  mirror << -1, 0, 0, 1;
  const Mesh reflected = map_mesh(square, mirror);
  CHECK(mesh_area(reflected) == doctest::Approx(1.0).epsilon(1e-13));  // still CCW
  CHECK(is_conforming(reflected));

  CHECK_THROWS_AS(map_mesh(square, Mat2::Zero()), SingularMap);

  const Mesh same = map_mesh(square, Mat2::Identity());
  for (std::size_t i = 0; i < square.vertex_count(); ++i) {
    CHECK((same.vertices[i] - square.vertices[i]).norm() == 0.0);
  }
}

TEST_CASE("rotating the equilateral triangle mesh permutes its vertex set") {
  const Mesh mesh = refine(triangulate(builtin_domain("triangle")), 2);
  const Mesh rotated = map_mesh(mesh, rotation(2.0 * std::numbers::pi / 3.0));
  for (const Vec2& p : rotated.vertices) {
    double best = 1e300;
    for (const Vec2& q : mesh.vertices) best = std::min(best, (p - q).norm());
    CHECK(best <= 1e-9);
  }
}

TEST_CASE("ellipse refinement projects boundary midpoints onto the ellipse") {
  const Domain disk = builtin_domain("disk");
  const Mesh coarse = triangulate(disk);
  const Mesh fine = refine(coarse, 2);
  CHECK(is_conforming(fine));

  // All boundary vertices must sit on the unit circle.
  for (int v : boundary_vertices(fine)) {
    CHECK(fine.vertices[v].norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Projection moves the mesh area toward the disk area from below.
  const double pi = std::numbers::pi;
  CHECK(mesh_area(coarse) < mesh_area(fine));
  CHECK(mesh_area(fine) < pi);
  CHECK(mesh_area(fine) == doctest::Approx(pi).epsilon(1e-4));

  const Mesh ell = refine(triangulate(ellipse_domain(2.0, 0.5)), 1);
  for (int v : boundary_vertices(ell)) {
    const Vec2 p = ell.vertices[v];
    const double on = p.x() * p.x() / 4.0 + p.y() * p.y() / 0.25;
    CHECK(on == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("translation shifts vertices rigidly") {
  const Mesh mesh = refine(triangulate(builtin_domain("square")), 1);
  const Vec2 offset(2.5, -1.25);
  const Mesh moved = translate_mesh(mesh, offset);
  CHECK((mesh_centroid(moved) - mesh_centroid(mesh) - offset).norm() <= 1e-14);
  CHECK(mesh_area(moved) == doctest::Approx(mesh_area(mesh)).epsilon(1e-14));
}

TEST_CASE("mesh dump is valid json with the expected counts") {
  const Mesh mesh = triangulate(builtin_domain("square"));
  const std::string dump = mesh_to_json(mesh);
  CHECK(dump.find("\"vertices\"") != std::string::npos);
  CHECK(dump.find("\"triangles\"") != std::string::npos);
}
