#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "magspec/geometry.hpp"
#include "magspec/mat2.hpp"

namespace magspec {

/// Boundary edge (a, b) lying on polygon side `side` (index into the source
/// polygon's edge list; one synthetic side per 256-gon edge for ellipses).
struct BoundaryEdge {
  int a;
  int b;
  int side;
};

/// Conforming triangle mesh. Triangles are CCW vertex-index triples; every
/// interior edge is shared by exactly two triangles and every boundary edge
/// by one. `curved_axes`, when set, marks the mesh as ellipse-derived: red
/// refinement projects new boundary midpoints radially onto that ellipse.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  int level = 0;
  std::string domain_name = "mesh";
  std::optional<Vec2> curved_axes;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
};

/// Level-0 mesh of a domain. Convex polygons are fanned from the centroid;
/// non-convex ones are ear-clipped. Ellipses are first replaced by the
/// inscribed 256-gon (vertex angles matching regular_polygon) and keep a
/// curved-boundary marker so refinement tracks the true ellipse.
Mesh triangulate(const Domain& d);

/// k rounds of red refinement (each triangle split into four congruence
/// classes by its edge midpoints). Boundary midpoints of ellipse-derived
/// meshes are projected radially onto the ellipse.
Mesh refine(const Mesh& m, int k);

/// Vertex positions mapped by an invertible T; connectivity unchanged, with
/// triangle orientation flipped back to CCW when det T < 0. The curved
/// marker survives only circle meshes under conformal maps (scaled radius);
/// otherwise the result is treated as polygon-exact.
Mesh map_mesh(const Mesh& m, const Mat2& t);

/// Rigid translation of every vertex. The curved-boundary marker is dropped
/// (the recorded ellipse is origin-centered).
Mesh translate_mesh(const Mesh& m, const Vec2& offset);

double mesh_area(const Mesh& m);
Vec2 mesh_centroid(const Mesh& m);
double mesh_min_angle(const Mesh& m);

/// Ascending list of vertex indices incident to a boundary edge.
std::vector<int> boundary_vertices(const Mesh& m);

/// True when every interior edge has exactly two incident triangles, every
/// listed boundary edge exactly one, and no other edge is deficient.
bool is_conforming(const Mesh& m);

/// JSON dump with "vertices" and "triangles" arrays (visualization only).
std::string mesh_to_json(const Mesh& m);

}  // namespace magspec
