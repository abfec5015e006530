#include "magspec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "magspec/errors.hpp"

namespace magspec {

namespace {

constexpr int kEllipseSides = 256;

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool is_convex(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = v[(i + 1) % n] - v[i];
    const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
    if (cross2(e0, e1) < -1e-14 * e0.norm() * e1.norm()) return false;
  }
  return true;
}

bool point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  const double d0 = cross2(b - a, p - a);
  const double d1 = cross2(c - b, p - b);
  const double d2 = cross2(a - c, p - c);
  return d0 > 0.0 && d1 > 0.0 && d2 > 0.0;
}

// Ear clipping on a simple CCW polygon. Triangle vertex indices refer to the
// original vertex order, so boundary edges keep their side identity.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<int> ring(n);
  for (int i = 0; i < n; ++i) ring[i] = i;
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(n - 2));

  while (ring.size() > 3) {
    const int m = static_cast<int>(ring.size());
    bool clipped = false;
    for (int i = 0; i < m; ++i) {
      const int ia = ring[(i + m - 1) % m], ib = ring[i], ic = ring[(i + 1) % m];
      const Vec2 &a = v[ia], &b = v[ib], &c = v[ic];
      if (cross2(b - a, c - b) <= 1e-14 * (b - a).norm() * (c - b).norm()) continue;
      bool blocked = false;
      for (int j : ring) {
        if (j == ia || j == ib || j == ic) continue;
        if (point_in_triangle(v[j], a, b, c)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      tris.push_back({ia, ib, ic});
      ring.erase(ring.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped) throw DegenerateDomain("DegenerateDomain: ear clipping found no ear");
  }
  tris.push_back({ring[0], ring[1], ring[2]});
  return tris;
}

Vec2 project_to_ellipse(const Vec2& p, const Vec2& axes) {
  const double rx = p.x() / axes.x();
  const double ry = p.y() / axes.y();
  const double s = std::sqrt(rx * rx + ry * ry);
  if (s == 0.0) return p;
  return p / s;
}

Mesh refine_once(const Mesh& m) {
  Mesh out;
  out.vertices = m.vertices;
  out.level = m.level + 1;
  out.domain_name = m.domain_name;
  out.curved_axes = m.curved_axes;
  out.triangles.reserve(4 * m.triangles.size());
  out.boundary_edges.reserve(2 * m.boundary_edges.size());

  std::map<std::pair<int, int>, int> midpoint;
  const auto edge_key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };

  // Boundary midpoints acquire their index first so they can be projected.
  std::map<std::pair<int, int>, int> boundary_side;
  for (const BoundaryEdge& e : m.boundary_edges) boundary_side[edge_key(e.a, e.b)] = e.side;

  const auto midpoint_of = [&](int a, int b) {
    const auto key = edge_key(a, b);
    if (const auto it = midpoint.find(key); it != midpoint.end()) return it->second;
    Vec2 p = 0.5 * (m.vertices[static_cast<std::size_t>(a)] + m.vertices[static_cast<std::size_t>(b)]);
    if (m.curved_axes && boundary_side.count(key) > 0) p = project_to_ellipse(p, *m.curved_axes);
    const int idx = static_cast<int>(out.vertices.size());
    out.vertices.push_back(p);
    midpoint.emplace(key, idx);
    return idx;
  };

  for (const auto& t : m.triangles) {
    const int a = t[0], b = t[1], c = t[2];
    const int ab = midpoint_of(a, b), bc = midpoint_of(b, c), ca = midpoint_of(c, a);
    out.triangles.push_back({a, ab, ca});
    out.triangles.push_back({ab, b, bc});
    out.triangles.push_back({ca, bc, c});
    out.triangles.push_back({ab, bc, ca});
  }

  for (const BoundaryEdge& e : m.boundary_edges) {
    const int mid = midpoint_of(e.a, e.b);
    out.boundary_edges.push_back({e.a, mid, e.side});
    out.boundary_edges.push_back({mid, e.b, e.side});
  }
  return out;
}

}  // namespace

Mesh triangulate(const Domain& d) {
  Domain poly = d;
  Mesh mesh;
  if (d.shape == Domain::Shape::Ellipse) {
    std::vector<Vec2> verts;
    verts.reserve(kEllipseSides);
    for (int k = 0; k < kEllipseSides; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / kEllipseSides + std::numbers::pi / 2.0;
      verts.emplace_back(d.semi_axes.x() * std::cos(angle), d.semi_axes.y() * std::sin(angle));
    }
    poly = polygon_domain(std::move(verts), 0, d.name);
    poly.symmetry_order = d.symmetry_order;
    mesh.curved_axes = d.semi_axes;
  }

  const std::vector<Vec2>& v = poly.vertices;
  const int n = static_cast<int>(v.size());
  mesh.domain_name = d.name;
  mesh.level = 0;

  if (is_convex(v)) {
    const Vec2 c = centroid(poly);
    mesh.vertices = v;
    mesh.vertices.push_back(c);
    const int ci = n;
    for (int i = 0; i < n; ++i) mesh.triangles.push_back({ci, i, (i + 1) % n});
  } else {
    mesh.vertices = v;
    mesh.triangles = ear_clip(v);
  }
  for (int i = 0; i < n; ++i) mesh.boundary_edges.push_back({i, (i + 1) % n, i});
  return mesh;
}

Mesh refine(const Mesh& m, int k) {
  if (k < 0) throw Error("refinement count must be >= 0");
  Mesh out = m;
  for (int i = 0; i < k; ++i) out = refine_once(out);
  return out;
}

Mesh map_mesh(const Mesh& m, const Mat2& t) {
  const double det = t.determinant();
  if (det == 0.0) throw SingularMap();
  Mesh out = m;
  for (Vec2& p : out.vertices) p = t * p;
  if (det < 0.0) {
    for (auto& tri : out.triangles) std::swap(tri[1], tri[2]);
  }
  out.domain_name = m.domain_name + "~mapped";
  out.curved_axes.reset();
  if (m.curved_axes && m.curved_axes->x() == m.curved_axes->y() && is_conformal(t)) {
    out.curved_axes = singular_values(t)(0) * (*m.curved_axes);
  }
  return out;
}

Mesh translate_mesh(const Mesh& m, const Vec2& offset) {
  Mesh out = m;
  for (Vec2& p : out.vertices) p += offset;
  out.curved_axes.reset();
  return out;
}

double mesh_area(const Mesh& m) {
  double acc = 0.0;
  for (const auto& t : m.triangles) {
    const Vec2& a = m.vertices[static_cast<std::size_t>(t[0])];
    const Vec2& b = m.vertices[static_cast<std::size_t>(t[1])];
    const Vec2& c = m.vertices[static_cast<std::size_t>(t[2])];
    acc += 0.5 * cross2(b - a, c - a);
  }
  return acc;
}

Vec2 mesh_centroid(const Mesh& m) {
  Vec2 acc = Vec2::Zero();
  double total = 0.0;
  for (const auto& t : m.triangles) {
    const Vec2& a = m.vertices[static_cast<std::size_t>(t[0])];
    const Vec2& b = m.vertices[static_cast<std::size_t>(t[1])];
    const Vec2& c = m.vertices[static_cast<std::size_t>(t[2])];
    const double w = 0.5 * cross2(b - a, c - a);
    acc += w * (a + b + c) / 3.0;
    total += w;
  }
  return acc / total;
}

double mesh_min_angle(const Mesh& m) {
  double best = std::numeric_limits<double>::max();
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      const Vec2& p = m.vertices[static_cast<std::size_t>(t[i])];
      const Vec2& q = m.vertices[static_cast<std::size_t>(t[(i + 1) % 3])];
      const Vec2& r = m.vertices[static_cast<std::size_t>(t[(i + 2) % 3])];
      const Vec2 u = q - p, w = r - p;
      best = std::min(best, std::atan2(std::abs(cross2(u, w)), u.dot(w)));
    }
  }
  return best;
}

std::vector<int> boundary_vertices(const Mesh& m) {
  std::vector<int> out;
  out.reserve(2 * m.boundary_edges.size());
  for (const BoundaryEdge& e : m.boundary_edges) {
    out.push_back(e.a);
    out.push_back(e.b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_conforming(const Mesh& m) {
  std::map<std::pair<int, int>, int> count;
  const auto edge_key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) count[edge_key(t[i], t[(i + 1) % 3])] += 1;
  }
  std::map<std::pair<int, int>, int> boundary;
  for (const BoundaryEdge& e : m.boundary_edges) boundary[edge_key(e.a, e.b)] += 1;

  for (const auto& [key, c] : count) {
    const bool on_boundary = boundary.count(key) > 0;
    if (on_boundary && c != 1) return false;
    if (!on_boundary && c != 2) return false;
  }
  for (const auto& [key, c] : boundary) {
    if (c != 1 || count.count(key) == 0) return false;
  }
  return true;
}

std::string mesh_to_json(const Mesh& m) {
  nlohmann::json doc;
  auto verts = nlohmann::json::array();
  for (const Vec2& p : m.vertices) verts.push_back({p.x(), p.y()});
  auto tris = nlohmann::json::array();
  for (const auto& t : m.triangles) tris.push_back({t[0], t[1], t[2]});
  doc["vertices"] = std::move(verts);
  doc["triangles"] = std::move(tris);
  doc["level"] = m.level;
  return doc.dump() + "\n";
}

}  // namespace magspec
