#include "magspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "magspec/errors.hpp"

namespace magspec {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const std::vector<Vec2>& v) {
  double acc = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) acc += cross2(v[i], v[(i + 1) % n]);
  return 0.5 * acc;
}

double diameter(const std::vector<Vec2>& v) {
  Vec2 lo = v.front(), hi = v.front();
  for (const Vec2& p : v) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

// Proper segment intersection between non-adjacent polygon edges.
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = cross2(b - a, c - a);
  const double d2 = cross2(b - a, d - a);
  const double d3 = cross2(d - c, a - c);
  const double d4 = cross2(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

bool is_simple(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Skip edges sharing a vertex (adjacent, and the wrap-around pair).
      if (j == i || j == (i + 1) % n || (j + 1) % n == i) continue;
      if (segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
    }
  }
  return true;
}

Vec2 polygon_centroid(const std::vector<Vec2>& v, double a) {
  Vec2 acc = Vec2::Zero();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % n];
    acc += (p + q) * cross2(p, q);
  }
  return acc / (6.0 * a);
}

// Matches the rotated vertex set against the original one within tol.
bool vertex_set_matches(const std::vector<Vec2>& v, const Mat2& u, const Vec2& c, double tol) {
  for (const Vec2& p : v) {
    const Vec2 q = c + u * (p - c);
    double best = std::numeric_limits<double>::max();
    for (const Vec2& w : v) best = std::min(best, (q - w).norm());
    if (best > tol) return false;
  }
  return true;
}

void check_polygon(const std::vector<Vec2>& v) {
  if (v.size() < 3) throw DegenerateDomain("DegenerateDomain: polygon needs >= 3 vertices");
  const double a = signed_area(v);
  const double diam = diameter(v);
  if (std::abs(a) <= 1e-14 * diam * diam) {
    throw DegenerateDomain("DegenerateDomain: polygon area is numerically zero");
  }
  if (!is_simple(v)) throw Error("polygon self-intersects");
}

}  // namespace

Domain polygon_domain(std::vector<Vec2> vertices, int symmetry_order, std::string name) {
  check_polygon(vertices);
  if (signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
  if (symmetry_order < 0) throw Error("symmetry_order must be >= 0");
  Domain d;
  d.shape = Domain::Shape::Polygon;
  d.vertices = std::move(vertices);
  d.symmetry_order = symmetry_order;
  d.name = std::move(name);
  if (symmetry_order > 1) {
    const Vec2 c = centroid(d);
    const Mat2 u = rotation(2.0 * std::numbers::pi / symmetry_order);
    if (!vertex_set_matches(d.vertices, u, c, 1e-9)) {
      throw Error("declared symmetry order " + std::to_string(symmetry_order) +
                  " does not match the vertex set");
    }
  }
  return d;
}

Domain ellipse_domain(double a, double b, std::string name) {
  if (!(a > 0.0) || !(b > 0.0)) throw DegenerateDomain("DegenerateDomain: ellipse needs a, b > 0");
  Domain d;
  d.shape = Domain::Shape::Ellipse;
  d.semi_axes = Vec2(a, b);
  d.symmetry_order = (a == b) ? 0 : 2;
  d.name = std::move(name);
  return d;
}

Domain regular_polygon(int n, double circumradius) {
  if (n < 3) throw OrderTooLow("OrderTooLow: regular polygon needs N >= 3");
  if (!(circumradius > 0.0)) throw DegenerateDomain("DegenerateDomain: circumradius must be > 0");
  std::vector<Vec2> verts;
  verts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + std::numbers::pi / 2.0;
    verts.emplace_back(circumradius * std::cos(angle), circumradius * std::sin(angle));
  }
  Domain d = polygon_domain(std::move(verts), n, "regular-" + std::to_string(n));
  return d;
}

double area(const Domain& d) {
  if (d.shape == Domain::Shape::Ellipse) {
    return std::numbers::pi * d.semi_axes.x() * d.semi_axes.y();
  }
  const double a = signed_area(d.vertices);
  const double diam = diameter(d.vertices);
  if (a <= 1e-14 * diam * diam) throw DegenerateDomain();
  return a;
}

Vec2 centroid(const Domain& d) {
  if (d.shape == Domain::Shape::Ellipse) return Vec2::Zero();
  return polygon_centroid(d.vertices, area(d));
}

double moment_of_inertia(const Domain& d) {
  if (d.shape == Domain::Shape::Ellipse) {
    const double a = d.semi_axes.x(), b = d.semi_axes.y();
    return std::numbers::pi * a * b * (a * a + b * b) / 4.0;
  }
  const Vec2 c = centroid(d);
  // Signed fan from the centroid; each triangle (c, v_i, v_{i+1}) contributes
  // its exact second moment about the apex. Signed areas make this valid for
  // any simple polygon, convex or not.
  double acc = 0.0;
  const std::size_t n = d.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 u = d.vertices[i] - c;
    const Vec2 w = d.vertices[(i + 1) % n] - c;
    acc += cross2(u, w) * (u.squaredNorm() + u.dot(w) + w.squaredNorm());
  }
  return acc / 12.0;
}

Domain apply_linear_map(const Domain& d, const Mat2& t) {
  if (t.determinant() == 0.0) throw SingularMap();
  const bool conformal = is_conformal(t);

  if (d.shape == Domain::Shape::Ellipse) {
    if (d.semi_axes.x() != d.semi_axes.y()) {
      throw Error("linear images of non-circular ellipses are not representable");
    }
    const Vec2 sv = singular_values(t);
    Domain image = ellipse_domain(sv(0) * d.semi_axes.x(), sv(1) * d.semi_axes.y(),
                                  d.name + "~mapped");
    return image;
  }

  std::vector<Vec2> mapped;
  mapped.reserve(d.vertices.size());
  for (const Vec2& p : d.vertices) mapped.push_back(t * p);
  if (t.determinant() < 0.0) std::reverse(mapped.begin(), mapped.end());

  Domain image;
  image.shape = Domain::Shape::Polygon;
  image.vertices = std::move(mapped);
  image.symmetry_order = conformal ? d.symmetry_order : 1;
  image.name = d.name + "~mapped";
  return image;
}

TransformedParameters transformed_parameters(const Mat2& t, double hbar, double beta,
                                             double sigma) {
  if (!(hbar > 0.0)) throw InvalidPlanck();
  if (sigma < 0.0) throw Error("sigma must be >= 0");
  const double det = t.determinant();
  if (det == 0.0) throw SingularMap();
  const double scale = std::numbers::sqrt2 / hs_norm(inverse(t));
  return TransformedParameters{scale * hbar, scale * beta / std::abs(det), scale * sigma};
}

double normalized_functional(const std::vector<double>& eigs, const Domain& d) {
  if (eigs.empty()) throw NoEigenvalues();
  double sum = 0.0;
  for (double v : eigs) sum += v;
  const double a = area(d);
  return sum * a * a * a / moment_of_inertia(d);
}

double functional_ratio_check(const Domain& d, const Mat2& t) {
  if (d.shape != Domain::Shape::Polygon) throw Error("functional_ratio_check needs a polygon");
  if (t.determinant() == 0.0) throw SingularMap();
  const double lhs = 2.0 / (hs_norm(inverse(t)) * hs_norm(inverse(t)));
  const Domain image = apply_linear_map(d, t);
  const double a0 = area(d), i0 = moment_of_inertia(d);
  const double a1 = area(image), i1 = moment_of_inertia(image);
  const double rhs = (a1 * a1 * a1 / i1) / (a0 * a0 * a0 / i0);
  return std::abs(lhs - rhs);
}

}  // namespace magspec
