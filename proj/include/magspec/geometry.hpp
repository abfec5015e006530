#pragma once

#include <string>
#include <vector>

#include "magspec/mat2.hpp"

namespace magspec {

/// A bounded plane domain: either a simple CCW polygon or an axis-aligned
/// ellipse centered at the origin. `symmetry_order` records declared N-fold
/// rotational symmetry about the centroid; 0 is the disk sentinel meaning
/// "invariant under every rotation", 1 means no symmetry is claimed.
struct Domain {
  enum class Shape { Polygon, Ellipse };

  Shape shape = Shape::Polygon;
  std::vector<Vec2> vertices;    // polygon only, CCW
  Vec2 semi_axes{0.0, 0.0};      // ellipse only, (a, b)
  int symmetry_order = 1;
  std::string name = "domain";
};

/// Builds a polygon domain. Vertices are re-oriented to CCW when given
/// clockwise. Throws DegenerateDomain for near-zero area and Error when the
/// polygon self-intersects or a declared symmetry does not match the vertex
/// set (checked within 1e-9).
Domain polygon_domain(std::vector<Vec2> vertices, int symmetry_order = 1,
                      std::string name = "polygon");

/// Ellipse with semi-axes a, b > 0 centered at the origin. A circle (a == b)
/// gets the all-orders sentinel symmetry_order = 0, otherwise order 2.
Domain ellipse_domain(double a, double b, std::string name = "ellipse");

/// Regular N-gon with the given circumradius, vertices at angles
/// 2*pi*k/N + pi/2, centroid at the origin, declared symmetry N.
Domain regular_polygon(int n, double circumradius);

double area(const Domain& d);
Vec2 centroid(const Domain& d);

/// Second moment of area about the centroid, I = integral |x - c|^2 dx.
/// Polygons use the exact signed fan decomposition from the centroid;
/// ellipses the closed form pi*a*b*(a^2 + b^2)/4.
double moment_of_inertia(const Domain& d);

/// Image of the domain under an invertible linear map. Polygon vertices are
/// mapped directly (re-oriented CCW when det T < 0). Ellipse input must be a
/// disk; its image is recorded as the axis-aligned ellipse with the singular
/// values of T as axis scalings (the true image differs by a rotation, which
/// every functional and spectrum here is invariant under). The declared
/// symmetry order survives only when T is a scalar multiple of an orthogonal
/// matrix.
Domain apply_linear_map(const Domain& d, const Mat2& t);

/// Planck constant, field strength and Robin parameter adapted to the image
/// domain T(D): all scale by sqrt(2)/||T^-1||_HS, the field also by 1/|det T|.
struct TransformedParameters {
  double hbar_t;
  double beta_t;
  double sigma_t;
};

TransformedParameters transformed_parameters(const Mat2& t, double hbar, double beta,
                                             double sigma = 0.0);

/// (sum of eigenvalues) * A(d)^3 / I(d). The eigenvalues are expected to have
/// been computed at field strength beta/A(d); that is the caller's contract.
double normalized_functional(const std::vector<double>& eigs, const Domain& d);

/// | 2/||T^-1||_HS^2  -  (A^3/I)(T(d)) / (A^3/I)(d) |. Vanishes identically
/// for domains with rotational symmetry of order >= 3.
double functional_ratio_check(const Domain& d, const Mat2& t);

}  // namespace magspec
