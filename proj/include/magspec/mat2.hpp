#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "magspec/errors.hpp"

namespace magspec {

/// Real 2x2 matrices and plane vectors. All heavier algebra (SVD, solves)
/// goes through Eigen; this header only adds the handful of scalar services
/// the rest of the library leans on.
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

/// Rotation of the plane by `angle` radians (counter-clockwise).
inline Mat2 rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat2 u;
  u << c, -s, s, c;
  return u;
}

/// Hilbert-Schmidt (Frobenius) norm, sqrt(tr M M^dagger).
template <typename Derived>
double hs_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.norm();
}

inline bool is_invertible(const Mat2& t, double tol = 0.0) {
  return std::abs(t.determinant()) > tol;
}

/// Inverse of a 2x2 matrix; throws SingularMap when det == 0.
inline Mat2 inverse(const Mat2& t) {
  const double det = t.determinant();
  if (det == 0.0) throw SingularMap();
  Mat2 inv;
  inv << t(1, 1), -t(0, 1), -t(1, 0), t(0, 0);
  return inv / det;
}

/// Singular values of T, descending.
inline Vec2 singular_values(const Mat2& t) {
  return Eigen::JacobiSVD<Mat2>(t).singularValues();
}

/// True when T = r*U with U orthogonal, i.e. both singular values coincide.
inline bool is_conformal(const Mat2& t, double tol = 1e-12) {
  const Vec2 sv = singular_values(t);
  return sv(0) - sv(1) <= tol * (1.0 + sv(0));
}

/// Deviation | ||T^-1||_HS - ||T||_HS / |det T| |.
///
/// The two expressions agree identically for invertible 2x2 matrices, so the
/// return value measures nothing but floating-point round-off.
inline double hs_inverse_identity_check(const Mat2& t) {
  const double det = t.determinant();
  if (det == 0.0) throw SingularMap();
  return std::abs(hs_norm(inverse(t)) - hs_norm(t) / std::abs(det));
}

}  // namespace magspec
