#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "magspec/errors.hpp"
#include "magspec/mat2.hpp"

namespace magspec {

/// Cyclic rotation group of order N >= 3: members U_m rotate the plane by
/// 2*pi*m/N for m = 1..N, so the last member is the identity.
class RotationGroup {
 public:
  explicit RotationGroup(int order) : order_(order) {
    if (order < 3) throw OrderTooLow();
    members_.reserve(static_cast<std::size_t>(order));
    for (int m = 1; m <= order; ++m) {
      members_.push_back(rotation(2.0 * std::numbers::pi * m / order));
    }
  }

  int order() const { return order_; }
  const std::vector<Mat2>& members() const { return members_; }
  const Mat2& member(int m) const { return members_.at(static_cast<std::size_t>(m - 1)); }

 private:
  int order_;
  std::vector<Mat2> members_;
};

namespace detail {

/// Plain conjugation average (1/N) sum U_m M U_m^T over rotations by 2*pi*m/N,
/// with no lower bound on N. The N >= 3 entry point is frame_average(); this
/// helper also serves the N = 2 counterexample path of the frames CLI command.
inline Mat2 rotation_average(const Mat2& m, int order) {
  Mat2 acc = Mat2::Zero();
  for (int k = 1; k <= order; ++k) {
    const Mat2 u = rotation(2.0 * std::numbers::pi * k / order);
    acc += u * m * u.transpose();
  }
  return acc / order;
}

}  // namespace detail

/// (1/N) sum_{m=1}^{N} U_m M U_m^T by explicit summation. Requires N >= 3.
inline Mat2 frame_average(const Mat2& m, int order) {
  if (order < 3) throw OrderTooLow();
  return detail::rotation_average(m, order);
}

/// Closed form of the rotation average: (tr(M)/2) Id + (M - M^T)/2.
/// Agrees with frame_average(M, N) for every N >= 3.
inline Mat2 frame_average_closed_form(const Mat2& m) {
  return 0.5 * m.trace() * Mat2::Identity() + 0.5 * (m - m.transpose());
}

/// The three conjugation averages derived from the closed form:
///   gram_inverse  = (1/N) sum U T^-1 T^-T U^T      ( = ||T^-1||^2/2 * Id )
///   gram_weighted = (1/N) sum U T^T M^T M T U^T    ( = ||M T||^2/2 * Id )
///   conjugated    = (1/N) sum U T^-1 M T U^T       ( = antisym(T^-1 M T), tr M = 0 only )
struct FrameAverages {
  Mat2 gram_inverse;
  Mat2 gram_weighted;
  Mat2 conjugated;
};

/// Computes the averages above by explicit summation over the order-N group.
/// The third identity only holds for trace-free M; requesting it with
/// |tr M| > 1e-14 throws TraceNotZero. With want_conjugated = false the
/// `conjugated` field is left zero and M may have any trace.
inline FrameAverages frame_consequences(const Mat2& t, const Mat2& m, int order,
                                        bool want_conjugated = true) {
  if (order < 3) throw OrderTooLow();
  if (t.determinant() == 0.0) throw SingularMap();
  if (want_conjugated && std::abs(m.trace()) > 1e-14) throw TraceNotZero();

  const Mat2 tinv = inverse(t);
  const RotationGroup group(order);
  FrameAverages out{Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};
  for (const Mat2& u : group.members()) {
    out.gram_inverse += u * (tinv * tinv.transpose()) * u.transpose();
    out.gram_weighted += u * (t.transpose() * m.transpose() * m * t) * u.transpose();
    if (want_conjugated) out.conjugated += u * (tinv * m * t) * u.transpose();
  }
  out.gram_inverse /= order;
  out.gram_weighted /= order;
  if (want_conjugated) out.conjugated /= order;
  return out;
}

/// (1/N) sum_{m=1}^{N} |T U_m^-1 y|^2 for a unit vector y; equals ||T||^2/2.
inline double frame_scalar_identity(const Mat2& t, const Vec2& y, int order) {
  if (order < 3) throw OrderTooLow();
  if (std::abs(y.norm() - 1.0) > 1e-12) throw NotUnitVector();
  const RotationGroup group(order);
  double acc = 0.0;
  for (const Mat2& u : group.members()) {
    acc += (t * u.transpose() * y).squaredNorm();
  }
  return acc / order;
}

/// sum_{m=1}^{N} |x . U_m y|^2 for unit y; the rotated copies of y form a
/// tight frame, so the sum equals (N/2) |x|^2.
inline double tight_frame_constant(const Vec2& x, const Vec2& y, int order) {
  if (order < 3) throw OrderTooLow();
  if (std::abs(y.norm() - 1.0) > 1e-12) throw NotUnitVector();
  const RotationGroup group(order);
  double acc = 0.0;
  for (const Mat2& u : group.members()) {
    const double dot = x.dot(u * y);
    acc += dot * dot;
  }
  return acc;
}

}  // namespace magspec
