#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>

namespace tampkit::geometry {

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r = std::numbers::pi;
  return r;
}

// Planar rigid transform (SE(2)). theta is kept in (-pi, pi].
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  static Pose2 identity() { return {}; }

  Eigen::Vector2d translation() const { return {x, y}; }

  // Applies this transform to a point expressed in the local frame.
  Eigen::Vector2d apply(const Eigen::Vector2d& p) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {x + c * p.x() - s * p.y(), y + s * p.x() + c * p.y()};
  }

  // Rotates a direction vector into the parent frame (no translation).
  Eigen::Vector2d rotate(const Eigen::Vector2d& v) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
  }
};

// Composition: (a * b) maps b-local coordinates through b, then a.
inline Pose2 operator*(const Pose2& a, const Pose2& b) {
  const Eigen::Vector2d t = a.apply({b.x, b.y});
  return {t.x(), t.y(), wrap_angle(a.theta + b.theta)};
}

inline Pose2 inverse(const Pose2& p) {
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  return {-(c * p.x + s * p.y), -(-s * p.x + c * p.y), wrap_angle(-p.theta)};
}

inline bool approx_equal(const Pose2& a, const Pose2& b, double tol) {
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
         std::abs(wrap_angle(a.theta - b.theta)) <= tol;
}

inline bool exactly_equal(const Pose2& a, const Pose2& b) {
  return a.x == b.x && a.y == b.y && a.theta == b.theta;
}

}  // namespace tampkit::geometry
