#include "tampkit/geometry/arm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace tampkit::geometry {

FkResult fk(const ArmModel& arm, const Config& q) {
  if (!arm.within_limits(q)) throw std::domain_error("fk: configuration violates joint limits");
  FkResult r;
  Pose2 frame = arm.base;
  for (int i = 0; i < 3; ++i) {
    frame = frame * Pose2{0.0, 0.0, q[i]};
    r.link_poses[i] = frame;
    frame = frame * Pose2{arm.link_lengths[i], 0.0, 0.0};
  }
  r.ee = frame;
  return r;
}

Config normalize_config(const ArmModel& arm, const Config& q) {
  Config out = q;
  for (int i = 0; i < 3; ++i) {
    if (arm.limits[i].wraps()) {
      out[i] = wrap_angle(out[i]);
    } else {
      out[i] = std::clamp(out[i], arm.limits[i].lo, arm.limits[i].hi);
    }
  }
  return out;
}

Config config_delta(const ArmModel& arm, const Config& a, const Config& b) {
  Config d;
  for (int i = 0; i < 3; ++i) {
    d[i] = arm.limits[i].wraps() ? wrap_angle(b[i] - a[i]) : b[i] - a[i];
  }
  return d;
}

double config_distance(const ArmModel& arm, const Config& a, const Config& b) {
  return config_delta(arm, a, b).norm();
}

Config random_config(const ArmModel& arm, Rng& rng) {
  Config q;
  for (int i = 0; i < 3; ++i) q[i] = uniform_in(rng, arm.limits[i].lo, arm.limits[i].hi);
  return normalize_config(arm, q);
}

bool ee_pose_reachable(const ArmModel& arm, const Pose2& target) {
  const double l1 = arm.link_lengths[0], l2 = arm.link_lengths[1], l3 = arm.link_lengths[2];
  const Eigen::Vector2d wrist =
      target.translation() - l3 * Eigen::Vector2d(std::cos(target.theta), std::sin(target.theta));
  const double d = (wrist - arm.base.translation()).norm();
  return d <= l1 + l2 + 1e-9 && d >= std::abs(l1 - l2) - 1e-9;
}

namespace {

Eigen::Vector3d pose_error(const Pose2& target, const Pose2& current) {
  return {target.x - current.x, target.y - current.y, wrap_angle(target.theta - current.theta)};
}

}  // namespace

std::optional<Config> ik(const ArmModel& arm, const Pose2& target, const Config& q_seed,
                         Rng& rng, const IkParams& params) {
  if (!ee_pose_reachable(arm, target)) return std::nullopt;

  Config q = normalize_config(arm, q_seed);
  const double lambda2 = params.damping * params.damping;
  for (int attempt = 0; attempt <= params.restarts; ++attempt) {
    if (attempt > 0) q = random_config(arm, rng);
    for (int it = 0; it < params.max_iterations; ++it) {
      const FkResult f = fk(arm, q);
      const Eigen::Vector3d e = pose_error(target, f.ee);
      if (e.head<2>().norm() < 1e-6 && std::abs(e[2]) < 1e-6) break;

      Eigen::Matrix3d jac;
      for (int i = 0; i < 3; ++i) {
        const Eigen::Vector2d joint = f.link_poses[i].translation();
        jac(0, i) = -(f.ee.y - joint.y());
        jac(1, i) = f.ee.x - joint.x();
        jac(2, i) = 1.0;
      }
      const Eigen::Matrix3d jjt = jac * jac.transpose() + lambda2 * Eigen::Matrix3d::Identity();
      Eigen::Vector3d dq = jac.transpose() * jjt.ldlt().solve(e);
      const double step = dq.lpNorm<Eigen::Infinity>();
      if (step > 0.5) dq *= 0.5 / step;
      q = normalize_config(arm, q + dq);
    }
    const FkResult f = fk(arm, q);
    const Eigen::Vector3d e = pose_error(target, f.ee);
    if (e.head<2>().norm() <= params.pos_tol && std::abs(e[2]) <= params.ang_tol) return q;
  }
  return std::nullopt;
}

}  // namespace tampkit::geometry
