#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <random>

#include "tampkit/geometry/pose2.hpp"
#include "tampkit/geometry/shape.hpp"

namespace tampkit::geometry {

using Config = Eigen::Vector3d;
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the raw generator; avoids the
// implementation-defined std::uniform_real_distribution.
inline double uniform01(Rng& rng) { return (rng() >> 11) * 0x1.0p-53; }
inline double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline bool exactly_equal(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return a[0] == b[0] && a[1] == b[1] && a[2] == b[2];
}

struct JointLimit {
  double lo = -std::numbers::pi;
  double hi = std::numbers::pi;
  // A joint spanning a full turn is treated as continuous (wrapping).
  bool wraps() const { return hi - lo >= 2.0 * std::numbers::pi - 1e-9; }
};

// Fixed-base planar 3R arm.
struct ArmModel {
  Pose2 base;
  std::array<double, 3> link_lengths{0.42, 0.34, 0.26};
  double link_halfwidth = 0.022;
  // The distal link's collision capsule stops this far short of the
  // end-effector point so the gripper tip can meet grasp ports without
  // the capsule itself contacting the object.
  double tip_clearance = 0.06;
  std::array<JointLimit, 3> limits{};

  double reach() const { return link_lengths[0] + link_lengths[1] + link_lengths[2]; }
  bool within_limits(const Config& q, double tol = 1e-9) const {
    for (int i = 0; i < 3; ++i)
      if (q[i] < limits[i].lo - tol || q[i] > limits[i].hi + tol) return false;
    return true;
  }
  // Collision capsule of link i in the link's local frame (origin at the
  // proximal joint, +x along the link).
  Shape link_shape(int i) const {
    const double len = (i == 2) ? std::max(link_lengths[2] - tip_clearance, 0.01)
                                : link_lengths[i];
    return Shape::make_capsule(len, link_halfwidth);
  }
};

struct FkResult {
  Pose2 ee;
  std::array<Pose2, 3> link_poses;  // frame at each link's proximal joint
};

// Planar chain composition. Throws std::domain_error on joint-limit violation.
FkResult fk(const ArmModel& arm, const Config& q);

// Exact planar solvability test, ignoring limits and collisions: the target
// pose pins the wrist, which the two proximal links must span.
bool ee_pose_reachable(const ArmModel& arm, const Pose2& target);

struct IkParams {
  int max_iterations = 200;
  int restarts = 20;
  double damping = 0.1;  // lambda in the damped least-squares step
  double pos_tol = 1e-4;
  double ang_tol = 1e-3;
};

// Damped least-squares IK from q_seed with random restarts inside joint
// limits. Returns nullopt after the restart budget; failure is an expected
// sampling miss, not an error.
std::optional<Config> ik(const ArmModel& arm, const Pose2& target, const Config& q_seed,
                         Rng& rng, const IkParams& params = {});

// Joint-space distance: L2 over per-joint differences, wrapping joints
// measured along the shortest arc.
double config_distance(const ArmModel& arm, const Config& a, const Config& b);

// Per-joint difference b - a, wrapped for continuous joints.
Config config_delta(const ArmModel& arm, const Config& a, const Config& b);

// Normalizes wrapping joints into (-pi, pi]; clamps limited joints.
Config normalize_config(const ArmModel& arm, const Config& q);

Config random_config(const ArmModel& arm, Rng& rng);

}  // namespace tampkit::geometry
