#include "tampkit/motion/rrt_connect.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tampkit::motion {

using geometry::config_delta;
using geometry::config_distance;
using geometry::ModeChecker;
using geometry::normalize_config;

namespace {

// Interpolates toward `to` by fraction t of the wrapped difference.
Config lerp(const geometry::ArmModel& arm, const Config& from, const Config& to, double t) {
  return normalize_config(arm, from + t * config_delta(arm, from, to));
}

bool segment_free(const ModeChecker& checker, const Config& qa, const Config& qb,
                  double resolution, long long* counter) {
  const auto& arm = checker.scene().arm;
  const double dist = config_distance(arm, qa, qb);
  const int steps = std::max(1, static_cast<int>(std::ceil(dist / resolution)));
  // Endpoints first, then a resolution-spaced sweep.
  if (!checker.config_free(qa, counter)) return false;
  if (!checker.config_free(qb, counter)) return false;
  for (int i = 1; i < steps; ++i) {
    if (!checker.config_free(lerp(arm, qa, qb, static_cast<double>(i) / steps), counter))
      return false;
  }
  return true;
}

struct Tree {
  std::vector<Config> configs;
  std::vector<int> parents;

  int add(const Config& q, int parent) {
    configs.push_back(q);
    parents.push_back(parent);
    return static_cast<int>(configs.size()) - 1;
  }
  int nearest(const geometry::ArmModel& arm, const Config& q) const {
    int best = 0;
    double best_d = config_distance(arm, configs[0], q);
    for (size_t i = 1; i < configs.size(); ++i) {
      const double d = config_distance(arm, configs[i], q);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  }
};

enum class ExtendStatus { Trapped, Advanced, Reached };

ExtendStatus extend(Tree& tree, const ModeChecker& checker, const Config& target,
                    const MPConfig& cfg, double resolution, long long* counter, int& new_index) {
  const auto& arm = checker.scene().arm;
  const int near = tree.nearest(arm, target);
  const Config& q_near = tree.configs[near];
  const double dist = config_distance(arm, q_near, target);
  Config q_new;
  bool reached = false;
  if (dist <= cfg.step_size) {
    q_new = target;  // exact join, bitwise
    reached = true;
  } else {
    q_new = lerp(arm, q_near, target, cfg.step_size / dist);
  }
  if (!segment_free(checker, q_near, q_new, resolution, counter)) return ExtendStatus::Trapped;
  new_index = tree.add(q_new, near);
  return reached ? ExtendStatus::Reached : ExtendStatus::Advanced;
}

ExtendStatus connect(Tree& tree, const ModeChecker& checker, const Config& target,
                     const MPConfig& cfg, double resolution, long long* counter, int& new_index) {
  ExtendStatus status = ExtendStatus::Advanced;
  while (status == ExtendStatus::Advanced) {
    status = extend(tree, checker, target, cfg, resolution, counter, new_index);
  }
  return status;
}

std::vector<Config> branch_to_root(const Tree& tree, int idx) {
  std::vector<Config> path;
  while (idx >= 0) {
    path.push_back(tree.configs[idx]);
    idx = tree.parents[idx];
  }
  return path;
}

}  // namespace

bool edge_valid(const Config& qa, const Config& qb, const Mode& mode, const Scene& scene,
                double resolution, long long* counter) {
  const ModeChecker checker(scene, mode);
  return segment_free(checker, qa, qb, resolution, counter);
}

MPResult plan_motion(const Config& q_start, const Config& q_goal, const Mode& mode,
                     const Scene& scene, const MPConfig& cfg, Rng& rng,
                     long long* check_counter) {
  MPResult result;
  const ModeChecker checker(scene, mode);
  if (!checker.config_free(q_goal, check_counter)) {
    result.failure = MPFailure::GoalInCollision;
    return result;
  }
  // Internal validation resolution is half the configured one so every
  // returned trajectory also passes stricter re-checks.
  const double resolution = cfg.check_resolution / 2.0;

  if ((q_start - q_goal).isZero(0.0)) {
    result.trajectory = Trajectory{{q_start}, mode};
    return result;
  }
  if (config_distance(scene.arm, q_start, q_goal) <= cfg.step_size &&
      segment_free(checker, q_start, q_goal, resolution, check_counter)) {
    result.trajectory = Trajectory{{q_start, q_goal}, mode};
    return result;
  }

  Tree start_tree, goal_tree;
  start_tree.add(q_start, -1);
  goal_tree.add(q_goal, -1);
  Tree* ta = &start_tree;
  Tree* tb = &goal_tree;
  bool a_is_start = true;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    const Config q_rand = geometry::random_config(scene.arm, rng);
    int a_new = -1;
    if (extend(*ta, checker, q_rand, cfg, resolution, check_counter, a_new) !=
        ExtendStatus::Trapped) {
      int b_new = -1;
      if (connect(*tb, checker, ta->configs[a_new], cfg, resolution, check_counter, b_new) ==
          ExtendStatus::Reached) {
        // Join: b_new holds the same configuration as a_new.
        std::vector<Config> from_start =
            branch_to_root(a_is_start ? *ta : *tb, a_is_start ? a_new : b_new);
        std::reverse(from_start.begin(), from_start.end());
        std::vector<Config> to_goal = branch_to_root(a_is_start ? *tb : *ta,
                                                     a_is_start ? b_new : a_new);
        // Drop the duplicated junction configuration.
        to_goal.erase(to_goal.begin());
        Trajectory traj;
        traj.mode = mode;
        traj.waypoints = std::move(from_start);
        traj.waypoints.insert(traj.waypoints.end(), to_goal.begin(), to_goal.end());
        result.trajectory = std::move(traj);
        return result;
      }
    }
    std::swap(ta, tb);
    a_is_start = !a_is_start;
  }
  result.failure = MPFailure::IterationsExhausted;
  return result;
}

bool trajectory_valid(const Trajectory& traj, const Scene& scene, const MPConfig& cfg,
                      double resolution, std::string* why) {
  const auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (traj.waypoints.empty()) return fail("empty trajectory");
  const ModeChecker checker(scene, traj.mode);
  const double step_slack = cfg.step_size * (1.0 + 1e-9);
  for (size_t i = 0; i < traj.waypoints.size(); ++i) {
    if (i + 1 < traj.waypoints.size()) {
      const Config delta =
          config_delta(scene.arm, traj.waypoints[i], traj.waypoints[i + 1]);
      if (delta.lpNorm<Eigen::Infinity>() > step_slack)
        return fail("step size violation at waypoint " + std::to_string(i));
      if (!segment_free(checker, traj.waypoints[i], traj.waypoints[i + 1], resolution, nullptr))
        return fail("collision along segment " + std::to_string(i));
    } else if (!checker.config_free(traj.waypoints[i], nullptr)) {
      return fail("collision at waypoint " + std::to_string(i));
    }
  }
  return true;
}

}  // namespace tampkit::motion
