#pragma once

#include <optional>
#include <vector>

#include "tampkit/geometry/scene.hpp"

namespace tampkit::motion {

using geometry::Config;
using geometry::Mode;
using geometry::Rng;
using geometry::Scene;

// Single-mode trajectory: consecutive waypoints within step size, every
// waypoint (and interpolation at the check resolution) collision-free in
// `mode`.
struct Trajectory {
  std::vector<Config> waypoints;
  Mode mode;
};

struct MPConfig {
  double step_size = 0.15;       // max distance between consecutive waypoints
  double check_resolution = 0.02;  // interpolation spacing for collision checks
  int max_iterations = 3000;
  // Trees join exactly at shared configurations; there is no goal
  // tolerance ball.
};

enum class MPFailure { GoalInCollision, IterationsExhausted };

struct MPResult {
  std::optional<Trajectory> trajectory;
  MPFailure failure = MPFailure::IterationsExhausted;

  bool success() const { return trajectory.has_value(); }
};

// True iff every interpolation of [qa, qb] at `resolution` spacing (plus
// both endpoints) is collision-free in the mode.
bool edge_valid(const Config& qa, const Config& qb, const Mode& mode, const Scene& scene,
                double resolution, long long* counter = nullptr);

// Bidirectional RRT-Connect between two configurations inside one mode's
// collision-free space. q_start is assumed collision-free (it comes from an
// existing tree node); the goal is checked here and failure is immediate
// when it collides. Edges are validated internally at half the configured
// check resolution so the stricter downstream validator can never disagree.
// Deterministic for a fixed rng state.
MPResult plan_motion(const Config& q_start, const Config& q_goal, const Mode& mode,
                     const Scene& scene, const MPConfig& cfg, Rng& rng,
                     long long* check_counter = nullptr);

// Re-checks a finished trajectory at the given resolution: endpoint bounds,
// step sizes, and collision freedom. Used by tests and the solution
// validator.
bool trajectory_valid(const Trajectory& traj, const Scene& scene, const MPConfig& cfg,
                      double resolution, std::string* why = nullptr);

}  // namespace tampkit::motion
