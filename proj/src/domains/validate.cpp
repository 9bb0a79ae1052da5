#include "tampkit/domains/validate.hpp"

#include <unordered_map>

namespace tampkit::domains {

using geometry::Config;
using geometry::Mode;
using geometry::Pose2;
using search::EdgeKind;

namespace {

bool config_eq(const Config& a, const Config& b) { return geometry::exactly_equal(a, b); }

struct Replay {
  symbolic::AbstractState s;
  Mode sigma;
  Config q;
};

std::string check_trajectory(const BenchmarkInstance& inst, const Mode& mode,
                             const std::vector<Config>& wps, const Config& from,
                             const motion::MPConfig& mp) {
  if (wps.empty()) return "trajectory has no waypoints";
  if (!config_eq(wps.front(), from)) return "trajectory does not start at the previous state";
  motion::Trajectory traj{wps, mode};
  std::string why;
  if (!motion::trajectory_valid(traj, inst.scene, mp, mp.check_resolution / 2.0, &why))
    return why;
  return "";
}

}  // namespace

Verdict validate_solution(const BenchmarkInstance& instance,
                          const search::SolutionFile& solution, const motion::MPConfig& mp) {
  const auto& gp = *instance.ground;
  const auto fail = [](std::string msg) { return Verdict{false, std::move(msg)}; };

  std::unordered_map<std::string, symbolic::GroundActionId> by_display;
  for (symbolic::GroundActionId a = 0; a < gp.actions().size(); ++a)
    by_display[gp.action(a).display] = a;

  Replay cur{gp.initial_state(), instance.initial_mode, instance.q0};
  if (!search::hybrid_state_consistent(gp, {cur.s, cur.sigma, cur.q}))
    return fail("initial state inconsistent");
  if (!geometry::state_collision_free(instance.scene, cur.sigma, cur.q))
    return fail("initial state in collision");

  int step_no = 0;
  for (const auto& rec : solution.records) {
    const std::string where = "step " + std::to_string(step_no++);
    switch (rec.kind) {
      case EdgeKind::Config: {
        if (!rec.action.empty() || rec.attachment)
          return fail(where + ": configuration transition carries an action");
        const std::string err = check_trajectory(instance, cur.sigma, rec.waypoints, cur.q, mp);
        if (!err.empty()) return fail(where + ": " + err);
        cur.q = rec.waypoints.back();
        break;
      }
      case EdgeKind::Mode: {
        auto it = by_display.find(rec.action);
        if (it == by_display.end()) return fail(where + ": unknown action " + rec.action);
        const auto& ga = gp.action(it->second);
        if (!ga.geometric) return fail(where + ": mode transition with non-geometric action");
        if (!symbolic::applicable(gp, cur.s, it->second))
          return fail(where + ": action not applicable: " + rec.action);
        if (!rec.attachment) return fail(where + ": mode transition without attachment");
        if (gp.object_name(ga.target_movable) != rec.attachment->movable ||
            gp.object_name(ga.new_parent) != rec.attachment->parent)
          return fail(where + ": attachment does not match the action");
        const std::string err = check_trajectory(instance, cur.sigma, rec.waypoints, cur.q, mp);
        if (!err.empty()) return fail(where + ": " + err);
        const Config q_new = rec.waypoints.back();
        const Mode sigma_new = geometry::make_next_mode(cur.sigma, *rec.attachment);
        if (!geometry::state_collision_free(instance.scene, sigma_new, q_new))
          return fail(where + ": switch configuration collides in the new mode");
        cur.s = symbolic::apply(gp, cur.s, it->second);
        cur.sigma = sigma_new;
        cur.q = q_new;
        if (!search::hybrid_state_consistent(gp, {cur.s, cur.sigma, cur.q}))
          return fail(where + ": abstract attachments diverge from the mode");
        break;
      }
      case EdgeKind::NonGeometric: {
        auto it = by_display.find(rec.action);
        if (it == by_display.end()) return fail(where + ": unknown action " + rec.action);
        if (gp.action(it->second).geometric)
          return fail(where + ": non-geometric transition with geometric action");
        if (!rec.waypoints.empty() || rec.attachment)
          return fail(where + ": non-geometric transition carries geometry");
        if (!symbolic::applicable(gp, cur.s, it->second))
          return fail(where + ": action not applicable: " + rec.action);
        cur.s = symbolic::apply(gp, cur.s, it->second);
        break;
      }
      default:
        return fail(where + ": malformed record");
    }
  }

  if (!cur.s.contains_all(instance.goal.atoms)) return fail("goal atoms not satisfied");
  for (const auto& [atom, att] : instance.goal.attachments) {
    (void)atom;
    const auto it = cur.sigma.attachments.find(att.movable);
    if (it == cur.sigma.attachments.end() || it->second.parent != att.parent)
      return fail("goal attachment parent mismatch for " + att.movable);
    if (!geometry::approx_equal(it->second.transform, att.transform, 1e-6))
      return fail("goal attachment transform mismatch for " + att.movable);
  }
  if (instance.goal.config && !config_eq(*instance.goal.config, cur.q))
    return fail("goal configuration mismatch");
  return Verdict{true, ""};
}

}  // namespace tampkit::domains
