#pragma once

#include <memory>

#include "tampkit/search/goal.hpp"
#include "tampkit/search/tree.hpp"

namespace tampkit::search {

using geometry::Attachment;
using geometry::Rng;
using geometry::Scene;

struct SearchParams {
  int k_ss = 2;                 // SS-layer repetitions per sampled sequence
  int k_goal = 10;              // goal-candidate attempts
  double epsilon = 0.5;         // exploration probability in the tree walk
  double terminate_prob = 0.2;  // per-node termination probability

  enum class RewardMode { Full, NoReward };
  enum class RejectionMode { Full, NoRejection };
  RewardMode reward_mode = RewardMode::Full;
  RejectionMode rejection_mode = RejectionMode::Full;

  uint64_t seed = 0;

  // Budget in virtual seconds: virtual cost accrues as collision checks
  // plus weighted symbolic expansions, divided by checks_per_second. Fully
  // deterministic, approximating wall time on the reference machine.
  double budget_seconds = 60.0;
  double checks_per_second = 350000.0;
  double expansion_check_weight = 1.0;

  // When the whole sequence extends but the final goal connection fails,
  // push |pi| / (|pi| + 1) instead of 1.0.
  bool partial_reward_on_unconnected = false;

  int transition_attempts = 20;   // IK seeds per mode transition
  int attachment_attempts = 50;   // draws per placement sample
  int goal_config_attempts = 20;  // q_G draws in goal-candidate making

  symbolic::PlanOptions plan_options{};
  motion::MPConfig mp{};
};

struct SolveStats {
  long long iterations = 0;
  long long mp_calls = 0;
  long long collision_checks = 0;
  long long goal_candidates_drawn = 0;
  long long goal_candidates_rejected = 0;
  long long task_plan_calls = 0;
  long long task_plan_expansions = 0;
  long long rt_nodes = 0;
  long long art_nodes = 0;
  double symbolic_seconds = 0.0;  // wall time inside the symbolic planner
  double wall_seconds = 0.0;

  double virtual_cost(const SearchParams& p) const {
    return (collision_checks + p.expansion_check_weight * task_plan_expansions) /
           p.checks_per_second;
  }
};

struct SolutionStep {
  RTEdge edge;
  HybridState to;
};

struct Solution {
  HybridState start;
  std::vector<SolutionStep> steps;
};

enum class SolveStatus { Solved, Timeout, InfeasibleAbstractGoal };

struct SolveOutcome {
  SolveStatus status = SolveStatus::Timeout;
  std::optional<Solution> solution;
  SolveStats stats;
};

// The three-layer planner: MCTS-guided action-sequence sampling on the
// abstract reachability tree, batch subgoal sampling with goal-candidate
// rejection, and RRT-Connect for single-mode motions. One instance per
// solve; shares only the immutable ground problem and scene.
class Planner {
 public:
  Planner(const symbolic::GroundProblem& gp, const Scene& scene, HybridState x_initial,
          GoalSpec goal, SearchParams params);

  SolveOutcome solve();

  // The individual layers, exposed with the same contracts they have
  // inside solve() so they can be driven directly.
  struct SampledSequence {
    std::vector<symbolic::GroundActionId> pi;
    std::vector<int> node_seq;  // |pi| + 1 ART nodes, starting at the root
  };
  struct WalkResult {
    int n_last;
    std::vector<symbolic::GroundActionId> pi_rand;
    std::vector<int> node_seq;
  };

  struct SsResult {
    std::vector<double> rewards;
    // How far the batch extension got: nodes node_seq[0..engaged_nodes-1]
    // were geometrically instantiated or had their step attempted. Reward
    // updates stop at this frontier so unreached suffix states keep their
    // unvisited status.
    size_t engaged_nodes = 1;
  };

  WalkResult randomized_tree_search();
  std::optional<SampledSequence> sample_action_seq();
  SsResult ss_layer(const SampledSequence& seq);
  // nullopt = sampler exhaustion (a rejected candidate).
  std::optional<std::vector<std::optional<Attachment>>> sample_batch_attachments(
      const std::vector<symbolic::GroundActionId>& pi);
  std::optional<HybridState> make_goal_candidate(
      const std::vector<std::optional<Attachment>>& alpha,
      const std::vector<symbolic::GroundActionId>& pi, bool check_collision);
  std::optional<geometry::Config> sample_transition(const Mode& sigma, const Mode& sigma_next);
  Solution extract_solution() const;

  const ReachabilityTree& rt() const { return rt_; }
  const AbstractReachabilityTree& art() const { return art_; }
  AbstractReachabilityTree& art() { return art_; }
  const SolveStats& stats() const { return stats_; }
  const SearchParams& params() const { return params_; }
  Rng& rng() { return rng_; }

  // Extends the ART from `node` along `plan`, reusing existing children.
  // Returns the node sequence including `node` itself.
  std::vector<int> extend_tree(int node, const std::vector<symbolic::GroundActionId>& plan);

 private:
  bool budget_exhausted() const;
  std::vector<symbolic::GroundActionId> applicable_walk_actions(int art_node);
  std::optional<Attachment> sample_attachment(const symbolic::GroundAction& action);
  std::optional<Attachment> sample_grasp(const geometry::Body& body,
                                         const std::optional<geometry::Pose2>& world_pose_at_pick,
                                         const Mode* mode_at_pick);
  std::optional<geometry::Pose2> movable_pose_without_arm(const Mode& mode,
                                                          const std::string& id) const;

  const symbolic::GroundProblem* gp_;
  const Scene* scene_;
  HybridState x_initial_;
  GoalSpec goal_;
  SearchParams params_;
  Rng rng_;
  ReachabilityTree rt_;
  AbstractReachabilityTree art_;
  SolveStats stats_;
};

// Independent of solve(): true iff the goal's atoms hold in s.
bool goal_atoms_satisfied(const symbolic::AbstractState& s, const GoalSpec& goal);

// Reward for a batch extension failing at 1-based step i of a length-n
// action sequence: the realized fraction (i - 1) / n.
constexpr double failed_step_reward(int step_1based, int sequence_length) {
  return static_cast<double>(step_1based - 1) / static_cast<double>(sequence_length);
}

}  // namespace tampkit::search
