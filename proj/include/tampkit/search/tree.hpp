#pragma once

#include <limits>
#include <optional>

#include "tampkit/motion/rrt_connect.hpp"
#include "tampkit/symbolic/planner.hpp"

namespace tampkit::search {

using geometry::Config;
using geometry::Mode;

// Hybrid state x = (s, sigma, q). The abstract attachments inside `s` are a
// redundant copy of sigma's (movable, parent) pairs; consistency is
// enforced on every tree insertion.
struct HybridState {
  symbolic::AbstractState s;
  Mode sigma;
  Config q{0.0, 0.0, 0.0};
};

// Projects the `attached` atoms of an abstract state to (movable, parent)
// name pairs.
std::map<std::string, std::string> abstract_attachment_pairs(const symbolic::GroundProblem& gp,
                                                             const symbolic::AbstractState& s);

bool hybrid_state_consistent(const symbolic::GroundProblem& gp, const HybridState& x);

// One edge per transition. A Mode edge bundles the in-mode approach
// trajectory with the mode switch happening at the trajectory's end; a
// Config edge moves the robot only; a NonGeometric edge changes only the
// non-geometric abstract state.
enum class EdgeKind { Root, Config, Mode, NonGeometric };

struct RTEdge {
  EdgeKind kind = EdgeKind::Root;
  std::optional<symbolic::GroundActionId> action;
  std::optional<geometry::Attachment> attachment;
  std::optional<motion::Trajectory> trajectory;
};

struct RTNode {
  HybridState x;
  int parent = -1;
  RTEdge edge;
};

class ReachabilityTree {
 public:
  explicit ReachabilityTree(const symbolic::GroundProblem& gp) : gp_(&gp) {}

  int add_root(HybridState x);
  // Validates hybrid-state consistency and the edge's transition type;
  // throws std::logic_error on violations.
  int add_node(HybridState x, int parent, RTEdge edge);

  const RTNode& node(int i) const { return nodes_[i]; }
  size_t size() const { return nodes_.size(); }
  std::optional<int> solution() const { return solution_; }
  void set_solution(int node) { solution_ = node; }

 private:
  const symbolic::GroundProblem* gp_;
  std::vector<RTNode> nodes_;
  std::optional<int> solution_;
};

// Abstract reachability tree node: MCTS statistics plus the pointers into
// the RT used for parent sampling.
struct ARTNode {
  symbolic::AbstractState s;
  int parent = -1;
  std::optional<symbolic::GroundActionId> edge_action;
  int n_visit = 0;
  double r_total = 0.0;
  double terminate_prob = 0.2;
  std::vector<int> rt_nodes;  // V_s
  std::vector<int> children;
  bool dead = false;

  double value() const {
    if (n_visit == 0) return 0.5;
    return r_total / n_visit;
  }
};

class AbstractReachabilityTree {
 public:
  int init_root(symbolic::AbstractState s, double terminate_prob);
  int add_child(int parent, symbolic::GroundActionId action, symbolic::AbstractState s);
  std::optional<int> child_for_action(int parent, symbolic::GroundActionId action) const;

  ARTNode& node(int i) { return nodes_[i]; }
  const ARTNode& node(int i) const { return nodes_[i]; }
  int root() const { return 0; }
  size_t size() const { return nodes_.size(); }

 private:
  std::vector<ARTNode> nodes_;
};

// Registers an RT node in an ART node's V_s set, enforcing that the hybrid
// state's abstract state matches the ART node's.
void register_rt_node(AbstractReachabilityTree& art, int art_node, const ReachabilityTree& rt,
                      int rt_node);

// n_visit += 1 on every node of the sequence; r_total accumulates unless
// the no-reward ablation is active.
void update_tree(AbstractReachabilityTree& art, const std::vector<int>& node_seq,
                 double avg_reward, bool no_reward_mode);

// Visit bookkeeping for iterations that produced no rewards (every goal
// candidate rejected): the sequence was tried, so its nodes must not keep
// the forced-exploration value of never-visited children.
void record_visit(AbstractReachabilityTree& art, const std::vector<int>& node_seq);

}  // namespace tampkit::search
