#include "tampkit/search/tree.hpp"

#include <stdexcept>

namespace tampkit::search {

using geometry::exactly_equal;

std::map<std::string, std::string> abstract_attachment_pairs(const symbolic::GroundProblem& gp,
                                                             const symbolic::AbstractState& s) {
  std::map<std::string, std::string> pairs;
  const auto attached = gp.attached_predicate();
  if (!attached) return pairs;
  for (symbolic::AtomId id : s.atoms()) {
    const auto& atom = gp.atom(id);
    if (atom.predicate != *attached || atom.args.size() != 2) continue;
    const std::string& m = gp.object_name(atom.args[0]);
    if (pairs.count(m))
      throw std::logic_error("abstract state has two attachments for " + m);
    pairs[m] = gp.object_name(atom.args[1]);
  }
  return pairs;
}

bool hybrid_state_consistent(const symbolic::GroundProblem& gp, const HybridState& x) {
  const auto pairs = abstract_attachment_pairs(gp, x.s);
  if (pairs.size() != x.sigma.attachments.size()) return false;
  for (const auto& [m, att] : x.sigma.attachments) {
    auto it = pairs.find(m);
    if (it == pairs.end() || it->second != att.parent) return false;
  }
  return true;
}

int ReachabilityTree::add_root(HybridState x) {
  if (!nodes_.empty()) throw std::logic_error("reachability tree already rooted");
  if (!hybrid_state_consistent(*gp_, x))
    throw std::logic_error("root hybrid state is inconsistent");
  nodes_.push_back({std::move(x), -1, RTEdge{}});
  return 0;
}

namespace {

void validate_edge(const symbolic::GroundProblem& gp, const RTNode& parent, const HybridState& x,
                   const RTEdge& edge) {
  const auto fail = [](const std::string& msg) { throw std::logic_error("RT edge: " + msg); };
  switch (edge.kind) {
    case EdgeKind::Root:
      fail("non-root node with root edge");
      break;
    case EdgeKind::Config: {
      if (!edge.trajectory || edge.action || edge.attachment)
        fail("config edge carries exactly a trajectory");
      if (!(parent.x.s == x.s)) fail("config edge changes abstract state");
      if (!exactly_equal(parent.x.sigma, x.sigma)) fail("config edge changes mode");
      const auto& wp = edge.trajectory->waypoints;
      if (wp.empty() || !geometry::exactly_equal(wp.front(), parent.x.q) ||
          !geometry::exactly_equal(wp.back(), x.q))
        fail("config edge trajectory endpoints mismatch");
      break;
    }
    case EdgeKind::Mode: {
      if (!edge.trajectory || !edge.action || !edge.attachment)
        fail("mode edge needs action, attachment, trajectory");
      const auto& ga = gp.action(*edge.action);
      if (!ga.geometric) fail("mode edge with non-geometric action");
      if (!(symbolic::apply(gp, parent.x.s, *edge.action) == x.s))
        fail("mode edge abstract state mismatch");
      if (!exactly_equal(geometry::make_next_mode(parent.x.sigma, *edge.attachment), x.sigma))
        fail("mode edge mode mismatch");
      const auto& wp = edge.trajectory->waypoints;
      if (wp.empty() || !geometry::exactly_equal(wp.front(), parent.x.q) ||
          !geometry::exactly_equal(wp.back(), x.q))
        fail("mode edge trajectory endpoints mismatch");
      break;
    }
    case EdgeKind::NonGeometric: {
      if (!edge.action || edge.trajectory || edge.attachment)
        fail("non-geometric edge carries exactly an action");
      const auto& ga = gp.action(*edge.action);
      if (ga.geometric) fail("non-geometric edge with geometric action");
      if (!(symbolic::apply(gp, parent.x.s, *edge.action) == x.s))
        fail("non-geometric edge abstract state mismatch");
      if (!geometry::exactly_equal(x.q, parent.x.q)) fail("non-geometric edge changes configuration");
      if (!exactly_equal(parent.x.sigma, x.sigma)) fail("non-geometric edge changes mode");
      break;
    }
  }
}

}  // namespace

int ReachabilityTree::add_node(HybridState x, int parent, RTEdge edge) {
  if (parent < 0 || parent >= static_cast<int>(nodes_.size()))
    throw std::logic_error("RT parent out of range");
  if (!hybrid_state_consistent(*gp_, x)) throw std::logic_error("inconsistent hybrid state");
  validate_edge(*gp_, nodes_[parent], x, edge);
  nodes_.push_back({std::move(x), parent, std::move(edge)});
  return static_cast<int>(nodes_.size()) - 1;
}

int AbstractReachabilityTree::init_root(symbolic::AbstractState s, double terminate_prob) {
  if (!nodes_.empty()) throw std::logic_error("ART already rooted");
  ARTNode root;
  root.s = std::move(s);
  root.terminate_prob = terminate_prob;
  nodes_.push_back(std::move(root));
  return 0;
}

int AbstractReachabilityTree::add_child(int parent, symbolic::GroundActionId action,
                                        symbolic::AbstractState s) {
  ARTNode child;
  child.s = std::move(s);
  child.parent = parent;
  child.edge_action = action;
  child.terminate_prob = nodes_[parent].terminate_prob;
  nodes_.push_back(std::move(child));
  const int idx = static_cast<int>(nodes_.size()) - 1;
  nodes_[parent].children.push_back(idx);
  return idx;
}

std::optional<int> AbstractReachabilityTree::child_for_action(
    int parent, symbolic::GroundActionId action) const {
  for (int c : nodes_[parent].children) {
    if (nodes_[c].edge_action && *nodes_[c].edge_action == action) return c;
  }
  return std::nullopt;
}

void register_rt_node(AbstractReachabilityTree& art, int art_node, const ReachabilityTree& rt,
                      int rt_node) {
  if (!(rt.node(rt_node).x.s == art.node(art_node).s))
    throw std::logic_error("V_s registration: abstract state mismatch");
  art.node(art_node).rt_nodes.push_back(rt_node);
}

void record_visit(AbstractReachabilityTree& art, const std::vector<int>& node_seq) {
  for (int n : node_seq) art.node(n).n_visit += 1;
}

void update_tree(AbstractReachabilityTree& art, const std::vector<int>& node_seq,
                 double avg_reward, bool no_reward_mode) {
  if (avg_reward < 0.0 || avg_reward > 1.0)
    throw std::invalid_argument("reward outside [0, 1]");
  for (int n : node_seq) {
    art.node(n).n_visit += 1;
    if (!no_reward_mode) art.node(n).r_total += avg_reward;
  }
}

}  // namespace tampkit::search
