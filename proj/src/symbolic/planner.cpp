#include "tampkit/symbolic/planner.hpp"

#include <algorithm>
#include <random>
#include <deque>
#include <limits>
#include <queue>
#include <unordered_map>

namespace tampkit::symbolic {

bool applicable(const GroundProblem& gp, const AbstractState& s, GroundActionId a) {
  const GroundAction& ga = gp.action(a);
  return s.contains_all(ga.pre_pos) && s.contains_none(ga.pre_neg);
}

AbstractState apply(const GroundProblem& gp, const AbstractState& s, GroundActionId a) {
  if (!applicable(gp, s, a)) throw NotApplicableError(gp.action(a).display);
  const GroundAction& ga = gp.action(a);
  std::vector<AtomId> result;
  result.reserve(s.size() + ga.add.size());
  std::set_difference(s.atoms().begin(), s.atoms().end(), ga.del.begin(), ga.del.end(),
                      std::back_inserter(result));
  result.insert(result.end(), ga.add.begin(), ga.add.end());
  return AbstractState::from_atoms(std::move(result));
}

bool goal_satisfied(const AbstractState& s, const std::vector<AtomId>& goal_atoms) {
  return s.contains_all(goal_atoms);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Additive relaxation: atom costs via fixpoint over the delete-relaxed
// model (negative preconditions ignored). Returns infinity when the goal
// is relaxed-unreachable, which proves real unreachability.
double h_add(const GroundProblem& gp, const AbstractState& s,
             const std::vector<AtomId>& goal_atoms, std::vector<double>& cost) {
  cost.assign(gp.atom_count(), kInf);
  for (AtomId a : s.atoms()) cost[a] = 0.0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const GroundAction& ga : gp.actions()) {
      double pre = 0.0;
      for (AtomId a : ga.pre_pos) {
        pre += cost[a];
        if (pre == kInf) break;
      }
      if (pre == kInf) continue;
      const double c = pre + 1.0;
      for (AtomId a : ga.add) {
        if (c < cost[a]) {
          cost[a] = c;
          changed = true;
        }
      }
    }
  }
  double h = 0.0;
  for (AtomId g : goal_atoms) {
    if (cost[g] == kInf) return kInf;
    h += cost[g];
  }
  return h;
}

struct Node {
  AbstractState state;
  int parent = -1;
  GroundActionId action = 0;
};

std::vector<GroundActionId> backtrack(const std::vector<Node>& nodes, int idx) {
  std::vector<GroundActionId> plan;
  while (nodes[idx].parent >= 0) {
    plan.push_back(nodes[idx].action);
    idx = nodes[idx].parent;
  }
  std::reverse(plan.begin(), plan.end());
  return plan;
}

}  // namespace

PlanResult task_plan(const GroundProblem& gp, const AbstractState& s0,
                     const std::vector<AtomId>& goal_atoms, const PlanOptions& options) {
  PlanResult result;
  if (goal_satisfied(s0, goal_atoms)) {
    result.status = PlanStatus::Found;
    return result;
  }

  std::vector<Node> nodes;
  nodes.push_back({s0, -1, 0});
  std::unordered_map<AbstractState, int, AbstractStateHash> seen;
  seen.emplace(s0, 0);

  std::vector<double> cost_scratch;

  if (options.mode == SearchMode::BreadthFirst) {
    std::deque<int> open{0};
    while (!open.empty()) {
      if (result.expansions++ >= options.max_expansions) {
        result.status = PlanStatus::BudgetExhausted;
        return result;
      }
      const int cur = open.front();
      open.pop_front();
      for (GroundActionId a = 0; a < gp.actions().size(); ++a) {
        if (!applicable(gp, nodes[cur].state, a)) continue;
        AbstractState next = apply(gp, nodes[cur].state, a);
        if (seen.count(next)) continue;
        const int idx = static_cast<int>(nodes.size());
        nodes.push_back({std::move(next), cur, a});
        seen.emplace(nodes.back().state, idx);
        if (goal_satisfied(nodes[idx].state, goal_atoms)) {
          result.status = PlanStatus::Found;
          result.plan = backtrack(nodes, idx);
          return result;
        }
        open.push_back(idx);
      }
    }
    result.status = PlanStatus::ProvenUnreachable;
    return result;
  }

  // Greedy best-first on h_add; ties resolved by insertion order, or by a
  // seeded shuffle when randomize_ties is set.
  std::mt19937_64 tie_rng(options.tie_break_seed);
  using Entry = std::pair<double, long long>;  // (h, tie key)
  const auto cmp = [](const std::pair<Entry, int>& a, const std::pair<Entry, int>& b) {
    return a.first > b.first;
  };
  std::priority_queue<std::pair<Entry, int>, std::vector<std::pair<Entry, int>>, decltype(cmp)>
      open(cmp);
  long long counter = 0;
  const auto tie_key = [&]() {
    return options.randomize_ties ? static_cast<long long>(tie_rng() >> 1) : counter++;
  };
  {
    const double h0 = h_add(gp, s0, goal_atoms, cost_scratch);
    if (h0 == kInf) {
      result.status = PlanStatus::ProvenUnreachable;
      return result;
    }
    open.push({{h0, tie_key()}, 0});
  }
  while (!open.empty()) {
    if (result.expansions++ >= options.max_expansions) {
      result.status = PlanStatus::BudgetExhausted;
      return result;
    }
    const int cur = open.top().second;
    open.pop();
    for (GroundActionId a = 0; a < gp.actions().size(); ++a) {
      if (!applicable(gp, nodes[cur].state, a)) continue;
      AbstractState next = apply(gp, nodes[cur].state, a);
      if (seen.count(next)) continue;
      const int idx = static_cast<int>(nodes.size());
      nodes.push_back({std::move(next), cur, a});
      seen.emplace(nodes.back().state, idx);
      if (goal_satisfied(nodes[idx].state, goal_atoms)) {
        result.status = PlanStatus::Found;
        result.plan = backtrack(nodes, idx);
        return result;
      }
      const double h = h_add(gp, nodes[idx].state, goal_atoms, cost_scratch);
      if (h == kInf) continue;  // relaxed-unreachable states cannot reach the goal
      open.push({{h, tie_key()}, idx});
    }
  }
  result.status = PlanStatus::ProvenUnreachable;
  return result;
}

std::string plan_to_text(const GroundProblem& gp, const std::vector<GroundActionId>& plan) {
  std::string out;
  for (GroundActionId a : plan) {
    out += gp.action(a).display;
    out += "\n";
  }
  return out;
}

}  // namespace tampkit::symbolic
