#pragma once

#include <stdexcept>

#include "tampkit/symbolic/ground.hpp"

namespace tampkit::symbolic {

struct NotApplicableError : std::runtime_error {
  explicit NotApplicableError(const std::string& action)
      : std::runtime_error("action not applicable: " + action) {}
};

// STRIPS applicability: positive preconditions present, negatives absent.
bool applicable(const GroundProblem& gp, const AbstractState& s, GroundActionId a);

// s' = (s \ del) + add. Throws NotApplicableError when !applicable.
AbstractState apply(const GroundProblem& gp, const AbstractState& s, GroundActionId a);

bool goal_satisfied(const AbstractState& s, const std::vector<AtomId>& goal_atoms);

enum class SearchMode { Greedy, BreadthFirst };
enum class PlanStatus { Found, ProvenUnreachable, BudgetExhausted };

struct PlanOptions {
  SearchMode mode = SearchMode::Greedy;
  long long max_expansions = 200000;
  // Greedy ties are broken by insertion order by default; with
  // randomize_ties the order is shuffled per call under tie_break_seed,
  // which diversifies satisficing plans without affecting completeness.
  bool randomize_ties = false;
  uint64_t tie_break_seed = 0;
};

struct PlanResult {
  PlanStatus status = PlanStatus::ProvenUnreachable;
  std::vector<GroundActionId> plan;
  long long expansions = 0;

  bool found() const { return status == PlanStatus::Found; }
};

// Greedy best-first search under the additive-relaxation heuristic
// (ties broken by insertion order), or exact breadth-first search for
// oracle use. Returned plans are applicable stepwise from s0 and end in
// a state containing every goal atom.
PlanResult task_plan(const GroundProblem& gp, const AbstractState& s0,
                     const std::vector<AtomId>& goal_atoms, const PlanOptions& options = {});

// One ground action per line, `(name arg1 arg2)`.
std::string plan_to_text(const GroundProblem& gp, const std::vector<GroundActionId>& plan);

}  // namespace tampkit::symbolic
