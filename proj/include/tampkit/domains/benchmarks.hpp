#pragma once

#include <memory>
#include <string>

#include "tampkit/search/solver.hpp"

namespace tampkit::domains {

// One benchmark problem: abstract model, planar scene, initial hybrid
// state, and goal. Generation is a pure function of (family, m, seed) and
// every generated instance is abstractly solvable (checked at build time).
struct BenchmarkInstance {
  std::string name;
  std::string family;  // kitchen | nonmonotonic | blocktower
  int m = 0;
  uint64_t seed = 0;

  std::string domain_text;
  std::string problem_text;
  symbolic::DomainModel domain;
  symbolic::ProblemModel problem;
  std::shared_ptr<const symbolic::GroundProblem> ground;

  geometry::Scene scene;
  geometry::Mode initial_mode;
  geometry::Config q0{0.0, 0.0, 0.0};
  search::GoalSpec goal;

  search::HybridState initial_state() const {
    return {ground->initial_state(), initial_mode, q0};
  }
};

// m food blocks start on the dish and must all be cooked; sink and stove
// regions hold exactly m blocks with a 10% free margin, so end-of-plan
// placements are dense.
BenchmarkInstance build_kitchen(int m, uint64_t seed);

// m colored blocks sit in wall pockets with a taller blocker resting on
// each; the abstract model knows nothing about the blocking, so shortest
// plans are geometrically infeasible until the blockers move.
BenchmarkInstance build_nonmonotonic(int m, uint64_t seed);

// m blocks in seeded random stacks on the side plates; the goal is a
// fixed-order tower on the (single-column) center plate, expressed as an
// attached(b_i, b_{i+1}) chain of goal attachments.
BenchmarkInstance build_blocktower(int m, uint64_t seed);

BenchmarkInstance build_instance(const std::string& family, int m, uint64_t seed);

// Generation-time self-checks (exercised by tests and the gen CLI).
// With m blocks already packed on the sink, every extra placement draw
// must collide.
bool verify_kitchen_tightness(const BenchmarkInstance& instance, uint64_t seed);
// The blocker-ignoring plan never reaches the goal geometrically over
// `attempts` seeded subgoal-sampling runs.
bool verify_nonmonotonic_blocking(const BenchmarkInstance& instance, int attempts = 50);

}  // namespace tampkit::domains
