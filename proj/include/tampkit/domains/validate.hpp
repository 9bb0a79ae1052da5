#pragma once

#include "tampkit/domains/benchmarks.hpp"
#include "tampkit/search/solution_io.hpp"

namespace tampkit::domains {

struct Verdict {
  bool valid = false;
  std::string violation;  // first violation, empty when valid
};

// Independent end-to-end replay of a solution against its instance:
// abstract transitions via the symbolic model, poses via the kinematic
// chain, trajectories re-checked at half the planner's check resolution,
// transition typing per edge, and goal atoms plus goal attachments
// (transforms to 1e-6) at the end.
Verdict validate_solution(const BenchmarkInstance& instance,
                          const search::SolutionFile& solution,
                          const motion::MPConfig& mp = {});

}  // namespace tampkit::domains
