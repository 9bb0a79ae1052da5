#pragma once

#include "tampkit/domains/benchmarks.hpp"

namespace tampkit::domains {

// Problem bundle on disk: domain.pddl, problem.pddl, scene.json, goal.json
// and meta.json under one directory.
void save_bundle(const BenchmarkInstance& instance, const std::string& dir);
BenchmarkInstance load_bundle(const std::string& dir);

}  // namespace tampkit::domains
