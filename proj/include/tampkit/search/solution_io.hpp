#pragma once

#include <string>

#include "tampkit/search/solver.hpp"

namespace tampkit::search {

// File form of a solution: ordered records {action?, attachment?,
// trajectory?}, replayable from an instance's initial state. Mode edges
// carry all three, non-geometric edges only the action, configuration
// edges only the trajectory.
struct SolutionRecord {
  EdgeKind kind = EdgeKind::Config;
  std::string action;  // display form "(name arg1 arg2)"
  std::optional<geometry::Attachment> attachment;
  std::vector<geometry::Config> waypoints;
};

struct SolutionFile {
  std::vector<SolutionRecord> records;
};

SolutionFile to_solution_file(const symbolic::GroundProblem& gp, const Solution& solution);

std::string to_json_string(const SolutionFile& file);
SolutionFile solution_from_json_string(const std::string& text);

void save_solution(const SolutionFile& file, const std::string& path);
SolutionFile load_solution(const std::string& path);

}  // namespace tampkit::search
