#pragma once

#include "tampkit/bench/harness.hpp"

namespace tampkit::bench {

// One CDF step function per group: solved-trial wall times in ascending
// order with cumulative success fractions, normalized by the group's trial
// count. The terminal value equals the group's success rate.
struct CdfGroup {
  std::string key;  // e.g. "kitchen/3/full"
  int trials = 0;
  std::vector<std::pair<double, double>> steps;  // (time, fraction)
  double success_rate = 0.0;
};

// `group_keys` is a comma list over {domain, m, variant}.
std::vector<CdfGroup> cdf(const std::vector<TrialRecord>& records,
                          const std::string& group_keys);

std::string cdf_to_json(const std::vector<CdfGroup>& groups);

struct VariantSummary {
  std::string domain;
  int m = 0;
  std::string variant;
  int trials = 0;
  int solved = 0;
  double success_rate = 0.0;
  double median_solve_time = 0.0;  // over solved trials
  double mean_mp_calls = 0.0;
  double mean_collision_checks = 0.0;
  double mean_goal_candidates_drawn = 0.0;
  double mean_goal_candidates_rejected = 0.0;
  double mean_art_nodes = 0.0;
  double mean_rt_nodes = 0.0;
  double mean_symbolic_wall_s = 0.0;
  double mean_wall_s = 0.0;
};

std::vector<VariantSummary> compare(const std::vector<TrialRecord>& records);

std::string compare_to_json(const std::vector<VariantSummary>& summaries);

}  // namespace tampkit::bench
