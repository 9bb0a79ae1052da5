#pragma once

#include <string>
#include <vector>

#include "tampkit/domains/benchmarks.hpp"

namespace tampkit::bench {

struct TrialRecord {
  std::string domain;
  int m = 0;
  std::string variant;  // full | no-reward | no-rejection
  int trial = 0;
  uint64_t instance_seed = 0;
  uint64_t solver_seed = 0;
  std::string outcome;  // solved | timeout | infeasible
  bool validated = false;

  // Wall-time fields; excluded from determinism comparisons.
  double wall_s = 0.0;
  double symbolic_wall_s = 0.0;

  double virtual_s = 0.0;
  long long iterations = 0;
  long long mp_calls = 0;
  long long collision_checks = 0;
  long long goal_candidates_drawn = 0;
  long long goal_candidates_rejected = 0;
  long long art_nodes = 0;
  long long rt_nodes = 0;
  int solution_len = -1;

  std::string to_json_line() const;
  static TrialRecord from_json_line(const std::string& line);
};

// Everything except the wall-time fields.
bool records_equal_modulo_wall(const TrialRecord& a, const TrialRecord& b);

search::SearchParams params_for_variant(const std::string& variant, uint64_t solver_seed,
                                        double timeout_seconds);

// Deterministic per-trial seeds: the same trial index faces the same
// instance and solver seed in every variant.
uint64_t trial_instance_seed(uint64_t suite_seed, const std::string& family, int m, int trial);
uint64_t trial_solver_seed(uint64_t instance_seed);

// Builds the instance, solves it, and validates any returned solution.
TrialRecord run_trial(const std::string& family, int m, const std::string& variant,
                      uint64_t suite_seed, int trial, double timeout_seconds);

struct SuiteConfig {
  struct Problem {
    std::string family;
    int m = 0;
  };
  std::vector<Problem> problems;
  std::vector<std::string> variants{"full"};
  int trials = 30;
  double timeout_seconds = 60.0;
  uint64_t seed = 0;
  std::string out_path;
  int jobs = 2;

  static SuiteConfig from_json_file(const std::string& path);
};

// Runs every (problem, variant, trial) triple, appending line-delimited
// records to out_path in canonical order. Completed triples already in the
// file are skipped, so interrupted runs resume and a finished file is
// idempotent. Trials run in parallel; the writer serializes in order.
std::vector<TrialRecord> run_suite(const SuiteConfig& config);

std::vector<TrialRecord> read_records(const std::string& path);

}  // namespace tampkit::bench
