#include "tampkit/bench/harness.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "tampkit/domains/validate.hpp"
#include "tampkit/search/solution_io.hpp"

namespace tampkit::bench {

using nlohmann::json;

std::string TrialRecord::to_json_line() const {
  json j{{"domain", domain},
         {"m", m},
         {"variant", variant},
         {"trial", trial},
         {"instance_seed", instance_seed},
         {"solver_seed", solver_seed},
         {"outcome", outcome},
         {"validated", validated},
         {"wall_s", wall_s},
         {"symbolic_wall_s", symbolic_wall_s},
         {"virtual_s", virtual_s},
         {"iterations", iterations},
         {"mp_calls", mp_calls},
         {"collision_checks", collision_checks},
         {"goal_candidates_drawn", goal_candidates_drawn},
         {"goal_candidates_rejected", goal_candidates_rejected},
         {"art_nodes", art_nodes},
         {"rt_nodes", rt_nodes},
         {"solution_len", solution_len}};
  return j.dump();
}

TrialRecord TrialRecord::from_json_line(const std::string& line) {
  const json j = json::parse(line);
  TrialRecord r;
  r.domain = j.at("domain");
  r.m = j.at("m");
  r.variant = j.at("variant");
  r.trial = j.at("trial");
  r.instance_seed = j.at("instance_seed");
  r.solver_seed = j.at("solver_seed");
  r.outcome = j.at("outcome");
  r.validated = j.at("validated");
  r.wall_s = j.at("wall_s");
  r.symbolic_wall_s = j.at("symbolic_wall_s");
  r.virtual_s = j.at("virtual_s");
  r.iterations = j.at("iterations");
  r.mp_calls = j.at("mp_calls");
  r.collision_checks = j.at("collision_checks");
  r.goal_candidates_drawn = j.at("goal_candidates_drawn");
  r.goal_candidates_rejected = j.at("goal_candidates_rejected");
  r.art_nodes = j.at("art_nodes");
  r.rt_nodes = j.at("rt_nodes");
  r.solution_len = j.at("solution_len");
  return r;
}

bool records_equal_modulo_wall(const TrialRecord& a, const TrialRecord& b) {
  return a.domain == b.domain && a.m == b.m && a.variant == b.variant && a.trial == b.trial &&
         a.instance_seed == b.instance_seed && a.solver_seed == b.solver_seed &&
         a.outcome == b.outcome && a.validated == b.validated && a.virtual_s == b.virtual_s &&
         a.iterations == b.iterations && a.mp_calls == b.mp_calls &&
         a.collision_checks == b.collision_checks &&
         a.goal_candidates_drawn == b.goal_candidates_drawn &&
         a.goal_candidates_rejected == b.goal_candidates_rejected &&
         a.art_nodes == b.art_nodes && a.rt_nodes == b.rt_nodes &&
         a.solution_len == b.solution_len;
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t string_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

uint64_t trial_instance_seed(uint64_t suite_seed, const std::string& family, int m, int trial) {
  uint64_t h = splitmix64(suite_seed);
  h = splitmix64(h ^ string_hash(family));
  h = splitmix64(h ^ static_cast<uint64_t>(m));
  h = splitmix64(h ^ static_cast<uint64_t>(trial));
  return h;
}

uint64_t trial_solver_seed(uint64_t instance_seed) {
  return splitmix64(instance_seed ^ 0x501e5eedull);
}

search::SearchParams params_for_variant(const std::string& variant, uint64_t solver_seed,
                                        double timeout_seconds) {
  search::SearchParams params;
  params.seed = solver_seed;
  params.budget_seconds = timeout_seconds;
  if (variant == "full") {
  } else if (variant == "no-reward") {
    params.reward_mode = search::SearchParams::RewardMode::NoReward;
  } else if (variant == "no-rejection") {
    params.rejection_mode = search::SearchParams::RejectionMode::NoRejection;
  } else {
    throw std::invalid_argument("unknown variant: " + variant);
  }
  return params;
}

TrialRecord run_trial(const std::string& family, int m, const std::string& variant,
                      uint64_t suite_seed, int trial, double timeout_seconds) {
  TrialRecord rec;
  rec.domain = family;
  rec.m = m;
  rec.variant = variant;
  rec.trial = trial;
  rec.instance_seed = trial_instance_seed(suite_seed, family, m, trial);
  rec.solver_seed = trial_solver_seed(rec.instance_seed);

  const domains::BenchmarkInstance instance =
      domains::build_instance(family, m, rec.instance_seed);
  const search::SearchParams params =
      params_for_variant(variant, rec.solver_seed, timeout_seconds);
  search::Planner planner(*instance.ground, instance.scene, instance.initial_state(),
                          instance.goal, params);
  const search::SolveOutcome outcome = planner.solve();

  switch (outcome.status) {
    case search::SolveStatus::Solved: rec.outcome = "solved"; break;
    case search::SolveStatus::Timeout: rec.outcome = "timeout"; break;
    case search::SolveStatus::InfeasibleAbstractGoal: rec.outcome = "infeasible"; break;
  }
  if (outcome.solution) {
    const search::SolutionFile file = to_solution_file(*instance.ground, *outcome.solution);
    rec.validated = domains::validate_solution(instance, file, params.mp).valid;
    rec.solution_len = static_cast<int>(outcome.solution->steps.size());
  }
  const search::SolveStats& st = outcome.stats;
  rec.wall_s = st.wall_seconds;
  rec.symbolic_wall_s = st.symbolic_seconds;
  rec.virtual_s = st.virtual_cost(params);
  rec.iterations = st.iterations;
  rec.mp_calls = st.mp_calls;
  rec.collision_checks = st.collision_checks;
  rec.goal_candidates_drawn = st.goal_candidates_drawn;
  rec.goal_candidates_rejected = st.goal_candidates_rejected;
  rec.art_nodes = st.art_nodes;
  rec.rt_nodes = st.rt_nodes;
  return rec;
}

SuiteConfig SuiteConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  const json j = json::parse(in);
  SuiteConfig cfg;
  for (const auto& jp : j.at("problems"))
    cfg.problems.push_back({jp.at("domain"), jp.at("m")});
  if (j.contains("variants"))
    cfg.variants = j.at("variants").get<std::vector<std::string>>();
  cfg.trials = j.value("trials", cfg.trials);
  cfg.timeout_seconds = j.value("timeout", cfg.timeout_seconds);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.out_path = j.value("out", cfg.out_path);
  cfg.jobs = j.value("jobs", cfg.jobs);
  return cfg;
}

std::vector<TrialRecord> read_records(const std::string& path) {
  std::vector<TrialRecord> records;
  std::ifstream in(path);
  if (!in) return records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(TrialRecord::from_json_line(line));
  }
  return records;
}

std::vector<TrialRecord> run_suite(const SuiteConfig& config) {
  struct Job {
    std::string family;
    int m;
    std::string variant;
    int trial;
  };
  std::vector<Job> jobs;
  for (const auto& prob : config.problems)
    for (const auto& variant : config.variants)
      for (int t = 0; t < config.trials; ++t) jobs.push_back({prob.family, prob.m, variant, t});

  // Resume: skip triples already recorded.
  std::vector<TrialRecord> existing = read_records(config.out_path);
  std::set<std::tuple<std::string, int, std::string, int>> done;
  for (const auto& r : existing) done.insert({r.domain, r.m, r.variant, r.trial});

  std::vector<std::optional<TrialRecord>> results(jobs.size());
  std::vector<bool> skip(jobs.size(), false);
  for (size_t i = 0; i < jobs.size(); ++i)
    skip[i] = done.count({jobs[i].family, jobs[i].m, jobs[i].variant, jobs[i].trial}) > 0;

  std::atomic<size_t> next_job{0};
  std::mutex write_mutex;
  size_t next_to_write = 0;
  std::ofstream out;
  if (!config.out_path.empty()) out.open(config.out_path, std::ios::app);

  const auto flush_ready = [&]() {
    // Called with write_mutex held: emit the contiguous completed prefix.
    while (next_to_write < jobs.size() &&
           (skip[next_to_write] || results[next_to_write].has_value())) {
      if (!skip[next_to_write] && out.is_open()) {
        out << results[next_to_write]->to_json_line() << "\n";
        out.flush();
      }
      ++next_to_write;
    }
  };

  const auto worker = [&]() {
    while (true) {
      const size_t i = next_job.fetch_add(1);
      if (i >= jobs.size()) return;
      if (!skip[i]) {
        TrialRecord rec = run_trial(jobs[i].family, jobs[i].m, jobs[i].variant, config.seed,
                                    jobs[i].trial, config.timeout_seconds);
        std::lock_guard<std::mutex> lock(write_mutex);
        results[i] = std::move(rec);
        flush_ready();
      } else {
        std::lock_guard<std::mutex> lock(write_mutex);
        flush_ready();
      }
    }
  };

  const int n_threads = std::max(1, config.jobs);
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  {
    std::lock_guard<std::mutex> lock(write_mutex);
    flush_ready();
  }

  // Full record set in canonical order (existing ones reused).
  std::map<std::tuple<std::string, int, std::string, int>, TrialRecord> by_key;
  for (auto& r : existing) by_key[{r.domain, r.m, r.variant, r.trial}] = r;
  std::vector<TrialRecord> all;
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (results[i]) {
      all.push_back(*results[i]);
    } else {
      all.push_back(by_key.at({jobs[i].family, jobs[i].m, jobs[i].variant, jobs[i].trial}));
    }
  }
  return all;
}

}  // namespace tampkit::bench
