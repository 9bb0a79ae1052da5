#include "tampkit/bench/aggregate.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace tampkit::bench {

using nlohmann::json;

std::vector<CdfGroup> cdf(const std::vector<TrialRecord>& records,
                          const std::string& group_keys) {
  bool by_domain = false, by_m = false, by_variant = false;
  std::stringstream ss(group_keys);
  std::string key;
  while (std::getline(ss, key, ',')) {
    if (key == "domain") by_domain = true;
    else if (key == "m") by_m = true;
    else if (key == "variant") by_variant = true;
    else if (!key.empty()) throw std::invalid_argument("unknown group key: " + key);
  }

  std::map<std::string, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) {
    std::string g;
    if (by_domain) g += r.domain;
    if (by_m) g += (g.empty() ? "" : "/") + std::to_string(r.m);
    if (by_variant) g += (g.empty() ? "" : "/") + r.variant;
    if (g.empty()) g = "all";
    groups[g].push_back(&r);
  }

  std::vector<CdfGroup> out;
  for (const auto& [name, rs] : groups) {
    CdfGroup grp;
    grp.key = name;
    grp.trials = static_cast<int>(rs.size());
    std::vector<double> times;
    for (const auto* r : rs)
      if (r->outcome == "solved") times.push_back(r->wall_s);
    std::sort(times.begin(), times.end());
    for (size_t i = 0; i < times.size(); ++i)
      grp.steps.emplace_back(times[i], static_cast<double>(i + 1) / grp.trials);
    grp.success_rate = grp.trials == 0
                           ? 0.0
                           : static_cast<double>(times.size()) / grp.trials;
    out.push_back(std::move(grp));
  }
  return out;
}

std::string cdf_to_json(const std::vector<CdfGroup>& groups) {
  json j = json::array();
  for (const auto& g : groups) {
    json steps = json::array();
    for (const auto& [t, f] : g.steps) steps.push_back({t, f});
    j.push_back({{"group", g.key},
                 {"trials", g.trials},
                 {"steps", steps},
                 {"success_rate", g.success_rate}});
  }
  return j.dump(2);
}

std::vector<VariantSummary> compare(const std::vector<TrialRecord>& records) {
  std::map<std::tuple<std::string, int, std::string>, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) groups[{r.domain, r.m, r.variant}].push_back(&r);

  std::vector<VariantSummary> out;
  for (const auto& [key, rs] : groups) {
    VariantSummary s;
    std::tie(s.domain, s.m, s.variant) = key;
    s.trials = static_cast<int>(rs.size());
    std::vector<double> solve_times;
    for (const auto* r : rs) {
      if (r->outcome == "solved") {
        ++s.solved;
        solve_times.push_back(r->wall_s);
      }
      s.mean_mp_calls += r->mp_calls;
      s.mean_collision_checks += r->collision_checks;
      s.mean_goal_candidates_drawn += r->goal_candidates_drawn;
      s.mean_goal_candidates_rejected += r->goal_candidates_rejected;
      s.mean_art_nodes += r->art_nodes;
      s.mean_rt_nodes += r->rt_nodes;
      s.mean_symbolic_wall_s += r->symbolic_wall_s;
      s.mean_wall_s += r->wall_s;
    }
    if (s.trials > 0) {
      s.success_rate = static_cast<double>(s.solved) / s.trials;
      s.mean_mp_calls /= s.trials;
      s.mean_collision_checks /= s.trials;
      s.mean_goal_candidates_drawn /= s.trials;
      s.mean_goal_candidates_rejected /= s.trials;
      s.mean_art_nodes /= s.trials;
      s.mean_rt_nodes /= s.trials;
      s.mean_symbolic_wall_s /= s.trials;
      s.mean_wall_s /= s.trials;
    }
    if (!solve_times.empty()) {
      std::sort(solve_times.begin(), solve_times.end());
      const size_t n = solve_times.size();
      s.median_solve_time =
          n % 2 == 1 ? solve_times[n / 2] : (solve_times[n / 2 - 1] + solve_times[n / 2]) / 2.0;
    }
    out.push_back(s);
  }
  return out;
}

std::string compare_to_json(const std::vector<VariantSummary>& summaries) {
  json j = json::array();
  for (const auto& s : summaries) {
    j.push_back({{"domain", s.domain},
                 {"m", s.m},
                 {"variant", s.variant},
                 {"trials", s.trials},
                 {"solved", s.solved},
                 {"success_rate", s.success_rate},
                 {"median_solve_time", s.median_solve_time},
                 {"mean_mp_calls", s.mean_mp_calls},
                 {"mean_collision_checks", s.mean_collision_checks},
                 {"mean_goal_candidates_drawn", s.mean_goal_candidates_drawn},
                 {"mean_goal_candidates_rejected", s.mean_goal_candidates_rejected},
                 {"mean_art_nodes", s.mean_art_nodes},
                 {"mean_rt_nodes", s.mean_rt_nodes},
                 {"mean_symbolic_wall_s", s.mean_symbolic_wall_s},
                 {"mean_wall_s", s.mean_wall_s}});
  }
  return j.dump(2);
}

}  // namespace tampkit::bench
