#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tampkit/bench/aggregate.hpp"
#include "tampkit/bench/harness.hpp"
#include "tampkit/domains/bundle_io.hpp"
#include "tampkit/domains/validate.hpp"
#include "tampkit/search/solution_io.hpp"

namespace {

bool verbose_logging() {
  const char* level = std::getenv("TAMPKIT_LOG");
  return level != nullptr && std::string(level) == "debug";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tampkit: reachability-tree task and motion planning toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a benchmark problem bundle");
  std::string gen_domain = "kitchen";
  int gen_m = 3;
  uint64_t gen_seed = 0;
  std::string gen_out = "bundle";
  bool gen_skip_checks = false;
  gen->add_option("--domain", gen_domain, "kitchen|nonmon|blocktower")->required();
  gen->add_option("--m", gen_m, "movable count")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_flag("--skip-self-check", gen_skip_checks, "skip generation-time self checks");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one instance and write the solution file");
  std::string sol_domain = "kitchen", sol_bundle, sol_out = "solution.json",
              sol_variant = "full";
  int sol_m = 3;
  uint64_t sol_seed = 0, sol_solver_seed = 1;
  double sol_timeout = 60.0;
  solve->add_option("--domain", sol_domain, "kitchen|nonmon|blocktower");
  solve->add_option("--m", sol_m, "movable count");
  solve->add_option("--seed", sol_seed, "instance seed");
  solve->add_option("--bundle", sol_bundle, "load instance from a bundle directory instead");
  solve->add_option("--variant", sol_variant, "full|no-reward|no-rejection");
  solve->add_option("--solver-seed", sol_solver_seed, "planner RNG seed");
  solve->add_option("--timeout", sol_timeout, "budget in virtual seconds");
  solve->add_option("--out", sol_out, "solution output path");

  // validate
  auto* validate = app.add_subcommand("validate", "Validate a solution file against an instance");
  std::string val_bundle, val_solution, val_domain;
  int val_m = 0;
  uint64_t val_seed = 0;
  validate->add_option("--bundle", val_bundle, "bundle directory");
  validate->add_option("--domain", val_domain, "regenerate instance: family");
  validate->add_option("--m", val_m, "regenerate instance: movable count");
  validate->add_option("--seed", val_seed, "regenerate instance: seed");
  validate->add_option("--solution", val_solution, "solution file")->required();

  // run
  auto* run = app.add_subcommand("run", "Run a trial suite");
  std::string run_domain, run_variants = "full", run_out = "results.jsonl", run_config;
  int run_m = 3, run_trials = 30, run_jobs = 2;
  double run_timeout = 60.0;
  uint64_t run_seed = 0;
  run->add_option("--config", run_config, "JSON config mirroring the flags");
  run->add_option("--domain", run_domain, "kitchen|nonmon|blocktower");
  run->add_option("--m", run_m, "movable count");
  run->add_option("--variant", run_variants, "comma list of full|no-reward|no-rejection");
  run->add_option("--trials", run_trials, "trials per (problem, variant)");
  run->add_option("--timeout", run_timeout, "per-trial budget in virtual seconds");
  run->add_option("--seed", run_seed, "suite seed");
  run->add_option("--jobs", run_jobs, "parallel trials");
  run->add_option("--out", run_out, "results file (line-delimited records)");

  // cdf
  auto* cdf_cmd = app.add_subcommand("cdf", "Cumulative success over time from a results file");
  std::string cdf_in, cdf_out, cdf_group = "domain,variant";
  cdf_cmd->add_option("--in", cdf_in, "results file")->required();
  cdf_cmd->add_option("--group", cdf_group, "comma list over domain,m,variant");
  cdf_cmd->add_option("--out", cdf_out, "output path (stdout when omitted)");

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Per-variant summary of a results file");
  std::string cmp_in, cmp_out;
  compare_cmd->add_option("--in", cmp_in, "results file")->required();
  compare_cmd->add_option("--out", cmp_out, "output path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto instance = tampkit::domains::build_instance(gen_domain, gen_m, gen_seed);
      if (!gen_skip_checks) {
        if (instance.family == "kitchen" &&
            !tampkit::domains::verify_kitchen_tightness(instance, gen_seed))
          throw std::runtime_error("kitchen tightness self-check failed");
        if (instance.family == "nonmonotonic" &&
            !tampkit::domains::verify_nonmonotonic_blocking(instance))
          throw std::runtime_error("nonmonotonic blocking self-check failed");
      }
      tampkit::domains::save_bundle(instance, gen_out);
      std::cout << "wrote bundle " << instance.name << " to " << gen_out << "\n";
      return 0;
    }

    if (solve->parsed()) {
      tampkit::domains::BenchmarkInstance instance =
          sol_bundle.empty() ? tampkit::domains::build_instance(sol_domain, sol_m, sol_seed)
                             : tampkit::domains::load_bundle(sol_bundle);
      const auto params =
          tampkit::bench::params_for_variant(sol_variant, sol_solver_seed, sol_timeout);
      tampkit::search::Planner planner(*instance.ground, instance.scene,
                                       instance.initial_state(), instance.goal, params);
      const auto outcome = planner.solve();
      if (outcome.status != tampkit::search::SolveStatus::Solved) {
        std::cout << (outcome.status == tampkit::search::SolveStatus::Timeout
                          ? "timeout"
                          : "infeasible abstract goal")
                  << " after " << outcome.stats.wall_seconds << " s\n";
        return 2;
      }
      const auto file = to_solution_file(*instance.ground, *outcome.solution);
      save_solution(file, sol_out);
      const auto verdict = tampkit::domains::validate_solution(instance, file, params.mp);
      std::cout << "solved " << instance.name << " in " << outcome.stats.wall_seconds
                << " s, " << outcome.solution->steps.size() << " steps, validator says "
                << (verdict.valid ? "valid" : ("INVALID: " + verdict.violation)) << "\n";
      return verdict.valid ? 0 : 1;
    }

    if (validate->parsed()) {
      tampkit::domains::BenchmarkInstance instance =
          val_bundle.empty() ? tampkit::domains::build_instance(val_domain, val_m, val_seed)
                             : tampkit::domains::load_bundle(val_bundle);
      const auto solution = tampkit::search::load_solution(val_solution);
      const auto verdict = tampkit::domains::validate_solution(instance, solution);
      if (verdict.valid) {
        std::cout << "valid\n";
        return 0;
      }
      std::cout << "invalid: " << verdict.violation << "\n";
      return 1;
    }

    if (run->parsed()) {
      tampkit::bench::SuiteConfig cfg;
      if (!run_config.empty()) {
        cfg = tampkit::bench::SuiteConfig::from_json_file(run_config);
      } else {
        if (run_domain.empty())
          throw std::runtime_error("run needs --domain or --config");
        cfg.problems.push_back({run_domain, run_m});
        cfg.variants.clear();
        std::stringstream ss(run_variants);
        std::string v;
        while (std::getline(ss, v, ','))
          if (!v.empty()) cfg.variants.push_back(v);
        cfg.trials = run_trials;
        cfg.timeout_seconds = run_timeout;
        cfg.seed = run_seed;
        cfg.jobs = run_jobs;
        cfg.out_path = run_out;
      }
      if (verbose_logging())
        std::cerr << "running " << cfg.problems.size() * cfg.variants.size() * cfg.trials
                  << " trials\n";
      const auto records = tampkit::bench::run_suite(cfg);
      std::cout << "wrote " << records.size() << " records to " << cfg.out_path << "\n";
      return 0;
    }

    if (cdf_cmd->parsed()) {
      const auto records = tampkit::bench::read_records(cdf_in);
      const auto text = tampkit::bench::cdf_to_json(tampkit::bench::cdf(records, cdf_group));
      if (cdf_out.empty())
        std::cout << text << "\n";
      else
        write_text_file(cdf_out, text + "\n");
      return 0;
    }

    if (compare_cmd->parsed()) {
      const auto records = tampkit::bench::read_records(cmp_in);
      const auto text = tampkit::bench::compare_to_json(tampkit::bench::compare(records));
      if (cmp_out.empty())
        std::cout << text << "\n";
      else
        write_text_file(cmp_out, text + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
