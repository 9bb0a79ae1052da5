#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <iostream>
#include <map>

#include "tampkit/domains/benchmarks.hpp"
#include "tampkit/domains/validate.hpp"
#include "tampkit/search/solution_io.hpp"
#include "tampkit/symbolic/parser.hpp"

using namespace tampkit;
using search::Planner;
using search::SearchParams;

namespace {

symbolic::GroundActionId action_named(const symbolic::GroundProblem& gp,
                                      const std::string& display) {
  for (symbolic::GroundActionId a = 0; a < gp.actions().size(); ++a)
    if (gp.action(a).display == display) return a;
  throw std::runtime_error("no action " + display);
}

symbolic::AtomId atom_named(const symbolic::GroundProblem& gp, const std::string& text) {
  for (symbolic::AtomId i = 0; i < gp.atom_count(); ++i)
    if (gp.atom_text(i) == text) return i;
  throw std::runtime_error("no atom " + text);
}

SearchParams quiet_params(uint64_t seed) {
  SearchParams p;
  p.seed = seed;
  p.budget_seconds = 120.0;
  return p;
}

}  // namespace

TEST_CASE("update_tree accumulates visits and rewards") {
  search::AbstractReachabilityTree art;
  art.init_root(symbolic::AbstractState{}, 0.2);
  search::update_tree(art, {0}, 0.4, false);
  CHECK(art.node(0).n_visit == 1);
  CHECK(art.node(0).r_total == doctest::Approx(0.4));
  search::update_tree(art, {0}, 0.8, false);
  CHECK(art.node(0).value() == doctest::Approx(0.6));

  SUBCASE("no-reward mode never writes r_total") {
    search::AbstractReachabilityTree ablated;
    ablated.init_root(symbolic::AbstractState{}, 0.2);
    search::update_tree(ablated, {0}, 0.9, true);
    search::update_tree(ablated, {0}, 0.7, true);
    CHECK(ablated.node(0).n_visit == 2);
    CHECK(ablated.node(0).r_total == 0.0);
    CHECK(ablated.node(0).value() == 0.0);
  }

  SUBCASE("rewards outside [0,1] are rejected") {
    CHECK_THROWS_AS(search::update_tree(art, {0}, 1.5, false), std::invalid_argument);
  }
}

TEST_CASE("failed_step_reward is (i-1)/n") {
  CHECK(search::failed_step_reward(1, 5) == 0.0);
  CHECK(search::failed_step_reward(3, 5) == doctest::Approx(0.4));
  for (int n = 1; n <= 8; ++n)
    for (int i = 1; i <= n; ++i) {
      const double r = search::failed_step_reward(i, n);
      CHECK(r == static_cast<double>(i - 1) / n);
      CHECK(r >= 0.0);
      CHECK(r < 1.0);
    }
}

TEST_CASE("randomized_tree_search") {
  const auto inst = domains::build_kitchen(3, 21);
  const auto& gp = *inst.ground;

  SUBCASE("root-only tree returns the root with an empty sequence") {
    Planner planner(gp, inst.scene, inst.initial_state(), inst.goal, quiet_params(1));
    const auto walk = planner.randomized_tree_search();
    CHECK(walk.n_last == planner.art().root());
    CHECK(walk.pi_rand.empty());
    CHECK(walk.node_seq == std::vector<int>{planner.art().root()});
  }

  SUBCASE("greedy walk passes through the higher-valued child") {
    SearchParams p = quiet_params(5);
    p.epsilon = 0.0;
    p.terminate_prob = 0.0;
    Planner planner(gp, inst.scene, inst.initial_state(), inst.goal, p);
    auto& art = planner.art();
    const auto a1 = action_named(gp, "(pick f1 dish)");
    const auto a2 = action_named(gp, "(pick f2 dish)");
    const auto s0 = gp.initial_state();
    const int c1 = art.add_child(art.root(), a1, symbolic::apply(gp, s0, a1));
    const int c2 = art.add_child(art.root(), a2, symbolic::apply(gp, s0, a2));
    art.node(c1).n_visit = 5;
    art.node(c1).r_total = 1.0;  // value 0.2
    art.node(c2).n_visit = 5;
    art.node(c2).r_total = 4.0;  // value 0.8
    for (int trial = 0; trial < 20; ++trial) {
      const auto walk = planner.randomized_tree_search();
      REQUIRE(walk.node_seq.size() >= 2);
      CHECK(walk.node_seq[1] == c2);
    }
  }

  SUBCASE("epsilon=1 explores a 3-child node uniformly") {
    SearchParams p = quiet_params(9);
    p.epsilon = 1.0;
    p.terminate_prob = 0.0;
    Planner planner(gp, inst.scene, inst.initial_state(), inst.goal, p);
    // kitchen-3 root: exactly pick f1/f2/f3 from dish are applicable;
    // materialize all three children.
    auto& art = planner.art();
    const auto s0 = gp.initial_state();
    for (const auto& name : {"(pick f1 dish)", "(pick f2 dish)", "(pick f3 dish)"}) {
      const auto a = action_named(gp, name);
      art.add_child(art.root(), a, symbolic::apply(gp, s0, a));
    }
    std::map<symbolic::GroundActionId, int> freq;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      const auto walk = planner.randomized_tree_search();
      REQUIRE_FALSE(walk.pi_rand.empty());
      ++freq[walk.pi_rand.front()];
    }
    REQUIRE(freq.size() == 3);
    for (const auto& [a, count] : freq) {
      (void)a;
      CHECK(std::abs(count / double(trials) - 1.0 / 3.0) < 0.03);
    }
  }

  SUBCASE("argmax is invariant to scaling visits and rewards") {
    SearchParams p = quiet_params(13);
    p.epsilon = 0.0;
    p.terminate_prob = 0.0;
    const auto run_distribution = [&](double scale) {
      Planner planner(gp, inst.scene, inst.initial_state(), inst.goal, p);
      auto& art = planner.art();
      const auto s0 = gp.initial_state();
      const auto a1 = action_named(gp, "(pick f1 dish)");
      const auto a2 = action_named(gp, "(pick f2 dish)");
      const auto a3 = action_named(gp, "(pick f3 dish)");
      const int c1 = art.add_child(art.root(), a1, symbolic::apply(gp, s0, a1));
      const int c2 = art.add_child(art.root(), a2, symbolic::apply(gp, s0, a2));
      const int c3 = art.add_child(art.root(), a3, symbolic::apply(gp, s0, a3));
      // c1 and c2 tie at value 0.5; c3 sits lower.
      art.node(c1).n_visit = static_cast<int>(2 * scale);
      art.node(c1).r_total = 1.0 * scale;
      art.node(c2).n_visit = static_cast<int>(4 * scale);
      art.node(c2).r_total = 2.0 * scale;
      art.node(c3).n_visit = static_cast<int>(4 * scale);
      art.node(c3).r_total = 1.0 * scale;
      std::map<int, int> freq;
      for (int t = 0; t < 4000; ++t) {
        const auto walk = planner.randomized_tree_search();
        ++freq[walk.node_seq[1]];
      }
      CHECK(freq.count(c3) == 0);
      return std::pair{freq[c1] / 4000.0, freq[c2] / 4000.0};
    };
    const auto [f1a, f2a] = run_distribution(1.0);
    const auto [f1b, f2b] = run_distribution(3.0);
    CHECK(std::abs(f1a - 0.5) < 0.05);
    CHECK(std::abs(f2a - 0.5) < 0.05);
    CHECK(std::abs(f1a - f1b) < 0.05);
    CHECK(std::abs(f2a - f2b) < 0.05);
  }
}

TEST_CASE("sample_action_seq") {
  const auto inst = domains::build_kitchen(1, 4);
  const auto& gp = *inst.ground;

  SUBCASE("fresh tree: the sequence is exactly the symbolic plan") {
    SearchParams p = quiet_params(2);
    p.terminate_prob = 1.0;  // walk always stops at the root
    Planner planner(gp, inst.scene, inst.initial_state(), inst.goal, p);
    const auto seq = planner.sample_action_seq();
    REQUIRE(seq.has_value());
    const auto plan = symbolic::task_plan(gp, gp.initial_state(), inst.goal.atoms);
    REQUIRE(plan.found());
    CHECK(seq->pi == plan.plan);
    CHECK(seq->node_seq.size() == seq->pi.size() + 1);
    CHECK(seq->node_seq.front() == planner.art().root());
  }

  SUBCASE("a stored, valued path is resampled exactly") {
    SearchParams p = quiet_params(3);
    p.epsilon = 0.0;
    p.terminate_prob = 0.0;
    Planner planner(gp, inst.scene, inst.initial_state(), inst.goal, p);
    const auto first = planner.sample_action_seq();
    REQUIRE(first.has_value());
    search::update_tree(planner.art(), first->node_seq, 0.5, false);
    // Greedy walk now follows the single stored path to its leaf; the
    // symbolic completion from the goal-satisfied leaf is empty.
    const auto second = planner.sample_action_seq();
    REQUIRE(second.has_value());
    CHECK(second->pi == first->pi);
    CHECK(second->node_seq == first->node_seq);
  }

  SUBCASE("dead nodes propagate failure") {
    // Unreachable goal: nothing ever adds attached(f1, f1).
    search::GoalSpec bad;
    const auto attached = *gp.attached_predicate();
    symbolic::ObjectId f1 = 0;
    for (symbolic::ObjectId o = 0; o < gp.objects().size(); ++o)
      if (gp.object_name(o) == "f1") f1 = o;
    auto& mut = const_cast<symbolic::GroundProblem&>(gp);
    bad.atoms = {mut.intern_atom(attached, {f1, f1})};
    Planner planner(gp, inst.scene, inst.initial_state(), bad, quiet_params(4));
    const auto seq = planner.sample_action_seq();
    CHECK_FALSE(seq.has_value());
    CHECK(planner.art().node(planner.art().root()).dead);
  }
}

TEST_CASE("sample_batch_attachments follows the reverse goal scan") {
  const auto inst = domains::build_kitchen(1, 11);
  const auto& gp = *inst.ground;
  const auto plan = symbolic::task_plan(gp, gp.initial_state(), inst.goal.atoms);
  REQUIRE(plan.found());
  REQUIRE(plan.plan.size() == 6);

  SUBCASE("goal attachment taken verbatim for the goal-making action") {
    search::GoalSpec goal = inst.goal;
    const auto stove_atom = atom_named(gp, "(attached f1 stove)");
    goal.atoms.push_back(stove_atom);
    std::sort(goal.atoms.begin(), goal.atoms.end());
    const geometry::Attachment want{"f1", "stove", {0.0123, 0.0361, 0.0}};
    goal.attachments[stove_atom] = want;
    Planner planner(gp, inst.scene, inst.initial_state(), goal, quiet_params(6));
    const auto alpha = planner.sample_batch_attachments(plan.plan);
    REQUIRE(alpha.has_value());
    REQUIRE(alpha->size() == 6);
    // pick f1 dish / place f1 sink / wash / pick f1 sink / place f1 stove / cook
    REQUIRE((*alpha)[0].has_value());
    CHECK((*alpha)[0]->is_grasp());
    REQUIRE((*alpha)[1].has_value());
    CHECK((*alpha)[1]->parent == "sink");
    CHECK_FALSE((*alpha)[2].has_value());
    REQUIRE((*alpha)[3].has_value());
    CHECK((*alpha)[3]->is_grasp());
    REQUIRE((*alpha)[4].has_value());
    CHECK(geometry::exactly_equal(*(*alpha)[4], want));
    CHECK_FALSE((*alpha)[5].has_value());
  }

  SUBCASE("without a goal attachment every geometric action is sampled") {
    Planner planner(gp, inst.scene, inst.initial_state(), inst.goal, quiet_params(8));
    const auto alpha = planner.sample_batch_attachments(plan.plan);
    REQUIRE(alpha.has_value());
    REQUIRE((*alpha)[4].has_value());
    CHECK((*alpha)[4]->parent == "stove");
    // Sampled inside the stove region, never pinned to one spot.
    const auto& region = *inst.scene.body("stove").region;
    CHECK((*alpha)[4]->transform.x >= region.x_lo);
    CHECK((*alpha)[4]->transform.x <= region.x_hi);
  }

  SUBCASE("all-non-geometric sequences need no attachments") {
    // f1 starts on the sink in this variant, so wash alone is valid.
    const auto washy = symbolic::parse_problem(
        "(define (problem k1w) (:domain kitchen) (:objects f1 - movable)"
        " (:init (handempty) (attached f1 sink)) (:goal (and (washed f1))))",
        inst.domain);
    symbolic::GroundProblem gpw(inst.domain, washy);
    geometry::Mode mode;
    const auto& sink_region = *inst.scene.body("sink").region;
    mode.attachments["f1"] = geometry::Attachment{
        "f1", "sink", geometry::Scene::placement_pose(sink_region, 0.0, 0.035)};
    search::GoalSpec goal;
    goal.atoms = gpw.goal_atoms();
    search::HybridState x0{gpw.initial_state(), mode, inst.q0};
    Planner planner(gpw, inst.scene, x0, goal, quiet_params(10));
    const auto plan_w = symbolic::task_plan(gpw, gpw.initial_state(), goal.atoms);
    REQUIRE(plan_w.found());
    REQUIRE(plan_w.plan.size() == 1);
    const auto alpha = planner.sample_batch_attachments(plan_w.plan);
    REQUIRE(alpha.has_value());
    CHECK_FALSE((*alpha)[0].has_value());
  }
}

TEST_CASE("make_goal_candidate") {
  const auto inst = domains::build_kitchen(1, 31);
  const auto& gp = *inst.ground;
  const auto plan = symbolic::task_plan(gp, gp.initial_state(), inst.goal.atoms);
  REQUIRE(plan.found());

  SUBCASE("well-separated goal mode accepted") {
    Planner planner(gp, inst.scene, inst.initial_state(), inst.goal, quiet_params(12));
    const auto alpha = planner.sample_batch_attachments(plan.plan);
    REQUIRE(alpha.has_value());
    const auto cand = planner.make_goal_candidate(*alpha, plan.plan, true);
    REQUIRE(cand.has_value());
    CHECK(cand->sigma.of("f1").parent == "stove");
    CHECK(geometry::state_collision_free(inst.scene, cand->sigma, cand->q));
    // s_G is the fold of the plan over the initial abstract state.
    auto s = gp.initial_state();
    for (const auto a : plan.plan) s = symbolic::apply(gp, s, a);
    CHECK(cand->s == s);
  }

  SUBCASE("empty sequence yields the initial slice") {
    Planner planner(gp, inst.scene, inst.initial_state(), inst.goal, quiet_params(14));
    const auto cand = planner.make_goal_candidate({}, {}, true);
    REQUIRE(cand.has_value());
    CHECK(cand->s == inst.initial_state().s);
    CHECK(geometry::exactly_equal(cand->sigma, inst.initial_mode));
  }
}

TEST_CASE("ss_layer rejects impossible goal batches after k_goal draws") {
  const auto inst = domains::build_kitchen(2, 17);
  const auto& gp = *inst.ground;
  // Force both blocks to the same stove spot: every candidate collides.
  search::GoalSpec goal;
  const auto a1 = atom_named(gp, "(attached f1 stove)");
  const auto a2 = atom_named(gp, "(attached f2 stove)");
  goal.atoms = {std::min(a1, a2), std::max(a1, a2)};
  const auto& region = *inst.scene.body("stove").region;
  const geometry::Pose2 spot = geometry::Scene::placement_pose(region, 0.0, 0.035);
  goal.attachments[a1] = {"f1", "stove", spot};
  goal.attachments[a2] = {"f2", "stove", spot};

  SearchParams p = quiet_params(19);
  p.terminate_prob = 1.0;
  Planner planner(gp, inst.scene, inst.initial_state(), goal, p);
  const auto seq = planner.sample_action_seq();
  REQUIRE(seq.has_value());
  const auto rewards = planner.ss_layer(*seq).rewards;
  CHECK(rewards.empty());
  CHECK(planner.stats().goal_candidates_drawn == p.k_goal);
  CHECK(planner.stats().goal_candidates_rejected == p.k_goal);
  CHECK(planner.stats().mp_calls == 0);

  SUBCASE("no-rejection keeps the unchecked candidate and pays in MP calls") {
    SearchParams pn = quiet_params(19);
    pn.terminate_prob = 1.0;
    pn.rejection_mode = SearchParams::RejectionMode::NoRejection;
    Planner ablated(gp, inst.scene, inst.initial_state(), goal, pn);
    const auto seq2 = ablated.sample_action_seq();
    REQUIRE(seq2.has_value());
    ablated.ss_layer(*seq2);
    CHECK(ablated.stats().goal_candidates_drawn == 1);
    CHECK(ablated.stats().goal_candidates_rejected == 0);
    // Doomed batches reach the extension phase and burn motion planning
    // there; a few rounds are enough to see the waste.
    for (int round = 0; round < 10 && ablated.stats().mp_calls == 0; ++round) {
      const auto more = ablated.sample_action_seq();
      REQUIRE(more.has_value());
      ablated.ss_layer(*more);
    }
    CHECK(ablated.stats().mp_calls > 0);
    CHECK_FALSE(ablated.rt().solution().has_value());
  }
}

TEST_CASE("ss_layer pushes zero reward when the first step is unreachable") {
  auto inst = domains::build_kitchen(1, 23);
  // Exile the dish: picking from it becomes geometrically impossible while
  // the abstract model stays unchanged.
  inst.scene.static_poses["dish"].x = 5.0;
  SearchParams p = quiet_params(25);
  p.terminate_prob = 1.0;
  Planner planner(*inst.ground, inst.scene, inst.initial_state(), inst.goal, p);
  const auto seq = planner.sample_action_seq();
  REQUIRE(seq.has_value());
  REQUIRE(seq->pi.size() == 6);
  const auto rewards = planner.ss_layer(*seq).rewards;
  REQUIRE(rewards.size() == 1);
  CHECK(rewards[0] == 0.0);  // failed at step 1: (1-1)/6
}

TEST_CASE("ss_layer full success pushes 1.0 and records the solution") {
  const auto inst = domains::build_kitchen(1, 29);
  bool solved = false;
  // Fresh planner per attempt: with no accumulated V_s sets, a recorded
  // solution implies every step of this batch succeeded.
  for (int attempt = 0; attempt < 30 && !solved; ++attempt) {
    SearchParams p = quiet_params(31 + attempt);
    p.terminate_prob = 1.0;
    Planner planner(*inst.ground, inst.scene, inst.initial_state(), inst.goal, p);
    const auto seq = planner.sample_action_seq();
    REQUIRE(seq.has_value());
    const auto rewards = planner.ss_layer(*seq).rewards;
    for (const double r : rewards) {
      CHECK(r >= 0.0);
      CHECK(r <= 1.0);
    }
    if (planner.rt().solution()) {
      solved = true;
      CHECK(std::count(rewards.begin(), rewards.end(), 1.0) >= 1);
    }
  }
  CHECK(solved);
}

TEST_CASE("sample_transition") {
  const auto inst = domains::build_kitchen(1, 37);
  SearchParams p = quiet_params(41);
  Planner planner(*inst.ground, inst.scene, inst.initial_state(), inst.goal, p);
  const geometry::Mode& sigma = inst.initial_mode;
  // Grasp at a top-edge port of f1 (approach pointing down).
  const auto& ports = inst.scene.body("f1").ports;
  geometry::Pose2 top_port;
  bool found = false;
  for (const auto& port : ports) {
    if (std::abs(geometry::wrap_angle(port.theta + std::numbers::pi / 2)) < 0.3) {
      top_port = port;
      found = true;
      break;
    }
  }
  REQUIRE(found);
  const geometry::Attachment grasp{"f1", geometry::kRobotName, geometry::inverse(top_port)};
  const geometry::Mode sigma_grasp = geometry::make_next_mode(sigma, grasp);

  SUBCASE("reachable unobstructed pick returns a dual-mode-free configuration") {
    const auto q = planner.sample_transition(sigma, sigma_grasp);
    REQUIRE(q.has_value());
    CHECK(geometry::state_collision_free(inst.scene, sigma, *q));
    CHECK(geometry::state_collision_free(inst.scene, sigma_grasp, *q));
    // The end effector meets the grasp port on the placed block.
    const auto ee = geometry::fk(inst.scene.arm, *q).ee;
    const auto block = geometry::world_pose(sigma, inst.scene, *q, "f1");
    CHECK(geometry::approx_equal(ee, block * top_port, 2e-3));
  }

  SUBCASE("a port beyond the arm's reach fails") {
    auto far = inst;
    far.scene.static_poses["dish"].x = 5.0;
    Planner far_planner(*far.ground, far.scene, far.initial_state(), far.goal,
                        quiet_params(43));
    geometry::Mode far_sigma = far.initial_mode;
    CHECK_FALSE(
        far_planner.sample_transition(far_sigma, geometry::make_next_mode(far_sigma, grasp)));
  }

  SUBCASE("modes differing in two attachments are rejected") {
    const auto inst2 = domains::build_kitchen(2, 47);
    Planner planner2(*inst2.ground, inst2.scene, inst2.initial_state(), inst2.goal,
                     quiet_params(49));
    geometry::Mode sigma2 = inst2.initial_mode;
    geometry::Mode changed = sigma2;
    changed.attachments["f1"] = {"f1", geometry::kRobotName, {0.0, 0.0, 0.0}};
    changed.attachments["f2"] = {"f2", geometry::kRobotName, {0.0, 0.0, 0.1}};
    CHECK_THROWS_AS(planner2.sample_transition(sigma2, changed), std::invalid_argument);
  }
}

TEST_CASE("solve handles trivial and infeasible goals") {
  const auto inst = domains::build_kitchen(1, 53);
  const auto& gp = *inst.ground;

  SUBCASE("goal already satisfied returns an empty solution") {
    search::GoalSpec easy;
    easy.atoms = {atom_named(gp, "(attached f1 dish)")};
    Planner planner(gp, inst.scene, inst.initial_state(), easy, quiet_params(55));
    const auto outcome = planner.solve();
    REQUIRE(outcome.status == search::SolveStatus::Solved);
    CHECK(outcome.solution->steps.empty());
    CHECK(outcome.stats.mp_calls == 0);
    CHECK(outcome.stats.iterations == 0);
  }

  SUBCASE("abstractly unreachable goal fails before geometric work") {
    search::GoalSpec bad;
    symbolic::ObjectId f1 = 0;
    for (symbolic::ObjectId o = 0; o < gp.objects().size(); ++o)
      if (gp.object_name(o) == "f1") f1 = o;
    auto& mut = const_cast<symbolic::GroundProblem&>(gp);
    bad.atoms = {mut.intern_atom(*gp.attached_predicate(), {f1, f1})};
    Planner planner(gp, inst.scene, inst.initial_state(), bad, quiet_params(57));
    const auto outcome = planner.solve();
    CHECK(outcome.status == search::SolveStatus::InfeasibleAbstractGoal);
    CHECK(outcome.stats.mp_calls == 0);
  }
}

TEST_CASE("solve on kitchen-1: solution structure and validation") {
  const auto inst = domains::build_kitchen(1, 59);
  Planner planner(*inst.ground, inst.scene, inst.initial_state(), inst.goal, quiet_params(61));
  const auto outcome = planner.solve();
  REQUIRE(outcome.status == search::SolveStatus::Solved);
  const auto& steps = outcome.solution->steps;
  REQUIRE(steps.size() == 7);  // six actions plus the goal connection
  int mode_edges = 0, nongeom_edges = 0, config_edges = 0;
  for (const auto& step : steps) {
    switch (step.edge.kind) {
      case search::EdgeKind::Mode: ++mode_edges; break;
      case search::EdgeKind::NonGeometric: ++nongeom_edges; break;
      case search::EdgeKind::Config: ++config_edges; break;
      default: FAIL("root edge in a solution");
    }
  }
  CHECK(mode_edges == 4);
  CHECK(nongeom_edges == 2);
  CHECK(config_edges == 1);

  const auto file = to_solution_file(*inst.ground, *outcome.solution);
  CHECK(domains::validate_solution(inst, file).valid);

  SUBCASE("tampering with a waypoint is caught by the validator") {
    auto tampered = file;
    for (auto& rec : tampered.records) {
      if (rec.waypoints.size() >= 2) {
        rec.waypoints[rec.waypoints.size() / 2][1] += 1.0;
        break;
      }
    }
    const auto verdict = domains::validate_solution(inst, tampered);
    CHECK_FALSE(verdict.valid);
    CHECK_FALSE(verdict.violation.empty());
  }

  SUBCASE("solution files round-trip") {
    const std::string text = to_json_string(file);
    const auto back = search::solution_from_json_string(text);
    CHECK(to_json_string(back) == text);
    CHECK(domains::validate_solution(inst, back).valid);
  }
}

TEST_CASE("solve is deterministic for a fixed seed") {
  const auto inst = domains::build_kitchen(2, 67);
  const auto run = [&]() {
    Planner planner(*inst.ground, inst.scene, inst.initial_state(), inst.goal,
                    quiet_params(71));
    return planner.solve();
  };
  const auto a = run();
  const auto b = run();
  CHECK(a.status == b.status);
  CHECK(a.stats.iterations == b.stats.iterations);
  CHECK(a.stats.mp_calls == b.stats.mp_calls);
  CHECK(a.stats.collision_checks == b.stats.collision_checks);
  CHECK(a.stats.goal_candidates_drawn == b.stats.goal_candidates_drawn);
  CHECK(a.stats.rt_nodes == b.stats.rt_nodes);
  CHECK(a.stats.art_nodes == b.stats.art_nodes);
  REQUIRE(a.solution.has_value() == b.solution.has_value());
  if (a.solution) {
    const auto fa = to_solution_file(*inst.ground, *a.solution);
    const auto fb = to_solution_file(*inst.ground, *b.solution);
    CHECK(to_json_string(fa) == to_json_string(fb));
  }
}

TEST_CASE("tree invariants are enforced on insertion") {
  const auto inst = domains::build_kitchen(1, 73);
  const auto& gp = *inst.ground;
  search::ReachabilityTree rt(gp);
  const auto x0 = inst.initial_state();
  rt.add_root(x0);

  SUBCASE("inconsistent hybrid states are rejected") {
    search::HybridState bad = x0;
    bad.sigma.attachments["f1"].parent = "stove";  // abstract state still says dish
    search::RTEdge edge;
    edge.kind = search::EdgeKind::Config;
    edge.trajectory = motion::Trajectory{{x0.q, bad.q}, x0.sigma};
    CHECK_THROWS_AS(rt.add_node(bad, 0, edge), std::logic_error);
  }

  SUBCASE("config edges must not change the abstract state") {
    search::HybridState next = x0;
    const auto pick = action_named(gp, "(pick f1 dish)");
    next.s = symbolic::apply(gp, x0.s, pick);
    next.sigma.attachments["f1"] = {"f1", geometry::kRobotName, {0, 0, 0}};
    search::RTEdge edge;
    edge.kind = search::EdgeKind::Config;
    edge.trajectory = motion::Trajectory{{x0.q, next.q}, x0.sigma};
    CHECK_THROWS_AS(rt.add_node(next, 0, edge), std::logic_error);
  }

  SUBCASE("V_s registration requires matching abstract states") {
    search::AbstractReachabilityTree art;
    art.init_root(symbolic::apply(gp, x0.s, action_named(gp, "(pick f1 dish)")), 0.2);
    CHECK_THROWS_AS(search::register_rt_node(art, 0, rt, 0), std::logic_error);
  }
}

TEST_CASE("V_s stays sound across a full solve") {
  const auto inst = domains::build_kitchen(2, 79);
  Planner planner(*inst.ground, inst.scene, inst.initial_state(), inst.goal, quiet_params(83));
  planner.solve();
  const auto& art = planner.art();
  const auto& rt = planner.rt();
  for (size_t n = 0; n < art.size(); ++n) {
    for (const int rt_node : art.node(static_cast<int>(n)).rt_nodes) {
      CHECK(rt.node(rt_node).x.s == art.node(static_cast<int>(n)).s);
      CHECK(search::hybrid_state_consistent(*inst.ground, rt.node(rt_node).x));
    }
    const auto& node = art.node(static_cast<int>(n));
    if (node.n_visit > 0) {
      CHECK(node.value() >= 0.0);
      CHECK(node.value() <= 1.0);
    }
  }
}
