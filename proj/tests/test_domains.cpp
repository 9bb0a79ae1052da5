#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <iostream>

#include "tampkit/domains/benchmarks.hpp"
#include "tampkit/domains/bundle_io.hpp"
#include "tampkit/domains/validate.hpp"
#include "tampkit/geometry/scene_io.hpp"
#include "tampkit/search/solution_io.hpp"

using namespace tampkit;

namespace {

search::SolveOutcome solve_instance(const domains::BenchmarkInstance& inst, uint64_t seed,
                                    double budget = 120.0) {
  search::SearchParams params;
  params.seed = seed;
  params.budget_seconds = budget;
  search::Planner planner(*inst.ground, inst.scene, inst.initial_state(), inst.goal, params);
  return planner.solve();
}

}  // namespace

TEST_CASE("kitchen generator") {
  SUBCASE("m=3 has the expected structure") {
    const auto inst = domains::build_kitchen(3, 7);
    int blocks = 0, regions = 0;
    for (const auto& [id, body] : inst.scene.bodies) {
      (void)id;
      if (body.movable) ++blocks;
      if (body.region) ++regions;
    }
    CHECK(blocks == 3);
    CHECK(regions == 3);  // dish, sink, stove
    CHECK(inst.domain.schemas.size() == 4);
    CHECK(inst.goal.attachments.empty());
    CHECK(inst.goal.atoms.size() == 3);
  }

  SUBCASE("m=1 admits the minimal six-action abstract solution") {
    const auto inst = domains::build_kitchen(1, 3);
    symbolic::PlanOptions bfs;
    bfs.mode = symbolic::SearchMode::BreadthFirst;
    const auto plan = symbolic::task_plan(*inst.ground, inst.ground->initial_state(),
                                          inst.goal.atoms, bfs);
    REQUIRE(plan.found());
    CHECK(plan.plan.size() == 6);
  }

  SUBCASE("m out of range is rejected") {
    CHECK_THROWS_AS(domains::build_kitchen(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(domains::build_kitchen(7, 1), std::invalid_argument);
  }

  SUBCASE("sink holds exactly m blocks") {
    for (int m : {2, 3}) {
      const auto inst = domains::build_kitchen(m, 11);
      CHECK(domains::verify_kitchen_tightness(inst, 101));
    }
  }

  SUBCASE("initial state is collision-free and consistent") {
    const auto inst = domains::build_kitchen(3, 13);
    CHECK(search::hybrid_state_consistent(*inst.ground, inst.initial_state()));
    CHECK(geometry::state_collision_free(inst.scene, inst.initial_mode, inst.q0));
  }
}

TEST_CASE("nonmonotonic generator") {
  SUBCASE("the shortest abstract plan ignores blockers but cannot be realized") {
    const auto inst = domains::build_nonmonotonic(2, 5);
    symbolic::PlanOptions bfs;
    bfs.mode = symbolic::SearchMode::BreadthFirst;
    const auto direct = symbolic::task_plan(*inst.ground, inst.ground->initial_state(),
                                            inst.goal.atoms, bfs);
    REQUIRE(direct.found());
    CHECK(direct.plan.size() == 4);  // two pick-place pairs, blockers untouched
    for (const auto a : direct.plan) {
      const auto& ga = inst.ground->action(a);
      CHECK(inst.ground->object_name(ga.target_movable)[0] == 'b');
    }
    CHECK(domains::verify_nonmonotonic_blocking(inst, 50));
  }

  SUBCASE("the m=1 analog has the same blocking property") {
    const auto inst = domains::build_nonmonotonic(1, 9);
    CHECK(domains::verify_nonmonotonic_blocking(inst, 50));
  }

  SUBCASE("m out of range is rejected") {
    CHECK_THROWS_AS(domains::build_nonmonotonic(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(domains::build_nonmonotonic(4, 1), std::invalid_argument);
  }

  SUBCASE("goal attachments pin each block to its patch") {
    const auto inst = domains::build_nonmonotonic(2, 5);
    CHECK(inst.goal.attachments.size() == 2);
    for (const auto& [atom, att] : inst.goal.attachments) {
      (void)atom;
      CHECK(att.movable[0] == 'b');
      CHECK(att.parent[0] == 'p');
    }
  }
}

TEST_CASE("blocktower generator") {
  SUBCASE("same seed, same instance; different seed, different stacks") {
    const auto a1 = domains::build_blocktower(4, 42);
    const auto a2 = domains::build_blocktower(4, 42);
    CHECK(a1.problem_text == a2.problem_text);
    CHECK(geometry::to_json_string({a1.scene, a1.q0, a1.initial_mode}) ==
          geometry::to_json_string({a2.scene, a2.q0, a2.initial_mode}));
    bool any_differs = false;
    for (uint64_t s = 43; s < 49 && !any_differs; ++s)
      any_differs = domains::build_blocktower(4, s).problem_text != a1.problem_text;
    CHECK(any_differs);
  }

  SUBCASE("goal chain has m attached atoms with goal attachments") {
    const auto inst = domains::build_blocktower(4, 1);
    CHECK(inst.goal.atoms.size() == 4);  // 3 block-on-block + 1 block-on-plate
    CHECK(inst.goal.attachments.size() == 4);
  }

  SUBCASE("m=2 abstractly solvable within ten steps") {
    const auto inst = domains::build_blocktower(2, 17);
    symbolic::PlanOptions bfs;
    bfs.mode = symbolic::SearchMode::BreadthFirst;
    const auto plan = symbolic::task_plan(*inst.ground, inst.ground->initial_state(),
                                          inst.goal.atoms, bfs);
    REQUIRE(plan.found());
    CHECK(plan.plan.size() <= 10);
  }

  SUBCASE("m out of range is rejected") {
    CHECK_THROWS_AS(domains::build_blocktower(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(domains::build_blocktower(7, 1), std::invalid_argument);
  }
}

TEST_CASE("generators are pure functions of (m, seed)") {
  for (const std::string family : {"kitchen", "nonmonotonic", "blocktower"}) {
    const int m = family == "nonmonotonic" ? 2 : 3;
    const auto a = domains::build_instance(family, m, 99);
    const auto b = domains::build_instance(family, m, 99);
    CHECK(a.domain_text == b.domain_text);
    CHECK(a.problem_text == b.problem_text);
    CHECK(geometry::to_json_string({a.scene, a.q0, a.initial_mode}) ==
          geometry::to_json_string({b.scene, b.q0, b.initial_mode}));
  }
}

TEST_CASE("solver results replay through the validator on all domains") {
  SUBCASE("kitchen") {
    const auto inst = domains::build_kitchen(1, 7);
    const auto outcome = solve_instance(inst, 3);
    REQUIRE(outcome.status == search::SolveStatus::Solved);
    const auto file = to_solution_file(*inst.ground, *outcome.solution);
    const auto verdict = domains::validate_solution(inst, file);
    INFO(verdict.violation);
    CHECK(verdict.valid);
  }

  SUBCASE("nonmonotonic") {
    const auto inst = domains::build_nonmonotonic(1, 5);
    const auto outcome = solve_instance(inst, 11);
    REQUIRE(outcome.status == search::SolveStatus::Solved);
    const auto file = to_solution_file(*inst.ground, *outcome.solution);
    const auto verdict = domains::validate_solution(inst, file);
    INFO(verdict.violation);
    CHECK(verdict.valid);
  }

  SUBCASE("blocktower") {
    const auto inst = domains::build_blocktower(2, 9);
    const auto outcome = solve_instance(inst, 2);
    REQUIRE(outcome.status == search::SolveStatus::Solved);
    const auto file = to_solution_file(*inst.ground, *outcome.solution);
    const auto verdict = domains::validate_solution(inst, file);
    INFO(verdict.violation);
    CHECK(verdict.valid);
  }
}

TEST_CASE("validator rejects tampered solutions") {
  const auto inst = domains::build_kitchen(1, 7);
  const auto outcome = solve_instance(inst, 3);
  REQUIRE(outcome.status == search::SolveStatus::Solved);
  const auto file = to_solution_file(*inst.ground, *outcome.solution);
  REQUIRE(domains::validate_solution(inst, file).valid);

  SUBCASE("teleported waypoint trips the step-size check") {
    auto bad = file;
    for (auto& rec : bad.records) {
      if (rec.waypoints.size() >= 2) {
        rec.waypoints[rec.waypoints.size() / 2][0] += 1.0;
        break;
      }
    }
    const auto verdict = domains::validate_solution(inst, bad);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.violation.find("step size") != std::string::npos);
  }

  SUBCASE("perturbing a goal transform by 1e-3 trips the attachment check") {
    // Give the instance a pinned goal placement first.
    auto pinned = inst;
    const auto attached = *pinned.ground->attached_predicate();
    symbolic::ObjectId f1 = 0, stove = 0;
    for (symbolic::ObjectId o = 0; o < pinned.ground->objects().size(); ++o) {
      if (pinned.ground->object_name(o) == "f1") f1 = o;
      if (pinned.ground->object_name(o) == "stove") stove = o;
    }
    auto& mut = const_cast<symbolic::GroundProblem&>(*pinned.ground);
    const auto atom = mut.intern_atom(attached, {f1, stove});
    pinned.goal.atoms.push_back(atom);
    std::sort(pinned.goal.atoms.begin(), pinned.goal.atoms.end());
    const auto& region = *pinned.scene.body("stove").region;
    pinned.goal.attachments[atom] =
        geometry::Attachment{"f1", "stove", geometry::Scene::placement_pose(region, 0.0, 0.035)};
    const auto out2 = solve_instance(pinned, 13);
    REQUIRE(out2.status == search::SolveStatus::Solved);
    auto good = to_solution_file(*pinned.ground, *out2.solution);
    REQUIRE(domains::validate_solution(pinned, good).valid);

    auto bad = pinned;
    bad.goal.attachments[atom].transform.x += 1e-3;
    const auto verdict = domains::validate_solution(bad, good);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.violation.find("transform mismatch") != std::string::npos);
  }
}

TEST_CASE("bundles round-trip through disk") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "tampkit_bundle_test";
  fs::remove_all(dir);
  const auto inst = domains::build_blocktower(3, 21);
  domains::save_bundle(inst, dir.string());
  const auto back = domains::load_bundle(dir.string());
  CHECK(back.name == inst.name);
  CHECK(back.m == inst.m);
  CHECK(back.domain_text == inst.domain_text);
  CHECK(back.goal.atoms == inst.goal.atoms);
  CHECK(back.goal.attachments.size() == inst.goal.attachments.size());
  CHECK(geometry::to_json_string({back.scene, back.q0, back.initial_mode}) ==
        geometry::to_json_string({inst.scene, inst.q0, inst.initial_mode}));

  // A solution for the original instance validates against the loaded one.
  const auto outcome = solve_instance(inst, 2);
  REQUIRE(outcome.status == search::SolveStatus::Solved);
  const auto file = to_solution_file(*inst.ground, *outcome.solution);
  CHECK(domains::validate_solution(back, file).valid);
  fs::remove_all(dir);
}
