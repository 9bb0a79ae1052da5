#include "tampkit/domains/benchmarks.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tampkit/symbolic/parser.hpp"

namespace tampkit::domains {

using geometry::Attachment;
using geometry::Body;
using geometry::Config;
using geometry::Mode;
using geometry::Pose2;
using geometry::Region;
using geometry::Rng;
using geometry::Scene;
using geometry::Shape;

namespace {

constexpr double kClear = Scene::kPlacementClearance;

Body make_block(const std::string& id, double w, double h) {
  Body b;
  b.id = id;
  b.shape = Shape::make_box(w, h);
  b.movable = true;
  b.ports = geometry::grasp_ports(b.shape);
  return b;
}

Body make_platform(const std::string& id, double w, double h, double region_halfwidth) {
  Body b;
  b.id = id;
  b.shape = Shape::make_box(w, h);
  b.movable = false;
  b.region = Region{-region_halfwidth, region_halfwidth, h / 2.0};
  return b;
}

Body make_wall(const std::string& id, double w, double h) {
  Body b;
  b.id = id;
  b.shape = Shape::make_box(w, h);
  b.movable = false;
  return b;
}

// Static bodies rest on their support with the same clearance used for
// placements, so no static pair is in boundary contact.
double resting_y(double support_top, double body_height) {
  return support_top + kClear + body_height / 2.0;
}

Config find_safe_config(const Scene& scene, const Mode& mode) {
  const std::vector<Config> candidates = {
      {0.0, 0.2, -0.2}, {0.15, -0.3, 0.2},  {-0.15, 0.3, -0.2}, {2.2, 0.6, 0.4},
      {-2.2, -0.6, -0.4}, {2.6, 0.3, 0.2},  {-2.6, -0.3, -0.2}, {1.8, 1.2, 0.4},
      {-1.8, -1.2, -0.4}, {3.0, 0.1, 0.1},  {-3.0, -0.1, -0.1}};
  for (const Config& q : candidates) {
    if (geometry::state_collision_free(scene, mode, q)) return q;
  }
  throw std::logic_error("no collision-free initial configuration found");
}

void check_abstract_solvable(const BenchmarkInstance& inst) {
  const auto pr = symbolic::task_plan(*inst.ground, inst.ground->initial_state(),
                                      inst.goal.atoms);
  if (!pr.found())
    throw std::logic_error("generated instance is not abstractly solvable: " + inst.name);
}

symbolic::ObjectId object_id(const symbolic::GroundProblem& gp, const std::string& name) {
  for (symbolic::ObjectId o = 0; o < gp.objects().size(); ++o)
    if (gp.object_name(o) == name) return o;
  throw std::logic_error("unknown object " + name);
}

void finish_instance(BenchmarkInstance& inst) {
  inst.domain = symbolic::parse_domain(inst.domain_text);
  inst.problem = symbolic::parse_problem(inst.problem_text, inst.domain);
  inst.ground = std::make_shared<symbolic::GroundProblem>(inst.domain, inst.problem);
  inst.goal.atoms = inst.ground->goal_atoms();
  inst.q0 = find_safe_config(inst.scene, inst.initial_mode);
}

}  // namespace

BenchmarkInstance build_kitchen(int m, uint64_t seed) {
  if (m < 1 || m > 6) throw std::invalid_argument("kitchen: m must be in [1, 6]");
  BenchmarkInstance inst;
  inst.family = "kitchen";
  inst.m = m;
  inst.seed = seed;
  inst.name = "kitchen-" + std::to_string(m) + "-s" + std::to_string(seed);
  Rng rng(seed ^ 0x6b697463u);

  const double w = std::min(0.07, 0.30 / m);  // block side
  const double tightness = 0.10;              // free margin on sink/stove
  const double dish_region = m * w * 1.8 / 2.0;
  const double tight_region = (1.0 + tightness) * m * w / 2.0;
  const double gap = 0.05;

  std::ostringstream d;
  d << "(define (domain kitchen)\n"
       "  (:requirements :strips :typing :negative-preconditions)\n"
       "  (:types movable surface robot - object)\n"
       "  (:constants arm - robot dish sink stove - surface)\n"
       "  (:predicates (attached ?m - movable ?p - object) (handempty)\n"
       "               (washed ?m - movable) (cooked ?m - movable))\n"
       "  (:action pick\n"
       "    :parameters (?m - movable ?p - surface)\n"
       "    :precondition (and (attached ?m ?p) (handempty))\n"
       "    :effect (and (attached ?m arm) (not (attached ?m ?p)) (not (handempty))))\n"
       "  (:action place\n"
       "    :parameters (?m - movable ?p - surface)\n"
       "    :precondition (and (attached ?m arm))\n"
       "    :effect (and (attached ?m ?p) (handempty) (not (attached ?m arm))))\n"
       "  (:action wash\n"
       "    :parameters (?m - movable)\n"
       "    :precondition (and (attached ?m sink) (not (washed ?m)))\n"
       "    :effect (and (washed ?m)))\n"
       "  (:action cook\n"
       "    :parameters (?m - movable)\n"
       "    :precondition (and (attached ?m stove) (washed ?m) (not (cooked ?m)))\n"
       "    :effect (and (cooked ?m))))\n";
  inst.domain_text = d.str();

  std::ostringstream p;
  p << "(define (problem " << inst.name << ")\n  (:domain kitchen)\n  (:objects";
  for (int i = 1; i <= m; ++i) p << " f" << i;
  p << " - movable)\n  (:init (handempty)";
  for (int i = 1; i <= m; ++i) p << " (attached f" << i << " dish)";
  p << ")\n  (:goal (and";
  for (int i = 1; i <= m; ++i) p << " (cooked f" << i << ")";
  p << ")))\n";
  inst.problem_text = p.str();

  Scene& scene = inst.scene;
  scene.arm.base = {0.0, m <= 4 ? 0.72 : 0.60, -std::numbers::pi / 2.0};

  const double dish_w = 2.0 * dish_region + 0.02;
  const double tight_w = 2.0 * tight_region + 0.02;
  const double table_w = dish_w + 2.0 * tight_w + 2.0 * gap + 0.10;
  Body table = make_wall("table", table_w, 0.06);
  scene.bodies["table"] = table;
  scene.static_poses["table"] = {0.0, -0.03, 0.0};

  const double row_left = -(dish_w + 2.0 * tight_w + 2.0 * gap) / 2.0;
  const double dish_x = row_left + dish_w / 2.0;
  const double sink_x = row_left + dish_w + gap + tight_w / 2.0;
  const double stove_x = row_left + dish_w + tight_w + 2.0 * gap + tight_w / 2.0;
  const double platform_h = 0.03;
  const double platform_y = resting_y(0.0, platform_h);
  scene.bodies["dish"] = make_platform("dish", dish_w, platform_h, dish_region);
  scene.bodies["sink"] = make_platform("sink", tight_w, platform_h, tight_region);
  scene.bodies["stove"] = make_platform("stove", tight_w, platform_h, tight_region);
  scene.static_poses["dish"] = {dish_x, platform_y, 0.0};
  scene.static_poses["sink"] = {sink_x, platform_y, 0.0};
  scene.static_poses["stove"] = {stove_x, platform_y, 0.0};

  // Food blocks spread on the dish with a seeded jitter.
  for (int i = 1; i <= m; ++i) {
    const std::string id = "f" + std::to_string(i);
    scene.bodies[id] = make_block(id, w, w);
    const double usable = 2.0 * dish_region - w;
    const double base_x = m == 1 ? 0.0 : -usable / 2.0 + usable * (i - 1) / (m - 1);
    const double jitter = m == 1 ? 0.0 : geometry::uniform_in(rng, -0.2, 0.2) * (usable / m - w) / 2.0;
    inst.initial_mode.attachments[id] =
        Attachment{id, "dish", {base_x + jitter, platform_h / 2.0 + kClear + w / 2.0, 0.0}};
  }

  finish_instance(inst);
  check_abstract_solvable(inst);
  return inst;
}

BenchmarkInstance build_nonmonotonic(int m, uint64_t seed) {
  if (m < 1 || m > 3) throw std::invalid_argument("nonmonotonic: m must be in [1, 3]");
  BenchmarkInstance inst;
  inst.family = "nonmonotonic";
  inst.m = m;
  inst.seed = seed;
  inst.name = "nonmonotonic-" + std::to_string(m) + "-s" + std::to_string(seed);

  std::ostringstream d;
  d << "(define (domain nonmonotonic)\n"
       "  (:requirements :strips :typing)\n"
       "  (:types placeable robot - object movable surface - placeable)\n"
       "  (:constants arm - robot)\n"
       "  (:predicates (attached ?m - movable ?p - object) (handempty))\n"
       "  (:action pick\n"
       "    :parameters (?m - movable ?p - placeable)\n"
       "    :precondition (and (attached ?m ?p) (handempty))\n"
       "    :effect (and (attached ?m arm) (not (attached ?m ?p)) (not (handempty))))\n"
       "  (:action place\n"
       "    :parameters (?m - movable ?p - placeable)\n"
       "    :precondition (and (attached ?m arm))\n"
       "    :effect (and (attached ?m ?p) (handempty) (not (attached ?m arm)))))\n";
  inst.domain_text = d.str();

  std::ostringstream p;
  p << "(define (problem " << inst.name << ")\n  (:domain nonmonotonic)\n  (:objects";
  for (int i = 1; i <= m; ++i) p << " b" << i << " k" << i;
  p << " - movable shelf table";
  for (int i = 1; i <= m; ++i) p << " p" << i;
  p << " ledge_l1 ledge_l2 ledge_l3 ledge_r1 ledge_r2 ledge_r3"
       " slot1 slot2 slot3 slot4 - surface)\n  (:init (handempty)";
  for (int i = 1; i <= m; ++i)
    p << " (attached b" << i << " table) (attached k" << i << " b" << i << ")";
  p << ")\n  (:goal (and";
  for (int i = 1; i <= m; ++i) p << " (attached b" << i << " p" << i << ")";
  p << ")))\n";
  inst.problem_text = p.str();

  const double w = 0.07;        // colored block side
  const double kh = 0.09;       // blocker height
  const double wall_h = 0.12;
  const double wall_w = 0.02;
  const double pocket_halfgap = 0.06;

  Scene& scene = inst.scene;
  scene.arm.base = {0.0, 0.66, -std::numbers::pi / 2.0};

  // Parking is scarce: a strip of table between the pockets and the
  // patches comfortably fits one blocker, and the shelf one more (two for
  // m=3). Most other parking choices fail geometrically, so the planner
  // has to discover which abstract plans are worth refining.
  Body table = make_platform("table", 2.60, 0.06, 0.0);
  table.region = Region{-0.16, -0.03, 0.03};
  scene.bodies["table"] = table;
  scene.static_poses["table"] = {0.0, -0.03, 0.0};
  const double shelf_region = m >= 3 ? 0.0825 : 0.0425;
  const double shelf_x = 0.20 + 0.14 * m;
  scene.bodies["shelf"] = make_platform("shelf", 2.0 * shelf_region + 0.02, 0.02, shelf_region);
  scene.static_poses["shelf"] = {shelf_x, resting_y(0.0, 0.02), 0.0};
  // Distractor surfaces: syntactically fine parking spots the geometry can
  // never realize. The ledges sit beyond the wrist's reach and the slots
  // are too narrow for any block footprint.
  for (int side : {-1, 1}) {
    for (int j = 1; j <= 3; ++j) {
      const std::string id = (side < 0 ? "ledge_l" : "ledge_r") + std::to_string(j);
      scene.bodies[id] = make_platform(id, 0.12, 0.02, 0.05);
      scene.static_poses[id] = {side * (0.82 + 0.15 * (j - 1)), resting_y(0.0, 0.02), 0.0};
    }
  }
  const double slot_x[4] = {-0.36, 0.60, 0.66, 0.72};
  for (int j = 1; j <= 4; ++j) {
    const std::string id = "slot" + std::to_string(j);
    scene.bodies[id] = make_platform(id, 0.03, 0.015, 0.012);
    scene.static_poses[id] = {slot_x[j - 1], resting_y(0.0, 0.015), 0.0};
  }
  // A ceiling with a narrow mouth over the middle of the workspace: every
  // approach to the table has to thread it, so each motion query does real
  // work. Mirrors how cluttered manipulation scenes price every reach.
  scene.bodies["ceiling_l"] = make_wall("ceiling_l", 1.11, 0.03);
  scene.bodies["ceiling_r"] = make_wall("ceiling_r", 1.11, 0.03);
  scene.static_poses["ceiling_l"] = {-0.695, 0.40, 0.0};
  scene.static_poses["ceiling_r"] = {0.695, 0.40, 0.0};


  const double block_y = resting_y(0.0, w);
  for (int i = 1; i <= m; ++i) {
    const double pocket_x = -0.26 - 0.20 * (i - 1);
    const std::string bi = "b" + std::to_string(i);
    const std::string ki = "k" + std::to_string(i);
    Body block = make_block(bi, w, w);
    block.region = Region{-0.005, 0.005, w / 2.0};  // blocks can be re-stacked
    scene.bodies[bi] = block;
    Body blocker = make_block(ki, w, kh);
    blocker.region = Region{-0.005, 0.005, kh / 2.0};
    scene.bodies[ki] = blocker;
    // Pocket walls flank the colored block.
    for (int side : {-1, 1}) {
      const std::string wid = "wall" + std::to_string(i) + (side < 0 ? "l" : "r");
      scene.bodies[wid] = make_wall(wid, wall_w, wall_h);
      scene.static_poses[wid] = {pocket_x + side * (pocket_halfgap + wall_w / 2.0),
                                 resting_y(0.0, wall_h), 0.0};
    }
    inst.initial_mode.attachments[bi] =
        Attachment{bi, "table", {pocket_x, 0.03 + kClear + w / 2.0, 0.0}};
    inst.initial_mode.attachments[ki] =
        Attachment{ki, bi, {0.0, w / 2.0 + kClear + kh / 2.0, 0.0}};

    // Colored floor patch, sized just over the block.
    const std::string pi_name = "p" + std::to_string(i);
    const double patch_x = 0.20 + 0.14 * (i - 1);
    scene.bodies[pi_name] = make_platform(pi_name, w * 1.15 + 0.02, 0.01, w * 1.15 / 2.0);
    scene.static_poses[pi_name] = {patch_x, resting_y(0.0, 0.01), 0.0};
  }

  finish_instance(inst);
  // Goal attachments: each colored block centered on its patch.
  for (int i = 1; i <= m; ++i) {
    const std::string bi = "b" + std::to_string(i);
    const std::string pi_name = "p" + std::to_string(i);
    const auto atom = inst.ground->find_atom(
        *inst.ground->attached_predicate(),
        {object_id(*inst.ground, bi), object_id(*inst.ground, pi_name)});
    inst.goal.attachments[*atom] =
        Attachment{bi, pi_name, {0.0, 0.005 + kClear + w / 2.0, 0.0}};
  }
  check_abstract_solvable(inst);
  return inst;
}

BenchmarkInstance build_blocktower(int m, uint64_t seed) {
  if (m < 2 || m > 6) throw std::invalid_argument("blocktower: m must be in [2, 6]");
  BenchmarkInstance inst;
  inst.family = "blocktower";
  inst.m = m;
  inst.seed = seed;
  inst.name = "blocktower-" + std::to_string(m) + "-s" + std::to_string(seed);
  Rng rng(seed ^ 0x626c6b74u);

  std::ostringstream d;
  d << "(define (domain blocktower)\n"
       "  (:requirements :strips :typing)\n"
       "  (:types movable surface robot - object)\n"
       "  (:constants arm - robot)\n"
       "  (:predicates (attached ?m - movable ?p - object) (clear ?x - object) (handempty))\n"
       "  (:action pick\n"
       "    :parameters (?m - movable ?p - surface)\n"
       "    :precondition (and (attached ?m ?p) (clear ?m) (handempty))\n"
       "    :effect (and (attached ?m arm) (not (attached ?m ?p)) (not (handempty))\n"
       "                 (not (clear ?m))))\n"
       "  (:action place\n"
       "    :parameters (?m - movable ?p - surface)\n"
       "    :precondition (and (attached ?m arm))\n"
       "    :effect (and (attached ?m ?p) (handempty) (clear ?m) (not (attached ?m arm))))\n"
       "  (:action unstack\n"
       "    :parameters (?m - movable ?b - movable)\n"
       "    :precondition (and (attached ?m ?b) (clear ?m) (handempty))\n"
       "    :effect (and (attached ?m arm) (clear ?b) (not (attached ?m ?b))\n"
       "                 (not (handempty)) (not (clear ?m))))\n"
       "  (:action stack\n"
       "    :parameters (?m - movable ?b - movable)\n"
       "    :precondition (and (attached ?m arm) (clear ?b))\n"
       "    :effect (and (attached ?m ?b) (handempty) (clear ?m) (not (clear ?b))\n"
       "                 (not (attached ?m arm)))))\n";
  inst.domain_text = d.str();

  // Seeded random initial stacks on the side plates.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 1);
  for (int i = m - 1; i > 0; --i) {
    const int j = static_cast<int>(rng() % (i + 1));
    std::swap(order[i], order[j]);
  }
  const int left_count = 1 + static_cast<int>(rng() % (m - 1));
  std::vector<int> left(order.begin(), order.begin() + left_count);
  std::vector<int> right(order.begin() + left_count, order.end());

  std::ostringstream p;
  p << "(define (problem " << inst.name << ")\n  (:domain blocktower)\n  (:objects";
  for (int i = 1; i <= m; ++i) p << " b" << i;
  p << " - movable plate_l plate_c plate_r - surface)\n  (:init (handempty)";
  const auto emit_stack = [&p](const std::vector<int>& stack, const std::string& plate) {
    for (size_t j = 0; j < stack.size(); ++j) {
      if (j == 0)
        p << " (attached b" << stack[j] << " " << plate << ")";
      else
        p << " (attached b" << stack[j] << " b" << stack[j - 1] << ")";
    }
    if (!stack.empty()) p << " (clear b" << stack.back() << ")";
  };
  emit_stack(left, "plate_l");
  emit_stack(right, "plate_r");
  p << ")\n  (:goal (and (attached b" << m << " plate_c)";
  for (int i = 1; i < m; ++i) p << " (attached b" << i << " b" << i + 1 << ")";
  p << ")))\n";
  inst.problem_text = p.str();

  const double w = 0.07;
  Scene& scene = inst.scene;
  scene.arm.base = {0.0, 0.80, -std::numbers::pi / 2.0};

  Body table = make_wall("table", 1.30, 0.06);
  scene.bodies["table"] = table;
  scene.static_poses["table"] = {0.0, -0.03, 0.0};

  const double plate_h = 0.03;
  const double plate_y = resting_y(0.0, plate_h);
  scene.bodies["plate_l"] = make_platform("plate_l", 0.26, plate_h, 0.12);
  scene.bodies["plate_r"] = make_platform("plate_r", 0.26, plate_h, 0.12);
  scene.bodies["plate_c"] = make_platform("plate_c", w * 1.15 + 0.02, plate_h, w * 1.15 / 2.0);
  scene.static_poses["plate_l"] = {-0.40, plate_y, 0.0};
  scene.static_poses["plate_r"] = {0.40, plate_y, 0.0};
  scene.static_poses["plate_c"] = {0.0, plate_y, 0.0};

  for (int i = 1; i <= m; ++i) {
    const std::string id = "b" + std::to_string(i);
    Body b = make_block(id, w, w);
    b.region = Region{-0.005, 0.005, w / 2.0};  // near-centered stacking
    scene.bodies[id] = b;
  }
  const auto attach_stack = [&](const std::vector<int>& stack, const std::string& plate,
                                double jitter) {
    for (size_t j = 0; j < stack.size(); ++j) {
      const std::string id = "b" + std::to_string(stack[j]);
      if (j == 0) {
        inst.initial_mode.attachments[id] =
            Attachment{id, plate, {jitter, plate_h / 2.0 + kClear + w / 2.0, 0.0}};
      } else {
        const std::string below = "b" + std::to_string(stack[j - 1]);
        inst.initial_mode.attachments[id] =
            Attachment{id, below, {0.0, w + kClear, 0.0}};
      }
    }
  };
  attach_stack(left, "plate_l", geometry::uniform_in(rng, -0.03, 0.03));
  attach_stack(right, "plate_r", geometry::uniform_in(rng, -0.03, 0.03));

  finish_instance(inst);
  // Goal attachments: the tower chain, all centered.
  const auto attached = *inst.ground->attached_predicate();
  const auto bottom_atom = inst.ground->find_atom(
      attached, {object_id(*inst.ground, "b" + std::to_string(m)),
                 object_id(*inst.ground, "plate_c")});
  inst.goal.attachments[*bottom_atom] =
      Attachment{"b" + std::to_string(m), "plate_c", {0.0, plate_h / 2.0 + kClear + w / 2.0, 0.0}};
  for (int i = 1; i < m; ++i) {
    const std::string upper = "b" + std::to_string(i);
    const std::string lower = "b" + std::to_string(i + 1);
    const auto atom = inst.ground->find_atom(
        attached, {object_id(*inst.ground, upper), object_id(*inst.ground, lower)});
    inst.goal.attachments[*atom] = Attachment{upper, lower, {0.0, w + kClear, 0.0}};
  }
  check_abstract_solvable(inst);
  return inst;
}

BenchmarkInstance build_instance(const std::string& family, int m, uint64_t seed) {
  if (family == "kitchen") return build_kitchen(m, seed);
  if (family == "nonmonotonic" || family == "nonmon") return build_nonmonotonic(m, seed);
  if (family == "blocktower") return build_blocktower(m, seed);
  throw std::invalid_argument("unknown domain family: " + family);
}

bool verify_kitchen_tightness(const BenchmarkInstance& instance, uint64_t seed) {
  if (instance.family != "kitchen") throw std::invalid_argument("not a kitchen instance");
  Rng rng(seed);
  const geometry::Body& sink = instance.scene.body("sink");
  const Pose2 sink_pose = instance.scene.static_poses.at("sink");
  const geometry::Body& block = instance.scene.body("f1");
  const auto box = geometry::local_aabb(block.shape);
  const double x_lo = sink.region->x_lo - box.xmin;
  const double x_hi = sink.region->x_hi - box.xmax;
  const double y = sink.region->y_surface - box.ymin + kClear;

  // Pack m blocks by rejection sampling (with restarts; sequential packing
  // can wedge itself), then try one more.
  std::vector<Pose2> placed;
  for (int restart = 0; restart < 100 && placed.size() < static_cast<size_t>(instance.m);
       ++restart) {
    placed.clear();
    for (int i = 0; i < instance.m; ++i) {
      bool ok = false;
      for (int t = 0; t < 200 && !ok; ++t) {
        const Pose2 world = sink_pose * Pose2{geometry::uniform_in(rng, x_lo, x_hi), y, 0.0};
        bool hit = false;
        for (const auto& other : placed)
          if (geometry::collide(block.shape, world, block.shape, other)) hit = true;
        if (!hit) {
          placed.push_back(world);
          ok = true;
        }
      }
      if (!ok) break;
    }
  }
  if (placed.size() < static_cast<size_t>(instance.m)) return false;
  for (int t = 0; t < 200; ++t) {
    const Pose2 world = sink_pose * Pose2{geometry::uniform_in(rng, x_lo, x_hi), y, 0.0};
    bool hit = false;
    for (const auto& other : placed)
      if (geometry::collide(block.shape, world, block.shape, other)) hit = true;
    if (!hit) return false;  // found room for an (m+1)-th block
  }
  return true;
}

bool verify_nonmonotonic_blocking(const BenchmarkInstance& instance, int attempts) {
  if (instance.family != "nonmonotonic") throw std::invalid_argument("not a nonmonotonic instance");
  // The blocker-ignoring plan: what the symbolic planner proposes from the
  // initial state (it has no reason to touch the blockers).
  const auto direct = symbolic::task_plan(*instance.ground, instance.ground->initial_state(),
                                          instance.goal.atoms);
  if (!direct.found()) return false;
  for (symbolic::GroundActionId a : direct.plan) {
    const auto& ga = instance.ground->action(a);
    if (instance.ground->object_name(ga.target_movable)[0] == 'k') return false;  // moves a blocker
  }
  for (int attempt = 0; attempt < attempts; ++attempt) {
    search::SearchParams params;
    params.seed = 0x9000 + attempt;
    params.budget_seconds = 1e9;  // a single pass; no budget pressure
    search::Planner planner(*instance.ground, instance.scene, instance.initial_state(),
                            instance.goal, params);
    search::Planner::SampledSequence seq;
    seq.pi = direct.plan;
    seq.node_seq = planner.extend_tree(planner.art().root(), direct.plan);
    planner.ss_layer(seq);
    if (planner.rt().solution()) return false;
  }
  return true;
}

}  // namespace tampkit::domains
