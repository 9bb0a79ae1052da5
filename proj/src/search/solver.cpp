#include "tampkit/search/solver.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

namespace tampkit::search {

using geometry::Config;
using geometry::inverse;
using geometry::Mode;
using geometry::Pose2;
using geometry::uniform01;
using geometry::wrap_angle;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

size_t pick_index(geometry::Rng& rng, size_t n) { return static_cast<size_t>(rng() % n); }

}  // namespace

bool goal_atoms_satisfied(const symbolic::AbstractState& s, const GoalSpec& goal) {
  return s.contains_all(goal.atoms);
}

Planner::Planner(const symbolic::GroundProblem& gp, const Scene& scene, HybridState x_initial,
                 GoalSpec goal, SearchParams params)
    : gp_(&gp),
      scene_(&scene),
      x_initial_(std::move(x_initial)),
      goal_(std::move(goal)),
      params_(std::move(params)),
      rng_(params_.seed),
      rt_(gp) {
  if (!goal_.well_formed())
    throw std::invalid_argument("goal attachments must reference goal atoms");
  std::sort(goal_.atoms.begin(), goal_.atoms.end());
  for (const auto& ga : gp.actions()) {
    if (ga.geometric && !ga.has_target)
      throw std::invalid_argument("geometric action without a unique attached effect: " +
                                  ga.display);
  }
  const int rt_root = rt_.add_root(x_initial_);
  art_.init_root(x_initial_.s, params_.terminate_prob);
  register_rt_node(art_, art_.root(), rt_, rt_root);
}

bool Planner::budget_exhausted() const {
  return stats_.virtual_cost(params_) >= params_.budget_seconds;
}

std::vector<symbolic::GroundActionId> Planner::applicable_walk_actions(int art_node) {
  std::vector<symbolic::GroundActionId> acts;
  const symbolic::AbstractState& s = art_.node(art_node).s;
  for (symbolic::GroundActionId a = 0; a < gp_->actions().size(); ++a) {
    if (!symbolic::applicable(*gp_, s, a)) continue;
    if (symbolic::apply(*gp_, s, a) == s) continue;  // no-op at this state
    if (const auto child = art_.child_for_action(art_node, a);
        child && art_.node(*child).dead)
      continue;
    acts.push_back(a);
  }
  return acts;
}

Planner::WalkResult Planner::randomized_tree_search() {
  WalkResult out;
  int node = art_.root();
  out.node_seq.push_back(node);
  while (true) {
    if (uniform01(rng_) < art_.node(node).terminate_prob) break;
    std::vector<int> kids;
    for (int c : art_.node(node).children)
      if (!art_.node(c).dead) kids.push_back(c);
    if (kids.empty()) break;  // leaf: the symbolic planner takes over from here

    int next = -1;
    if (uniform01(rng_) < params_.epsilon) {
      // Exploration ranges over every applicable action, materializing
      // children the planner never proposed (the walk is the only way
      // off the planner-built skeleton).
      const auto acts = applicable_walk_actions(node);
      if (acts.empty()) break;
      const symbolic::GroundActionId a = acts[pick_index(rng_, acts.size())];
      if (const auto existing = art_.child_for_action(node, a)) {
        next = *existing;
      } else {
        next = art_.add_child(node, a, symbolic::apply(*gp_, art_.node(node).s, a));
      }
    } else {
      // In the no-reward ablation every node's value is identically zero,
      // so the argmax degenerates to a uniform choice. Otherwise a child
      // that has never produced a reward inherits its nearest visited
      // ancestor's value as a prior, so novelty rides the quality of the
      // path it extends instead of dominating it.
      const bool ablated = params_.reward_mode == SearchParams::RewardMode::NoReward;
      const auto selection_value = [&](int c) {
        if (ablated) return 0.0;
        int probe = c;
        while (art_.node(probe).n_visit == 0 && art_.node(probe).parent >= 0)
          probe = art_.node(probe).parent;
        return art_.node(probe).value();
      };
      double best = -1.0;
      std::vector<int> best_kids;
      for (int c : kids) {
        const double v = selection_value(c);
        if (v > best) {
          best = v;
          best_kids = {c};
        } else if (v == best) {
          best_kids.push_back(c);
        }
      }
      next = best_kids[pick_index(rng_, best_kids.size())];
    }
    out.pi_rand.push_back(*art_.node(next).edge_action);
    out.node_seq.push_back(next);
    node = next;
  }
  out.n_last = node;
  return out;
}

std::vector<int> Planner::extend_tree(int node, const std::vector<symbolic::GroundActionId>& plan) {
  std::vector<int> seq{node};
  int cur = node;
  for (symbolic::GroundActionId a : plan) {
    if (const auto existing = art_.child_for_action(cur, a)) {
      cur = *existing;
    } else {
      cur = art_.add_child(cur, a, symbolic::apply(*gp_, art_.node(cur).s, a));
    }
    seq.push_back(cur);
  }
  return seq;
}

std::optional<Planner::SampledSequence> Planner::sample_action_seq() {
  const WalkResult walk = randomized_tree_search();
  const double t0 = now_seconds();
  ++stats_.task_plan_calls;
  symbolic::PlanOptions plan_options = params_.plan_options;
  plan_options.randomize_ties = true;
  plan_options.tie_break_seed = rng_();
  const symbolic::PlanResult pr =
      symbolic::task_plan(*gp_, art_.node(walk.n_last).s, goal_.atoms, plan_options);
  stats_.task_plan_expansions += pr.expansions;
  stats_.symbolic_seconds += now_seconds() - t0;
  if (!pr.found()) {
    if (pr.status == symbolic::PlanStatus::ProvenUnreachable)
      art_.node(walk.n_last).dead = true;
    return std::nullopt;
  }
  const std::vector<int> extension = extend_tree(walk.n_last, pr.plan);

  SampledSequence seq;
  seq.pi = walk.pi_rand;
  seq.pi.insert(seq.pi.end(), pr.plan.begin(), pr.plan.end());
  seq.node_seq = walk.node_seq;
  seq.node_seq.insert(seq.node_seq.end(), extension.begin() + 1, extension.end());
  return seq;
}

std::optional<Attachment> Planner::sample_grasp(const geometry::Body& body,
                                                const std::optional<Pose2>& world_pose_at_pick,
                                                const Mode* mode_at_pick) {
  // Ports approaching from below are excluded outright (the support blocks
  // them). When the movable's pose at pick time is known, ports whose
  // end-effector pose the wrist cannot reach are dropped, and the distal
  // link's capsule is screened against everything else in the scene at its
  // pose implied by the port. Both tests are closed-form; the screen keeps
  // batches from committing to approaches that every IK draw would reject.
  const double distal = scene_->arm.link_lengths[2];
  const geometry::Shape distal_shape = scene_->arm.link_shape(2);
  std::vector<const Pose2*> usable;
  for (const auto& port : body.ports) {
    if (std::abs(wrap_angle(port.theta - std::numbers::pi / 2)) < std::numbers::pi / 4)
      continue;
    if (world_pose_at_pick) {
      const Pose2 ee = *world_pose_at_pick * port;
      if (!geometry::ee_pose_reachable(scene_->arm, ee)) continue;
      if (mode_at_pick) {
        const Pose2 link_pose{ee.x - distal * std::cos(ee.theta),
                              ee.y - distal * std::sin(ee.theta), ee.theta};
        bool hit = false;
        for (const auto& [id, other] : scene_->bodies) {
          if (id == body.id) continue;
          const auto pose = geometry::static_world_pose(*mode_at_pick, *scene_, id);
          if (!pose) continue;
          if (geometry::collide(distal_shape, link_pose, other.shape, *pose)) {
            hit = true;
            break;
          }
        }
        if (hit) continue;
      }
    }
    usable.push_back(&port);
  }
  if (usable.empty()) {
    for (const auto& port : body.ports) {
      if (std::abs(wrap_angle(port.theta - std::numbers::pi / 2)) < std::numbers::pi / 4)
        continue;
      usable.push_back(&port);
    }
  }
  if (usable.empty())
    for (const auto& port : body.ports) usable.push_back(&port);
  if (usable.empty()) return std::nullopt;
  const Pose2& port = *usable[pick_index(rng_, usable.size())];
  return Attachment{body.id, geometry::kRobotName, inverse(port)};
}

std::optional<Attachment> Planner::sample_attachment(const symbolic::GroundAction& action) {
  const std::string& m_name = gp_->object_name(action.target_movable);
  const std::string& p_name = gp_->object_name(action.new_parent);
  const geometry::Body& m_body = scene_->body(m_name);

  if (p_name == geometry::kRobotName) return sample_grasp(m_body, std::nullopt, nullptr);

  const geometry::Body& p_body = scene_->body(p_name);
  if (!p_body.region) return std::nullopt;
  const geometry::Aabb box = geometry::local_aabb(m_body.shape);
  const double x_lo = p_body.region->x_lo - box.xmin;
  const double x_hi = p_body.region->x_hi - box.xmax;
  if (x_hi < x_lo) return std::nullopt;
  const double y = p_body.region->y_surface - box.ymin + Scene::kPlacementClearance;
  for (int t = 0; t < params_.attachment_attempts; ++t) {
    const Pose2 rel{geometry::uniform_in(rng_, x_lo, x_hi), y, 0.0};
    if (p_body.movable) return Attachment{m_name, p_name, rel};
    // Static parent: reject placements colliding with other static bodies.
    const Pose2 world = scene_->static_poses.at(p_name) * rel;
    bool hit = false;
    for (const auto& [id, b] : scene_->bodies) {
      if (b.movable || id == p_name) continue;
      if (geometry::collide(m_body.shape, world, b.shape, scene_->static_poses.at(id))) {
        hit = true;
        break;
      }
    }
    if (!hit) return Attachment{m_name, p_name, rel};
  }
  return std::nullopt;
}

std::optional<std::vector<std::optional<Attachment>>> Planner::sample_batch_attachments(
    const std::vector<symbolic::GroundActionId>& pi) {
  std::vector<std::optional<Attachment>> alpha(pi.size());
  std::vector<bool> pending_grasp(pi.size(), false);
  std::set<symbolic::ObjectId> m_goal;
  for (const auto& [name, body] : scene_->bodies) {
    if (!body.movable) continue;
    for (symbolic::ObjectId o = 0; o < gp_->objects().size(); ++o)
      if (gp_->object_name(o) == name) m_goal.insert(o);
  }
  // Reverse scan: assign goal attachments to goal-making actions, sample
  // placements; grasps wait for the forward pass where the pose at pick
  // time is known.
  for (int i = static_cast<int>(pi.size()) - 1; i >= 0; --i) {
    const auto& ga = gp_->action(pi[i]);
    if (!ga.geometric) continue;  // non-geometric actions need no attachment
    if (m_goal.count(ga.target_movable) && goal_.attachments.count(ga.added_attached)) {
      alpha[i] = goal_.attachments.at(ga.added_attached);
    } else if (gp_->object_name(ga.new_parent) == geometry::kRobotName) {
      pending_grasp[i] = true;
    } else {
      const auto sampled = sample_attachment(ga);
      if (!sampled) return std::nullopt;
      alpha[i] = *sampled;
    }
    m_goal.erase(ga.target_movable);
  }
  // Forward pass over the folded mode sequence.
  Mode mode = x_initial_.sigma;
  for (size_t i = 0; i < pi.size(); ++i) {
    const auto& ga = gp_->action(pi[i]);
    if (!ga.geometric) continue;
    if (pending_grasp[i]) {
      const std::string& m_name = gp_->object_name(ga.target_movable);
      const auto pose_at_pick = geometry::static_world_pose(mode, *scene_, m_name);
      const auto grasp = sample_grasp(scene_->body(m_name), pose_at_pick, &mode);
      if (!grasp) return std::nullopt;
      alpha[i] = *grasp;
    }
    if (!alpha[i].has_value())
      throw std::logic_error("geometric action without batch attachment");
    mode = geometry::make_next_mode(mode, *alpha[i]);
  }
  return alpha;
}

std::optional<HybridState> Planner::make_goal_candidate(
    const std::vector<std::optional<Attachment>>& alpha,
    const std::vector<symbolic::GroundActionId>& pi, bool check_collision) {
  symbolic::AbstractState s = x_initial_.s;
  for (symbolic::GroundActionId a : pi) s = symbolic::apply(*gp_, s, a);
  Mode sigma = x_initial_.sigma;
  for (const auto& att : alpha)
    if (att) sigma = geometry::make_next_mode(sigma, *att);

  if (!check_collision) {
    const Config q =
        goal_.config ? *goal_.config : geometry::random_config(scene_->arm, rng_);
    return HybridState{std::move(s), std::move(sigma), q};
  }

  const geometry::ModeChecker checker(*scene_, sigma);
  if (goal_.config) {
    if (!checker.config_free(*goal_.config, &stats_.collision_checks)) return std::nullopt;
    return HybridState{std::move(s), std::move(sigma), *goal_.config};
  }
  if (!checker.static_part_free()) {
    ++stats_.collision_checks;
    return std::nullopt;
  }
  for (int t = 0; t < params_.goal_config_attempts; ++t) {
    const Config q = geometry::random_config(scene_->arm, rng_);
    if (checker.config_free(q, &stats_.collision_checks))
      return HybridState{std::move(s), std::move(sigma), q};
  }
  return std::nullopt;
}

std::optional<Config> Planner::sample_transition(const Mode& sigma, const Mode& sigma_next) {
  if (sigma.attachments.size() != sigma_next.attachments.size())
    throw std::invalid_argument("sample_transition: modes over different movables");
  const Attachment* before = nullptr;
  const Attachment* after = nullptr;
  int diffs = 0;
  for (const auto& [m, att] : sigma.attachments) {
    const auto it = sigma_next.attachments.find(m);
    if (it == sigma_next.attachments.end())
      throw std::invalid_argument("sample_transition: modes over different movables");
    if (!geometry::exactly_equal(att, it->second)) {
      ++diffs;
      before = &att;
      after = &it->second;
    }
  }
  if (diffs != 1)
    throw std::invalid_argument("sample_transition: modes must differ in exactly one attachment");

  // The side on which the movable is placed pins its world pose; the grasp
  // side pins the end effector relative to it.
  Pose2 movable_world;
  Pose2 grasp_tf;
  if (after->is_grasp() && !before->is_grasp()) {  // pick
    const auto wp = geometry::static_world_pose(sigma, *scene_, after->movable);
    if (!wp) return std::nullopt;
    movable_world = *wp;
    grasp_tf = after->transform;
  } else if (before->is_grasp() && !after->is_grasp()) {  // place
    const auto wp = geometry::static_world_pose(sigma_next, *scene_, after->movable);
    if (!wp) return std::nullopt;
    movable_world = *wp;
    grasp_tf = before->transform;
  } else {
    return std::nullopt;  // not realizable by a single robot transition
  }
  const Pose2 ee_target = movable_world * inverse(grasp_tf);

  const geometry::ModeChecker check_before(*scene_, sigma);
  const geometry::ModeChecker check_after(*scene_, sigma_next);
  geometry::IkParams ikp;
  ikp.restarts = 0;
  for (int t = 0; t < params_.transition_attempts; ++t) {
    const Config seed = geometry::random_config(scene_->arm, rng_);
    const auto q = geometry::ik(scene_->arm, ee_target, seed, rng_, ikp);
    if (!q) continue;
    if (check_before.config_free(*q, &stats_.collision_checks) &&
        check_after.config_free(*q, &stats_.collision_checks))
      return q;
  }
  return std::nullopt;
}

Planner::SsResult Planner::ss_layer(const SampledSequence& seq) {
  const auto& pi = seq.pi;
  if (seq.node_seq.size() != pi.size() + 1 || seq.node_seq.front() != art_.root())
    throw std::invalid_argument("ss_layer: node sequence must span the action sequence");
  SsResult result;
  std::vector<double>& rewards = result.rewards;

  // Goal candidate generation with batch rejection.
  std::vector<std::optional<Attachment>> alpha;
  std::optional<HybridState> x_goal;
  if (params_.rejection_mode == SearchParams::RejectionMode::Full) {
    for (int j = 0; j < params_.k_goal; ++j) {
      ++stats_.goal_candidates_drawn;
      auto batch = sample_batch_attachments(pi);
      if (!batch) {
        ++stats_.goal_candidates_rejected;
        continue;
      }
      auto candidate = make_goal_candidate(*batch, pi, /*check_collision=*/true);
      if (candidate) {
        alpha = std::move(*batch);
        x_goal = std::move(candidate);
        break;
      }
      ++stats_.goal_candidates_rejected;
    }
    if (!x_goal) {
      // Nothing extended, but the whole sequence was implicated in the
      // rejected candidates.
      result.engaged_nodes = seq.node_seq.size();
      return result;
    }
  } else {
    // Ablation: build the candidate from the first batch, unchecked.
    ++stats_.goal_candidates_drawn;
    auto batch = sample_batch_attachments(pi);
    if (!batch) {
      ++stats_.goal_candidates_rejected;
      result.engaged_nodes = seq.node_seq.size();
      return result;
    }
    alpha = std::move(*batch);
    x_goal = make_goal_candidate(alpha, pi, /*check_collision=*/false);
  }

  // Batch extension of the RT along pi.
  bool any_failure = false;
  bool broke_early = false;
  int final_rt = -1;
  int chain_rt = -1;  // node this batch created at the previous step
  size_t engaged = 1;
  const double len = static_cast<double>(pi.size());
  for (size_t i = 0; i < pi.size(); ++i) {
    if (budget_exhausted()) {
      broke_early = true;
      break;
    }
    const int n = seq.node_seq[i];
    const int n_next = seq.node_seq[i + 1];
    const auto& candidates = art_.node(n).rt_nodes;
    if (candidates.empty()) {
      broke_early = true;
      break;
    }
    // Extend the batch's own chain while it is alive (the chain's end was
    // registered in this node's V_s one step ago); after a failure, fall
    // back to a uniform draw over V_s.
    const int parent_rt = (chain_rt >= 0 && !candidates.empty() && candidates.back() == chain_rt)
                              ? chain_rt
                              : candidates[pick_index(rng_, candidates.size())];
    engaged = std::max(engaged, i + 2);  // this step's post-state is attempted
    const HybridState x = rt_.node(parent_rt).x;  // copy: rt_ grows below
    const auto& ga = gp_->action(pi[i]);
    const bool is_last = i + 1 == pi.size();

    if (!ga.geometric) {
      HybridState next{art_.node(n_next).s, x.sigma, x.q};
      const int rt_new = rt_.add_node(std::move(next), parent_rt,
                                      RTEdge{EdgeKind::NonGeometric, pi[i], {}, {}});
      register_rt_node(art_, n_next, rt_, rt_new);
      chain_rt = rt_new;
      if (is_last) final_rt = rt_new;
      continue;
    }

    if (!alpha[i].has_value())
      throw std::logic_error("geometric action without batch attachment");
    const Mode sigma_next = geometry::make_next_mode(x.sigma, *alpha[i]);
    const auto q_next = sample_transition(x.sigma, sigma_next);
    if (!q_next) {
      any_failure = true;
      chain_rt = -1;
      rewards.push_back(failed_step_reward(static_cast<int>(i) + 1, static_cast<int>(pi.size())));
      continue;
    }
    ++stats_.mp_calls;
    auto mp = motion::plan_motion(x.q, *q_next, x.sigma, *scene_, params_.mp, rng_,
                                  &stats_.collision_checks);
    if (!mp.success()) {
      any_failure = true;
      chain_rt = -1;
      rewards.push_back(failed_step_reward(static_cast<int>(i) + 1, static_cast<int>(pi.size())));
      continue;
    }
    HybridState next{art_.node(n_next).s, sigma_next, *q_next};
    const int rt_new = rt_.add_node(std::move(next), parent_rt,
                                    RTEdge{EdgeKind::Mode, pi[i], *alpha[i],
                                           std::move(*mp.trajectory)});
    register_rt_node(art_, n_next, rt_, rt_new);
    chain_rt = rt_new;
    if (is_last) final_rt = rt_new;
  }

  // Goal connection from the final extended state.
  if (final_rt >= 0 && x_goal) {
    bool connected = false;
    const HybridState last = rt_.node(final_rt).x;  // copy
    // The connection is a pure configuration transition, so the final
    // extended state must already share the candidate's mode; mixed-batch
    // parent chains legitimately end in other modes and are skipped.
    const bool same_hybrid_slice =
        last.s == x_goal->s && geometry::exactly_equal(last.sigma, x_goal->sigma);
    if (same_hybrid_slice && !budget_exhausted()) {
      ++stats_.mp_calls;
      auto mp = motion::plan_motion(last.q, x_goal->q, last.sigma, *scene_, params_.mp, rng_,
                                    &stats_.collision_checks);
      if (mp.success()) {
        const int goal_rt = rt_.add_node(*x_goal, final_rt,
                                         RTEdge{EdgeKind::Config, {}, {},
                                                std::move(*mp.trajectory)});
        rt_.set_solution(goal_rt);
        connected = true;
      }
    }
    if (!any_failure && !broke_early) {
      // The whole sequence was realized; rate it a full success unless the
      // configured alternative discounts an unconnected goal.
      rewards.push_back(connected || !params_.partial_reward_on_unconnected
                            ? 1.0
                            : len / (len + 1.0));
    }
  }
  result.engaged_nodes = std::min(engaged, seq.node_seq.size());
  return result;
}

Solution Planner::extract_solution() const {
  const auto sol_node = rt_.solution();
  if (!sol_node) throw std::logic_error("extract_solution: no solution in the tree");
  std::vector<int> chain;
  for (int i = *sol_node; i >= 0; i = rt_.node(i).parent) chain.push_back(i);
  std::reverse(chain.begin(), chain.end());
  Solution sol;
  sol.start = rt_.node(chain.front()).x;
  for (size_t i = 1; i < chain.size(); ++i)
    sol.steps.push_back({rt_.node(chain[i]).edge, rt_.node(chain[i]).x});
  return sol;
}

SolveOutcome Planner::solve() {
  SolveOutcome out;
  const double wall0 = now_seconds();
  const auto finalize = [&]() {
    stats_.rt_nodes = static_cast<long long>(rt_.size());
    stats_.art_nodes = static_cast<long long>(art_.size());
    stats_.wall_seconds = now_seconds() - wall0;
    out.stats = stats_;
  };

  if (!geometry::state_collision_free(*scene_, x_initial_.sigma, x_initial_.q,
                                      &stats_.collision_checks))
    throw std::invalid_argument("initial state is in collision");

  // Already at the goal: empty solution.
  if (goal_atoms_satisfied(x_initial_.s, goal_)) {
    bool attachments_ok = true;
    for (const auto& [atom, att] : goal_.attachments) {
      (void)atom;
      const auto it = x_initial_.sigma.attachments.find(att.movable);
      if (it == x_initial_.sigma.attachments.end() || it->second.parent != att.parent ||
          !geometry::approx_equal(it->second.transform, att.transform, 1e-6)) {
        attachments_ok = false;
        break;
      }
    }
    if (attachments_ok) {
      out.status = SolveStatus::Solved;
      out.solution = Solution{x_initial_, {}};
      finalize();
      return out;
    }
  }

  // Abstract feasibility gate: no geometric work for hopeless goals.
  {
    const double t0 = now_seconds();
    ++stats_.task_plan_calls;
    const symbolic::PlanResult pr =
        symbolic::task_plan(*gp_, x_initial_.s, goal_.atoms, params_.plan_options);
    stats_.task_plan_expansions += pr.expansions;
    stats_.symbolic_seconds += now_seconds() - t0;
    if (pr.status == symbolic::PlanStatus::ProvenUnreachable) {
      out.status = SolveStatus::InfeasibleAbstractGoal;
      finalize();
      return out;
    }
  }

  while (!budget_exhausted()) {
    ++stats_.iterations;
    const auto seq = sample_action_seq();
    if (!seq) {
      if (art_.node(art_.root()).dead) {
        out.status = SolveStatus::InfeasibleAbstractGoal;
        finalize();
        return out;
      }
      continue;
    }
    std::vector<double> all_rewards;
    size_t engaged = 1;
    for (int k = 0; k < params_.k_ss; ++k) {
      SsResult r = ss_layer(*seq);
      all_rewards.insert(all_rewards.end(), r.rewards.begin(), r.rewards.end());
      engaged = std::max(engaged, r.engaged_nodes);
      if (rt_.solution()) break;
    }
    const std::vector<int> engaged_nodes(seq->node_seq.begin(),
                                         seq->node_seq.begin() + engaged);
    if (!all_rewards.empty()) {
      const double avg = std::accumulate(all_rewards.begin(), all_rewards.end(), 0.0) /
                         static_cast<double>(all_rewards.size());
      update_tree(art_, engaged_nodes, avg,
                  params_.reward_mode == SearchParams::RewardMode::NoReward);
    } else {
      record_visit(art_, engaged_nodes);
    }
    if (rt_.solution()) {
      out.status = SolveStatus::Solved;
      out.solution = extract_solution();
      finalize();
      return out;
    }
  }
  out.status = SolveStatus::Timeout;
  finalize();
  return out;
}

}  // namespace tampkit::search
