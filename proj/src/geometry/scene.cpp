#include "tampkit/geometry/scene.hpp"

#include <set>
#include <stdexcept>

namespace tampkit::geometry {

bool exactly_equal(const Mode& a, const Mode& b) {
  if (a.attachments.size() != b.attachments.size()) return false;
  for (const auto& [m, att] : a.attachments) {
    auto it = b.attachments.find(m);
    if (it == b.attachments.end() || !exactly_equal(att, it->second)) return false;
  }
  return true;
}

Mode make_next_mode(const Mode& mode, const Attachment& alpha) {
  if (mode.attachments.count(alpha.movable) == 0)
    throw std::invalid_argument("make_next_mode: unknown movable " + alpha.movable);
  Mode next = mode;
  next.attachments[alpha.movable] = alpha;
  return next;
}

const Body& Scene::body(const ObjectName& id) const {
  auto it = bodies.find(id);
  if (it == bodies.end()) throw std::runtime_error("unknown body: " + id);
  return it->second;
}

std::vector<ObjectName> Scene::movables() const {
  std::vector<ObjectName> out;
  for (const auto& [id, b] : bodies)
    if (b.movable) out.push_back(id);
  return out;
}

namespace {

// Walks the attachment chain of `id` down to a static body or the robot.
struct ChainAnchor {
  Pose2 relative;
  bool on_arm;
  ObjectName static_anchor;
};

ChainAnchor resolve_chain(const Mode& mode, const Scene& scene, const ObjectName& id) {
  Pose2 rel = Pose2::identity();
  ObjectName cur = id;
  std::set<ObjectName> seen;
  while (true) {
    if (!seen.insert(cur).second)
      throw std::runtime_error("attachment cycle involving " + cur);
    auto it = mode.attachments.find(cur);
    if (it == mode.attachments.end()) {
      if (cur != kRobotName && !scene.has_body(cur))
        throw std::runtime_error("unknown body: " + cur);
      return {rel, cur == kRobotName, cur};
    }
    rel = it->second.transform * rel;
    cur = it->second.parent;
  }
}

Pose2 anchored_world(const Scene& scene, const ChainAnchor& anchor) {
  const auto it = scene.static_poses.find(anchor.static_anchor);
  if (it == scene.static_poses.end())
    throw std::runtime_error("no static pose for body: " + anchor.static_anchor);
  return it->second * anchor.relative;
}

}  // namespace

Pose2 world_pose(const Mode& mode, const Scene& scene, const Config& q, const ObjectName& id) {
  if (id != kRobotName && !scene.has_body(id)) throw std::runtime_error("unknown body: " + id);
  if (mode.attachments.count(id) == 0) {
    auto it = scene.static_poses.find(id);
    if (it == scene.static_poses.end())
      throw std::runtime_error("no static pose for body: " + id);
    return it->second;
  }
  const ChainAnchor anchor = resolve_chain(mode, scene, id);
  if (anchor.on_arm) return fk(scene.arm, q).ee * anchor.relative;
  return anchored_world(scene, anchor);
}

std::optional<Pose2> static_world_pose(const Mode& mode, const Scene& scene,
                                       const ObjectName& id) {
  const ChainAnchor anchor = resolve_chain(mode, scene, id);
  if (anchor.on_arm) return std::nullopt;
  return anchored_world(scene, anchor);
}

ModeChecker::ModeChecker(const Scene& scene, const Mode& mode) : scene_(&scene), mode_(&mode) {
  for (int i = 0; i < 3; ++i) link_shapes_[i] = scene.arm.link_shape(i);
  entries_.reserve(scene.bodies.size());
  for (const auto& [id, body] : scene.bodies) {
    Entry e{};
    e.body = &body;
    if (body.movable) {
      const ChainAnchor anchor = resolve_chain(mode, scene, id);
      e.on_arm = anchor.on_arm;
      if (anchor.on_arm) {
        e.ee_relative = anchor.relative;
      } else {
        e.pose = anchored_world(scene, anchor);
      }
      e.parent = &mode.attachments.at(id).parent;
    } else {
      e.on_arm = false;
      e.pose = scene.static_poses.at(id);
      e.parent = nullptr;
    }
    entries_.push_back(e);
  }
  // q-independent body pairs, checked once per mode.
  for (size_t i = 0; i < entries_.size() && static_part_free_; ++i) {
    for (size_t j = i + 1; j < entries_.size(); ++j) {
      const Entry& a = entries_[i];
      const Entry& b = entries_[j];
      if (a.on_arm || b.on_arm) continue;
      if (excluded(a, b)) continue;
      if (collide(a.body->shape, a.pose, b.body->shape, b.pose)) {
        static_part_free_ = false;
        break;
      }
    }
  }
}

bool ModeChecker::excluded(const Entry& a, const Entry& b) const {
  if (a.parent && *a.parent == b.body->id) return true;
  if (b.parent && *b.parent == a.body->id) return true;
  return false;
}

bool ModeChecker::config_free(const Config& q, long long* counter) const {
  if (counter) ++*counter;
  if (!static_part_free_) return false;

  const FkResult f = fk(scene_->arm, q);

  // Nonadjacent link pair.
  if (collide(link_shapes_[0], f.link_poses[0], link_shapes_[2], f.link_poses[2])) return false;

  // World poses of bodies riding on the arm in this mode.
  std::vector<std::pair<const Entry*, Pose2>> carried;
  for (const auto& e : entries_) {
    if (e.on_arm) carried.emplace_back(&e, f.ee * e.ee_relative);
  }

  // Arm links vs bodies. A movable grasped directly by the robot is in
  // attachment contact with it and is skipped against every link.
  for (const auto& e : entries_) {
    if (e.parent && *e.parent == kRobotName) continue;
    Pose2 pose = e.pose;
    if (e.on_arm) {
      for (const auto& [entry, p] : carried)
        if (entry == &e) pose = p;
    }
    for (int i = 0; i < 3; ++i) {
      if (collide(link_shapes_[i], f.link_poses[i], e.body->shape, pose)) return false;
    }
  }

  // Body pairs involving at least one carried body.
  for (const auto& [ea, pa] : carried) {
    for (const auto& e : entries_) {
      if (e.on_arm && &e <= ea) continue;  // dedupe carried-carried pairs
      if (&e == ea) continue;
      if (excluded(*ea, e)) continue;
      Pose2 pose = e.pose;
      if (e.on_arm) {
        for (const auto& [entry, p] : carried)
          if (entry == &e) pose = p;
      }
      if (collide(ea->body->shape, pa, e.body->shape, pose)) return false;
    }
  }
  return true;
}

bool state_collision_free(const Scene& scene, const Mode& mode, const Config& q,
                          long long* counter) {
  return ModeChecker(scene, mode).config_free(q, counter);
}

}  // namespace tampkit::geometry
