#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tampkit/geometry/arm.hpp"
#include "tampkit/geometry/pose2.hpp"
#include "tampkit/geometry/shape.hpp"

namespace tampkit::geometry {

using ObjectName = std::string;

// Reserved object name for the robot; attachments whose parent is the robot
// are grasps, everything else is a placement.
inline const ObjectName kRobotName = "arm";

// Placement support: a horizontal segment in the body's local frame.
// Children rest on it with their local -y face toward y_surface.
struct Region {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_surface = 0.0;
};

struct Body {
  ObjectName id;
  Shape shape;
  bool movable = false;
  std::optional<Region> region;
  std::vector<Pose2> ports;  // grasp ports, local frame (movables only)
};

// Kinematic parent relation of one movable: its pose expressed in the
// parent's frame (for grasps, the parent frame is the end effector).
struct Attachment {
  ObjectName movable;
  ObjectName parent;
  Pose2 transform;

  bool is_grasp() const { return parent == kRobotName; }
};

inline bool exactly_equal(const Attachment& a, const Attachment& b) {
  return a.movable == b.movable && a.parent == b.parent && exactly_equal(a.transform, b.transform);
}

// One attachment per movable; fixes every unactuated degree of freedom.
struct Mode {
  std::map<ObjectName, Attachment> attachments;

  const Attachment& of(const ObjectName& m) const { return attachments.at(m); }
};

bool exactly_equal(const Mode& a, const Mode& b);

// Replaces one movable's attachment, leaving the rest untouched.
Mode make_next_mode(const Mode& mode, const Attachment& alpha);

struct Scene {
  std::map<ObjectName, Body> bodies;
  ArmModel arm;
  std::map<ObjectName, Pose2> static_poses;

  const Body& body(const ObjectName& id) const;
  bool has_body(const ObjectName& id) const { return bodies.count(id) > 0; }
  std::vector<ObjectName> movables() const;

  // Clearance baked into generated placements so that objects resting on a
  // support do not register boundary contact with it.
  static constexpr double kPlacementClearance = 1e-3;

  // Placement pose (child in parent frame) for a child of half-height hh
  // resting on `region` at horizontal offset x.
  static Pose2 placement_pose(const Region& region, double x, double child_halfheight) {
    return {x, region.y_surface + child_halfheight + kPlacementClearance, 0.0};
  }
};

// Resolves an object's world pose under `mode`. Grasped chains go through
// fk(arm, q); placements compose parent poses. Throws std::runtime_error on
// unknown ids or attachment cycles.
Pose2 world_pose(const Mode& mode, const Scene& scene, const Config& q, const ObjectName& id);

// World pose when the object's attachment chain does not pass through the
// robot (i.e. the pose is independent of q); nullopt otherwise.
std::optional<Pose2> static_world_pose(const Mode& mode, const Scene& scene,
                                       const ObjectName& id);

// Precomputes everything q-independent for one mode so repeated collision
// queries (the motion-planning hot path) stay cheap.
class ModeChecker {
 public:
  ModeChecker(const Scene& scene, const Mode& mode);

  // True iff no colliding pair exists at q: arm-link vs body, nonadjacent
  // arm links, body vs body — excluding each movable against its direct
  // attachment parent. `counter`, when given, is incremented once per query.
  bool config_free(const Config& q, long long* counter = nullptr) const;

  // Body-vs-body verdict for the q-independent part of the mode (everything
  // not riding on the arm). Computed once at construction.
  bool static_part_free() const { return static_part_free_; }

  const Scene& scene() const { return *scene_; }
  const Mode& mode() const { return *mode_; }

 private:
  struct Entry {
    const Body* body;
    Pose2 pose;               // valid when !on_arm
    bool on_arm;              // pose depends on q (grasp somewhere up-chain)
    Pose2 ee_relative;        // valid when on_arm: pose = fk(q).ee * ee_relative
    const ObjectName* parent; // direct attachment parent (movables only)
  };

  const Scene* scene_;
  const Mode* mode_;
  std::array<Shape, 3> link_shapes_{};
  std::vector<Entry> entries_;
  bool static_part_free_ = true;
  bool excluded(const Entry& a, const Entry& b) const;
};

// One-shot full check (bodies and arm); the public membership test for the
// mode's collision-free configuration space.
bool state_collision_free(const Scene& scene, const Mode& mode, const Config& q,
                          long long* counter = nullptr);

}  // namespace tampkit::geometry
