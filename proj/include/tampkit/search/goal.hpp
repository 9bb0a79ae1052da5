#pragma once

#include <map>
#include <optional>

#include "tampkit/geometry/scene.hpp"
#include "tampkit/symbolic/ground.hpp"

namespace tampkit::search {

// Implicit goal set: required abstract atoms plus, for some `attached`
// atoms, the concrete attachment (transform included) that must hold in
// any goal state. Optionally pins the robot configuration.
struct GoalSpec {
  std::vector<symbolic::AtomId> atoms;
  std::map<symbolic::AtomId, geometry::Attachment> attachments;
  std::optional<geometry::Config> config;

  bool well_formed() const {
    for (const auto& [atom, att] : attachments) {
      (void)att;
      if (!std::binary_search(atoms.begin(), atoms.end(), atom)) return false;
    }
    return true;
  }
};

}  // namespace tampkit::search
