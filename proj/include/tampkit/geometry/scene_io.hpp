#pragma once

#include <iosfwd>
#include <string>

#include "tampkit/geometry/scene.hpp"

namespace tampkit::geometry {

// Scene file contents: the world plus the initial configuration and the
// initial attachment of every movable (movable poses are always derived
// from a mode, so the file stores attachments, not poses).
struct SceneFile {
  Scene scene;
  Config q0{0.0, 0.0, 0.0};
  Mode initial_mode;
};

std::string to_json_string(const SceneFile& file);
SceneFile scene_from_json_string(const std::string& text);

void save_scene(const SceneFile& file, const std::string& path);
SceneFile load_scene(const std::string& path);

}  // namespace tampkit::geometry
