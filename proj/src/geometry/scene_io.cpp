#include "tampkit/geometry/scene_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tampkit::geometry {

using nlohmann::json;

namespace {

json pose_to_json(const Pose2& p) { return json::array({p.x, p.y, p.theta}); }

Pose2 pose_from_json(const json& j) { return {j.at(0), j.at(1), j.at(2)}; }

json shape_to_json(const Shape& s) {
  if (s.is_circle()) return {{"type", "circle"}, {"radius", s.circle().radius}};
  json verts = json::array();
  for (const auto& v : s.polygon().vertices) verts.push_back(json::array({v.x(), v.y()}));
  return {{"type", "polygon"}, {"vertices", verts}};
}

Shape shape_from_json(const json& j) {
  const std::string type = j.at("type");
  if (type == "circle") return Shape::make_circle(j.at("radius"));
  if (type == "polygon") {
    std::vector<Eigen::Vector2d> verts;
    for (const auto& v : j.at("vertices")) verts.emplace_back(v.at(0), v.at(1));
    return Shape::make_polygon(std::move(verts));
  }
  throw std::runtime_error("scene: unknown shape type " + type);
}

json attachment_to_json(const Attachment& a) {
  return {{"movable", a.movable}, {"parent", a.parent}, {"transform", pose_to_json(a.transform)}};
}

Attachment attachment_from_json(const json& j) {
  return {j.at("movable"), j.at("parent"), pose_from_json(j.at("transform"))};
}

}  // namespace

std::string to_json_string(const SceneFile& file) {
  json j;
  const ArmModel& arm = file.scene.arm;
  j["arm"] = {{"base", pose_to_json(arm.base)},
              {"links", arm.link_lengths},
              {"halfwidth", arm.link_halfwidth},
              {"tip_clearance", arm.tip_clearance},
              {"limits",
               {{arm.limits[0].lo, arm.limits[0].hi},
                {arm.limits[1].lo, arm.limits[1].hi},
                {arm.limits[2].lo, arm.limits[2].hi}}}};
  json bodies = json::array();
  for (const auto& [id, body] : file.scene.bodies) {
    json b;
    b["id"] = id;
    b["movable"] = body.movable;
    b["shape"] = shape_to_json(body.shape);
    if (!body.movable) b["pose"] = pose_to_json(file.scene.static_poses.at(id));
    if (body.region)
      b["region"] = {{"x_lo", body.region->x_lo},
                     {"x_hi", body.region->x_hi},
                     {"y_surface", body.region->y_surface}};
    if (!body.ports.empty()) {
      json ports = json::array();
      for (const auto& p : body.ports) ports.push_back(pose_to_json(p));
      b["ports"] = ports;
    }
    bodies.push_back(b);
  }
  j["bodies"] = bodies;
  j["start"]["q"] = {file.q0[0], file.q0[1], file.q0[2]};
  json atts = json::array();
  for (const auto& [m, a] : file.initial_mode.attachments) atts.push_back(attachment_to_json(a));
  j["start"]["attachments"] = atts;
  return j.dump(2);
}

SceneFile scene_from_json_string(const std::string& text) {
  const json j = json::parse(text);
  SceneFile file;
  const json& ja = j.at("arm");
  ArmModel& arm = file.scene.arm;
  arm.base = pose_from_json(ja.at("base"));
  for (int i = 0; i < 3; ++i) {
    arm.link_lengths[i] = ja.at("links").at(i);
    arm.limits[i].lo = ja.at("limits").at(i).at(0);
    arm.limits[i].hi = ja.at("limits").at(i).at(1);
  }
  arm.link_halfwidth = ja.at("halfwidth");
  arm.tip_clearance = ja.at("tip_clearance");
  for (const auto& jb : j.at("bodies")) {
    Body body;
    body.id = jb.at("id").get<std::string>();
    body.movable = jb.at("movable");
    body.shape = shape_from_json(jb.at("shape"));
    if (jb.contains("region"))
      body.region = Region{jb.at("region").at("x_lo"), jb.at("region").at("x_hi"),
                           jb.at("region").at("y_surface")};
    if (jb.contains("ports"))
      for (const auto& jp : jb.at("ports")) body.ports.push_back(pose_from_json(jp));
    if (!body.movable) file.scene.static_poses[body.id] = pose_from_json(jb.at("pose"));
    file.scene.bodies[body.id] = std::move(body);
  }
  const json& js = j.at("start");
  file.q0 = Config(js.at("q").at(0), js.at("q").at(1), js.at("q").at(2));
  for (const auto& jatt : js.at("attachments")) {
    Attachment a = attachment_from_json(jatt);
    file.initial_mode.attachments[a.movable] = a;
  }
  return file;
}

void save_scene(const SceneFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json_string(file) << "\n";
}

SceneFile load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scene_from_json_string(ss.str());
}

}  // namespace tampkit::geometry
