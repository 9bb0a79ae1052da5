#include "tampkit/domains/bundle_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tampkit/geometry/scene_io.hpp"
#include "tampkit/symbolic/parser.hpp"

namespace tampkit::domains {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void save_bundle(const BenchmarkInstance& instance, const std::string& dir) {
  fs::create_directories(dir);
  const fs::path base(dir);
  write_text(base / "domain.pddl", instance.domain_text);
  write_text(base / "problem.pddl", instance.problem_text);
  geometry::save_scene({instance.scene, instance.q0, instance.initial_mode},
                       (base / "scene.json").string());

  json goal;
  goal["attachments"] = json::array();
  for (const auto& [atom, att] : instance.goal.attachments) {
    goal["attachments"].push_back(
        {{"atom", instance.ground->atom_text(atom)},
         {"movable", att.movable},
         {"parent", att.parent},
         {"transform", {att.transform.x, att.transform.y, att.transform.theta}}});
  }
  if (instance.goal.config)
    goal["config"] = {(*instance.goal.config)[0], (*instance.goal.config)[1],
                      (*instance.goal.config)[2]};
  write_text(base / "goal.json", goal.dump(2) + "\n");

  const json meta{{"name", instance.name},
                  {"family", instance.family},
                  {"m", instance.m},
                  {"seed", instance.seed}};
  write_text(base / "meta.json", meta.dump(2) + "\n");
}

BenchmarkInstance load_bundle(const std::string& dir) {
  const fs::path base(dir);
  BenchmarkInstance inst;
  const json meta = json::parse(read_text(base / "meta.json"));
  inst.name = meta.at("name");
  inst.family = meta.at("family");
  inst.m = meta.at("m");
  inst.seed = meta.at("seed");

  inst.domain_text = read_text(base / "domain.pddl");
  inst.problem_text = read_text(base / "problem.pddl");
  inst.domain = symbolic::parse_domain(inst.domain_text);
  inst.problem = symbolic::parse_problem(inst.problem_text, inst.domain);
  inst.ground = std::make_shared<symbolic::GroundProblem>(inst.domain, inst.problem);
  inst.goal.atoms = inst.ground->goal_atoms();

  const geometry::SceneFile sf = geometry::load_scene((base / "scene.json").string());
  inst.scene = sf.scene;
  inst.q0 = sf.q0;
  inst.initial_mode = sf.initial_mode;

  const json goal = json::parse(read_text(base / "goal.json"));
  for (const auto& ja : goal.at("attachments")) {
    geometry::Attachment att{
        ja.at("movable"), ja.at("parent"),
        {ja.at("transform").at(0), ja.at("transform").at(1), ja.at("transform").at(2)}};
    symbolic::ObjectId m_id = 0, p_id = 0;
    bool found_m = false, found_p = false;
    for (symbolic::ObjectId o = 0; o < inst.ground->objects().size(); ++o) {
      if (inst.ground->object_name(o) == att.movable) {
        m_id = o;
        found_m = true;
      }
      if (inst.ground->object_name(o) == att.parent) {
        p_id = o;
        found_p = true;
      }
    }
    if (!found_m || !found_p)
      throw std::runtime_error("goal attachment references unknown object");
    const auto attached = inst.ground->attached_predicate();
    if (!attached) throw std::runtime_error("domain has no attached predicate");
    const auto atom = inst.ground->find_atom(*attached, {m_id, p_id});
    if (!atom) throw std::runtime_error("goal attachment atom is not part of the goal");
    inst.goal.attachments[*atom] = att;
  }
  if (goal.contains("config"))
    inst.goal.config = geometry::Config(goal.at("config").at(0), goal.at("config").at(1),
                                        goal.at("config").at(2));
  if (!inst.goal.well_formed()) throw std::runtime_error("goal attachments not in goal atoms");
  return inst;
}

}  // namespace tampkit::domains
