#include "tampkit/search/solution_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tampkit::search {

using nlohmann::json;

SolutionFile to_solution_file(const symbolic::GroundProblem& gp, const Solution& solution) {
  SolutionFile file;
  for (const auto& step : solution.steps) {
    SolutionRecord rec;
    rec.kind = step.edge.kind;
    if (step.edge.action) rec.action = gp.action(*step.edge.action).display;
    rec.attachment = step.edge.attachment;
    if (step.edge.trajectory) rec.waypoints = step.edge.trajectory->waypoints;
    file.records.push_back(std::move(rec));
  }
  return file;
}

namespace {

std::string kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Config: return "config";
    case EdgeKind::Mode: return "mode";
    case EdgeKind::NonGeometric: return "non-geometric";
    default: return "root";
  }
}

EdgeKind kind_from(const std::string& s) {
  if (s == "config") return EdgeKind::Config;
  if (s == "mode") return EdgeKind::Mode;
  if (s == "non-geometric") return EdgeKind::NonGeometric;
  throw std::runtime_error("solution: unknown edge kind " + s);
}

}  // namespace

std::string to_json_string(const SolutionFile& file) {
  json steps = json::array();
  for (const auto& rec : file.records) {
    json j;
    j["kind"] = kind_name(rec.kind);
    if (!rec.action.empty()) j["action"] = rec.action;
    if (rec.attachment) {
      const auto& a = *rec.attachment;
      j["attachment"] = {{"movable", a.movable},
                         {"parent", a.parent},
                         {"transform", {a.transform.x, a.transform.y, a.transform.theta}}};
    }
    if (!rec.waypoints.empty()) {
      json wps = json::array();
      for (const auto& q : rec.waypoints) wps.push_back({q[0], q[1], q[2]});
      j["trajectory"] = wps;
    }
    steps.push_back(std::move(j));
  }
  return json{{"steps", steps}}.dump(2);
}

SolutionFile solution_from_json_string(const std::string& text) {
  const json j = json::parse(text);
  SolutionFile file;
  for (const auto& js : j.at("steps")) {
    SolutionRecord rec;
    rec.kind = kind_from(js.at("kind"));
    if (js.contains("action")) rec.action = js.at("action");
    if (js.contains("attachment")) {
      const auto& ja = js.at("attachment");
      rec.attachment = geometry::Attachment{
          ja.at("movable"), ja.at("parent"),
          {ja.at("transform").at(0), ja.at("transform").at(1), ja.at("transform").at(2)}};
    }
    if (js.contains("trajectory")) {
      for (const auto& wq : js.at("trajectory"))
        rec.waypoints.emplace_back(wq.at(0), wq.at(1), wq.at(2));
    }
    file.records.push_back(std::move(rec));
  }
  return file;
}

void save_solution(const SolutionFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json_string(file) << "\n";
}

SolutionFile load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return solution_from_json_string(ss.str());
}

}  // namespace tampkit::search
