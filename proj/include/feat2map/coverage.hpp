#pragma once

#include <feat2map/json_util.hpp>
#include <feat2map/map_model.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace feat2map {

enum class Turn { Left, Right, Straight, UTurn };

inline const char* turn_name(Turn t) {
  switch (t) {
    case Turn::Left: return "Left";
    case Turn::Right: return "Right";
    case Turn::Straight: return "Straight";
    case Turn::UTurn: return "UTurn";
  }
  return "Straight";
}

// Mock planner stages. S_* belong to the stop-sign scenario, T_* to the
// protected traffic-light scenario, L_* to the unprotected left turn.
enum class Stage { LF, S_PS, S_S, S_C, S_I, T_A, T_C, L_A, L_C, L_I };

inline const char* stage_name(Stage s) {
  switch (s) {
    case Stage::LF: return "LF";
    case Stage::S_PS: return "S_PS";
    case Stage::S_S: return "S_S";
    case Stage::S_C: return "S_C";
    case Stage::S_I: return "S_I";
    case Stage::T_A: return "T_A";
    case Stage::T_C: return "T_C";
    case Stage::L_A: return "L_A";
    case Stage::L_C: return "L_C";
    case Stage::L_I: return "L_I";
  }
  return "LF";
}

using StagePath = std::vector<Stage>;

inline std::string path_to_string(const StagePath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += " -> ";
    out += stage_name(path[i]);
  }
  return out;
}

inline std::string scenario_of_path(const StagePath& path) {
  for (Stage s : path) {
    switch (s) {
      case Stage::S_PS:
      case Stage::S_S:
      case Stage::S_C:
      case Stage::S_I: return "StopSignUnprotected";
      case Stage::T_A:
      case Stage::T_C: return "TrafficLightProtected";
      case Stage::L_A:
      case Stage::L_C:
      case Stage::L_I: return "TrafficLightUnprotectedLeftTurn";
      case Stage::LF: break;
    }
  }
  return "LaneFollow";
}

enum class LightState { Green, Red, Yellow };

struct RouteTriple {
  std::string entry_road;
  std::string junction_id;
  std::string exit_road;
  Turn turn = Turn::Straight;
};

// Turn classification from the entry/exit road socket angles: the deviation
// of the exit direction from continuing straight through the junction.
inline Turn classify_turn(Angle entry_socket, Angle exit_socket) {
  const double delta = wrap_pi(exit_socket.rad() - entry_socket.rad() - kPi);
  const double quarter = kPi / 4.0;
  if (std::abs(delta) <= quarter) return Turn::Straight;
  if (delta > quarter && delta <= 3.0 * quarter) return Turn::Left;
  if (delta < -quarter && delta >= -3.0 * quarter) return Turn::Right;
  return Turn::UTurn;
}

// Stage sequence one junction traversal produces. Right turns on green run
// the same protected-crossing stages as driving straight; u-turns run the
// unprotected left-turn scenario; crosswalk presence triggers the creep
// stage of the left turn.
inline StagePath plan_stage_path(ControlType control, Turn turn, bool has_crosswalk,
                                 LightState light = LightState::Green) {
  if (light != LightState::Green)
    throw UnsupportedLightState("only the green light state is modeled");
  switch (control) {
    case ControlType::Bare:
      return {Stage::LF};
    case ControlType::Stop:
      return {Stage::LF, Stage::S_PS, Stage::S_S, Stage::S_C, Stage::S_I, Stage::LF};
    case ControlType::Signal:
      if (turn == Turn::Straight || turn == Turn::Right)
        return {Stage::LF, Stage::T_A, Stage::T_C, Stage::LF};
      if (has_crosswalk)
        return {Stage::LF, Stage::L_A, Stage::L_C, Stage::L_I, Stage::LF};
      return {Stage::LF, Stage::L_A, Stage::L_I, Stage::LF};
  }
  return {Stage::LF};
}

// One route per junction lane: its predecessor road, the junction, its
// successor road, with the classified turn. Order follows junction then
// junction-lane ids, so it is deterministic.
inline std::vector<RouteTriple> enumerate_routes(const MapDoc& map) {
  std::map<std::string, std::string> lane_to_road;
  for (const auto& [rid, road] : map.roads) {
    if (road.forward_lane) lane_to_road[*road.forward_lane] = rid;
    if (road.backward_lane) lane_to_road[*road.backward_lane] = rid;
  }
  std::vector<RouteTriple> routes;
  for (const auto& [jid, junction] : map.junctions) {
    std::map<std::string, Angle> socket_angle;
    for (const RoadSocket& s : junction.sockets) socket_angle.emplace(s.road_id, s.angle);
    std::vector<std::string> lane_ids = junction.junction_lane_ids;
    std::sort(lane_ids.begin(), lane_ids.end());
    for (const std::string& lid : lane_ids) {
      const Lane& jl = map.lanes.at(lid);
      if (jl.predecessors.size() != 1 || jl.successors.size() != 1) continue;
      const auto entry = lane_to_road.find(jl.predecessors[0]);
      const auto exit = lane_to_road.find(jl.successors[0]);
      if (entry == lane_to_road.end() || exit == lane_to_road.end()) continue;
      const auto ea = socket_angle.find(entry->second);
      const auto xa = socket_angle.find(exit->second);
      if (ea == socket_angle.end() || xa == socket_angle.end()) continue;
      routes.push_back({entry->second, jid, exit->second, classify_turn(ea->second, xa->second)});
    }
  }
  return routes;
}

struct TraversalRecord {
  std::string junction_id;
  std::string entry_road;
  std::string exit_road;
  Turn turn = Turn::Straight;
  StagePath path;
};

struct CoverageReport {
  std::set<StagePath> covered_paths;
  std::set<std::string> scenarios;
  std::vector<TraversalRecord> traversals;
  std::vector<std::string> assumptions;
  std::vector<std::string> not_coverable;
};

inline CoverageReport coverage_report(const MapDoc& map) {
  CoverageReport report;
  report.assumptions = {
      "left-turn creep stage (L_C) is triggered by crosswalk presence",
      "traffic lights are always green during route evaluation"};
  report.not_coverable = {
      "TrafficLightUnprotectedRightTurn (entered only under a red light, which is not modeled)"};
  for (const RouteTriple& route : enumerate_routes(map)) {
    const Junction& junction = map.junctions.at(route.junction_id);
    StagePath path =
        plan_stage_path(junction.control, route.turn, junction.has_crosswalks, LightState::Green);
    report.covered_paths.insert(path);
    report.scenarios.insert(scenario_of_path(path));
    if (path.size() > 1) report.scenarios.insert("LaneFollow");  // routes start and end in LF
    report.traversals.push_back(
        {route.junction_id, route.entry_road, route.exit_road, route.turn, std::move(path)});
  }
  return report;
}

// "feat2map-coverage/1" report serialization.
inline std::string serialize_coverage(const CoverageReport& report) {
  JsonWriter w;
  const auto path_array = [&w](const StagePath& path) {
    w.begin_array();
    for (Stage s : path) w.value(stage_name(s));
    w.end_array();
  };
  w.begin_object();
  w.key("assumptions").begin_array();
  for (const auto& a : report.assumptions) w.value(a);
  w.end_array();
  w.key("covered_path_count").value(static_cast<int>(report.covered_paths.size()));
  w.key("covered_paths").begin_array();
  for (const StagePath& p : report.covered_paths) path_array(p);
  w.end_array();
  w.key("not_coverable").begin_array();
  for (const auto& n : report.not_coverable) w.value(n);
  w.end_array();
  w.key("scenarios").begin_array();
  for (const auto& s : report.scenarios) w.value(s);
  w.end_array();
  w.key("schema_version").value("feat2map-coverage/1");
  w.key("traversals").begin_array();
  for (const TraversalRecord& t : report.traversals) {
    w.begin_object();
    w.key("entry_road").value(t.entry_road);
    w.key("exit_road").value(t.exit_road);
    w.key("junction").value(t.junction_id);
    w.key("path");
    path_array(t.path);
    w.key("turn").value(turn_name(t.turn));
    w.end_object();
  }
  w.end_array();
  w.end_object();
  std::string out = w.str();
  out += '\n';
  return out;
}

inline std::string coverage_table(const CoverageReport& report) {
  std::string out;
  out += "covered stage paths (" + std::to_string(report.covered_paths.size()) + "):\n";
  for (const StagePath& p : report.covered_paths) out += "  " + path_to_string(p) + "\n";
  out += "scenarios:\n";
  for (const auto& s : report.scenarios) out += "  " + s + "\n";
  out += "not coverable:\n";
  for (const auto& n : report.not_coverable) out += "  " + n + "\n";
  out += "assumptions:\n";
  for (const auto& a : report.assumptions) out += "  " + a + "\n";
  out += "junction traversals: " + std::to_string(report.traversals.size()) + "\n";
  return out;
}

}  // namespace feat2map
