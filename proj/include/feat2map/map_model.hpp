#pragma once

#include <feat2map/geometry.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace feat2map {

enum class LaneKind { RoadLane, JunctionLane };
enum class SocketType { InOut, In, Out };
enum class ControlType { Bare, Signal, Stop };
enum class DeviceKind { Signal, StopSign };

inline const char* control_name(ControlType c) {
  switch (c) {
    case ControlType::Bare: return "bare";
    case ControlType::Signal: return "signal";
    case ControlType::Stop: return "stop";
  }
  return "bare";
}

inline ControlType control_from_name(const std::string& s) {
  if (s == "bare") return ControlType::Bare;
  if (s == "signal") return ControlType::Signal;
  if (s == "stop") return ControlType::Stop;
  throw MalformedInput("unknown control type: " + s);
}

inline const char* socket_type_name(SocketType t) {
  switch (t) {
    case SocketType::InOut: return "InOut";
    case SocketType::In: return "In";
    case SocketType::Out: return "Out";
  }
  return "InOut";
}

inline SocketType socket_type_from_name(const std::string& s) {
  if (s == "InOut") return SocketType::InOut;
  if (s == "In") return SocketType::In;
  if (s == "Out") return SocketType::Out;
  throw MalformedInput("unknown socket type: " + s);
}

struct Lane {
  std::string id;
  LaneKind kind = LaneKind::RoadLane;
  CubicBezier reference;  // center reference line; travel = increasing t
  double width = 0.0;
  std::vector<std::string> predecessors;
  std::vector<std::string> successors;
};

// A road's connection point at a junction: the reference-line endpoint and
// the direction of the vector from the junction center to it.
struct RoadSocket {
  std::string road_id;
  Point2 endpoint;
  Angle angle;
};

// socket_type is relative to the road's start: In carries traffic toward the
// start (backward lane only), Out away from it (forward lane only).
struct Road {
  std::string id;
  CubicBezier reference;
  SocketType socket_type = SocketType::InOut;
  std::optional<std::string> forward_lane;
  std::optional<std::string> backward_lane;
  std::optional<std::string> start_junction;  // nullopt = dead end
  std::optional<std::string> end_junction;
};

struct Junction {
  std::string id;
  Point2 center;
  double radius = 0.0;
  std::vector<RoadSocket> sockets;
  ControlType control = ControlType::Bare;
  bool has_crosswalks = false;
  std::vector<std::string> junction_lane_ids;
};

struct TrafficControlDevice {
  std::string id;
  DeviceKind kind = DeviceKind::Signal;
  std::string junction_id;
  std::string road_id;
  Point2 position;
  Angle facing;
};

struct Crosswalk {
  std::string id;
  std::string junction_id;
  std::string road_id;
  std::array<Point2, 4> polygon;
  double width = 0.0;
};

struct MapMetadata {
  std::string name;
  std::uint64_t seed = 0;
  std::string config;  // canonical JSON echo of the synthesis config
};

struct MapDoc {
  std::map<std::string, Road> roads;
  std::map<std::string, Lane> lanes;
  std::map<std::string, Junction> junctions;
  std::map<std::string, TrafficControlDevice> controls;
  std::map<std::string, Crosswalk> crosswalks;
  MapMetadata metadata;
};

struct Violation {
  std::string code;
  std::string element_id;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(std::string_view code) const {
    std::size_t n = 0;
    for (const auto& v : violations)
      if (v.code == code) ++n;
    return n;
  }
};

enum class RoadEnd { Start, End };

inline std::optional<RoadEnd> road_end_at(const Road& road, const std::string& junction_id) {
  if (road.start_junction == junction_id) return RoadEnd::Start;
  if (road.end_junction == junction_id) return RoadEnd::End;
  return std::nullopt;
}

inline Point2 road_endpoint(const Road& road, RoadEnd end) {
  return end == RoadEnd::Start ? road.reference.p0 : road.reference.p3;
}

inline Angle road_heading(const Road& road, RoadEnd end) {
  return bezier_heading(road.reference, end == RoadEnd::Start ? 0.0 : 1.0);
}

// Lane arriving at the given road end (traffic flowing into a junction there).
inline const std::optional<std::string>& incoming_lane_at(const Road& road, RoadEnd end) {
  return end == RoadEnd::End ? road.forward_lane : road.backward_lane;
}

// Lane departing from the given road end.
inline const std::optional<std::string>& outgoing_lane_at(const Road& road, RoadEnd end) {
  return end == RoadEnd::End ? road.backward_lane : road.forward_lane;
}

inline int junction_degree(const MapDoc& map, const std::string& junction_id) {
  auto it = map.junctions.find(junction_id);
  if (it == map.junctions.end()) throw UnknownJunction("no such junction: " + junction_id);
  return static_cast<int>(it->second.sockets.size());
}

namespace detail {

inline bool point_in_convex_quad(Point2 p, const std::array<Point2, 4>& q) {
  double sign = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Point2 a = q[static_cast<std::size_t>(i)];
    const Point2 b = q[static_cast<std::size_t>((i + 1) % 4)];
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross != 0.0) {
      if (sign == 0.0)
        sign = cross;
      else if ((cross > 0.0) != (sign > 0.0))
        return false;
    }
  }
  return true;
}

inline bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const auto orient = [](Point2 p, Point2 q, Point2 r) {
    const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  const auto on_segment = [](Point2 p, Point2 q, Point2 r) {
    return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
           std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
  };
  if (o1 == 0 && on_segment(a, c, b)) return true;
  if (o2 == 0 && on_segment(a, d, b)) return true;
  if (o3 == 0 && on_segment(c, a, d)) return true;
  if (o4 == 0 && on_segment(c, b, d)) return true;
  return false;
}

// Whether a lane's sampled center line touches the quad.
inline bool polyline_hits_quad(const CubicBezier& curve, const std::array<Point2, 4>& quad) {
  const auto pts = sample_polyline(curve);
  for (const Point2& p : pts)
    if (point_in_convex_quad(p, quad)) return true;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (int e = 0; e < 4; ++e)
      if (segments_intersect(pts[i], pts[i + 1], quad[static_cast<std::size_t>(e)],
                             quad[static_cast<std::size_t>((e + 1) % 4)]))
        return true;
  return false;
}

}  // namespace detail

// Structural validation. Violations are data, not errors; an empty report
// means the map honors every model invariant. Position checks allow 2e-9 m
// so that maps round-tripped through 9-decimal serialization stay clean.
inline ValidationReport validate_map(const MapDoc& map) {
  ValidationReport report;
  const auto add = [&report](std::string code, std::string id, std::string msg) {
    report.violations.push_back({std::move(code), std::move(id), std::move(msg)});
  };
  constexpr double kPosTol = 2e-9;

  // reference resolution
  const auto has_lane = [&map](const std::string& id) { return map.lanes.count(id) > 0; };
  const auto has_road = [&map](const std::string& id) { return map.roads.count(id) > 0; };
  const auto has_junction = [&map](const std::string& id) { return map.junctions.count(id) > 0; };

  bool refs_ok = true;
  const auto xref = [&](bool ok, const std::string& id, const std::string& msg) {
    if (!ok) {
      add("xref", id, msg);
      refs_ok = false;
    }
  };
  for (const auto& [id, road] : map.roads) {
    if (road.forward_lane) xref(has_lane(*road.forward_lane), id, "forward lane missing: " + *road.forward_lane);
    if (road.backward_lane) xref(has_lane(*road.backward_lane), id, "backward lane missing: " + *road.backward_lane);
    if (road.start_junction) xref(has_junction(*road.start_junction), id, "start junction missing: " + *road.start_junction);
    if (road.end_junction) xref(has_junction(*road.end_junction), id, "end junction missing: " + *road.end_junction);
  }
  for (const auto& [id, lane] : map.lanes) {
    for (const auto& p : lane.predecessors) xref(has_lane(p), id, "predecessor missing: " + p);
    for (const auto& s : lane.successors) xref(has_lane(s), id, "successor missing: " + s);
  }
  for (const auto& [id, junction] : map.junctions) {
    for (const auto& s : junction.sockets) xref(has_road(s.road_id), id, "socket road missing: " + s.road_id);
    for (const auto& l : junction.junction_lane_ids) xref(has_lane(l), id, "junction lane missing: " + l);
  }
  for (const auto& [id, dev] : map.controls) {
    xref(has_junction(dev.junction_id), id, "junction missing: " + dev.junction_id);
    xref(has_road(dev.road_id), id, "road missing: " + dev.road_id);
  }
  for (const auto& [id, xw] : map.crosswalks) {
    xref(has_junction(xw.junction_id), id, "junction missing: " + xw.junction_id);
    xref(has_road(xw.road_id), id, "road missing: " + xw.road_id);
  }
  if (!refs_ok) return report;  // remaining checks assume resolvable references

  // lane ownership maps
  std::map<std::string, std::string> lane_to_road;
  for (const auto& [rid, road] : map.roads) {
    for (const auto& lid : {road.forward_lane, road.backward_lane})
      if (lid) {
        if (!lane_to_road.emplace(*lid, rid).second)
          add("lane_owner", *lid, "road lane referenced by multiple roads");
      }
  }
  std::map<std::string, std::string> lane_to_junction;
  for (const auto& [jid, junction] : map.junctions)
    for (const auto& lid : junction.junction_lane_ids)
      if (!lane_to_junction.emplace(lid, jid).second)
        add("lane_owner", lid, "junction lane referenced by multiple junctions");

  for (const auto& [id, lane] : map.lanes) {
    if (!(lane.width > 0.0)) add("lane_width", id, "non-positive width");
    const bool in_junction = lane_to_junction.count(id) > 0;
    const bool in_road = lane_to_road.count(id) > 0;
    if (lane.kind == LaneKind::JunctionLane && (!in_junction || in_road))
      add("lane_owner", id, "junction lane must be owned by exactly one junction");
    if (lane.kind == LaneKind::RoadLane && (!in_road || in_junction))
      add("lane_owner", id, "road lane must be owned by exactly one road");
  }

  // lane adjacency
  for (const auto& [id, lane] : map.lanes) {
    if (lane.kind == LaneKind::JunctionLane) {
      if (lane.predecessors.size() != 1 || lane.successors.size() != 1) {
        add("lane_adjacency", id, "junction lane needs exactly one predecessor and successor");
        continue;
      }
      const Lane& pred = map.lanes.at(lane.predecessors[0]);
      const Lane& succ = map.lanes.at(lane.successors[0]);
      if (pred.kind != LaneKind::RoadLane || succ.kind != LaneKind::RoadLane)
        add("lane_adjacency", id, "junction lane neighbors must be road lanes");
      if (distance(lane.reference.p0, pred.reference.p3) > kPosTol ||
          distance(lane.reference.p3, succ.reference.p0) > kPosTol)
        add("lane_continuity", id, "junction lane endpoints detached from road lanes");
    } else {
      // road lanes may chain into road lanes only with seamless joints
      for (const auto& sid : lane.successors) {
        const Lane& succ = map.lanes.at(sid);
        if (succ.kind != LaneKind::RoadLane) continue;
        if (distance(lane.reference.p3, succ.reference.p0) > kPosTol ||
            std::abs(angle_diff(bezier_heading(lane.reference, 1.0),
                                bezier_heading(succ.reference, 0.0))) > kAngleTol)
          add("lane_continuity", id, "road lane chain joint mismatch at " + sid);
      }
    }
  }

  // roads: socket_type vs lane presence, offsets, two-way headings
  for (const auto& [id, road] : map.roads) {
    const bool fwd = road.forward_lane.has_value();
    const bool bwd = road.backward_lane.has_value();
    const bool type_ok = (road.socket_type == SocketType::InOut && fwd && bwd) ||
                         (road.socket_type == SocketType::In && !fwd && bwd) ||
                         (road.socket_type == SocketType::Out && fwd && !bwd);
    if (!type_ok) add("socket_lanes", id, "lane presence does not match socket type");

    const Angle h0 = bezier_heading(road.reference, 0.0);
    const Angle h1 = bezier_heading(road.reference, 1.0);
    if (fwd) {
      const Lane& lane = map.lanes.at(*road.forward_lane);
      const double w = lane.width / 2.0;
      if (distance(lane.reference.p0, perpendicular_offset(road.reference.p0, h0, w)) > kPosTol ||
          distance(lane.reference.p3, perpendicular_offset(road.reference.p3, h1, w)) > kPosTol)
        add("lane_offset", *road.forward_lane, "forward lane endpoints off the road reference");
    }
    if (bwd) {
      const Lane& lane = map.lanes.at(*road.backward_lane);
      const double w = lane.width / 2.0;
      if (distance(lane.reference.p3, perpendicular_offset(road.reference.p0, h0, -w)) > kPosTol ||
          distance(lane.reference.p0, perpendicular_offset(road.reference.p3, h1, -w)) > kPosTol)
        add("lane_offset", *road.backward_lane, "backward lane endpoints off the road reference");
    }
    if (fwd && bwd) {
      const Lane& f = map.lanes.at(*road.forward_lane);
      const Lane& b = map.lanes.at(*road.backward_lane);
      const double diff = std::abs(angle_diff(bezier_heading(f.reference, 0.0),
                                              bezier_heading(b.reference, 1.0).reversed()));
      if (diff > kAngleTol) add("two_way_heading", id, "forward/backward lanes not opposite");
    }
  }

  // junctions
  for (const auto& [id, junction] : map.junctions) {
    if (junction.sockets.size() < 3)
      add("junction_degree", id, "fewer than 3 connected roads");
    std::set<std::string> socket_roads;
    for (const RoadSocket& s : junction.sockets) {
      if (!socket_roads.insert(s.road_id).second)
        add("socket_roads", id, "duplicate socket for road " + s.road_id);
      if (std::abs(distance(s.endpoint, junction.center) - junction.radius) > 1e-6)
        add("socket_radius", id, "socket endpoint off the junction radius for " + s.road_id);
      const Point2 v = s.endpoint - junction.center;
      if (std::abs(angle_diff(Angle::radians(std::atan2(v.y, v.x)), s.angle)) > kAngleTol)
        add("socket_angle", id, "socket angle disagrees with endpoint for " + s.road_id);
      const Road& road = map.roads.at(s.road_id);
      const auto end = road_end_at(road, id);
      if (!end)
        add("socket_roads", id, "socket road does not reference this junction: " + s.road_id);
      else if (distance(road_endpoint(road, *end), s.endpoint) > kPosTol)
        add("socket_roads", id, "socket endpoint is not the road reference endpoint: " + s.road_id);
    }

    // full connectivity: one junction lane per legal ordered road pair
    std::map<std::pair<std::string, std::string>, int> pair_lanes;
    for (const auto& lid : junction.junction_lane_ids) {
      const Lane& jl = map.lanes.at(lid);
      if (jl.predecessors.size() != 1 || jl.successors.size() != 1) continue;
      auto pit = lane_to_road.find(jl.predecessors[0]);
      auto sit = lane_to_road.find(jl.successors[0]);
      if (pit == lane_to_road.end() || sit == lane_to_road.end()) continue;
      ++pair_lanes[{pit->second, sit->second}];
    }
    for (const RoadSocket& sa : junction.sockets) {
      const Road& ra = map.roads.at(sa.road_id);
      const auto ea = road_end_at(ra, id);
      if (!ea || !incoming_lane_at(ra, *ea)) continue;
      for (const RoadSocket& sb : junction.sockets) {
        if (sb.road_id == sa.road_id) continue;
        const Road& rb = map.roads.at(sb.road_id);
        const auto eb = road_end_at(rb, id);
        if (!eb || !outgoing_lane_at(rb, *eb)) continue;
        if (pair_lanes[{sa.road_id, sb.road_id}] < 1)
          add("connectivity", id, "no junction lane from " + sa.road_id + " to " + sb.road_id);
      }
    }
  }

  // junction disc separation
  for (auto it = map.junctions.begin(); it != map.junctions.end(); ++it) {
    for (auto jt = std::next(it); jt != map.junctions.end(); ++jt) {
      const double d = distance(it->second.center, jt->second.center);
      if (d < it->second.radius + jt->second.radius - 1e-9)
        add("disc_overlap", it->first, "junction disc overlaps " + jt->first);
    }
  }

  // traffic control devices
  std::map<std::string, int> device_count;
  for (const auto& [id, dev] : map.controls) {
    const Junction& junction = map.junctions.at(dev.junction_id);
    const bool kind_ok =
        (dev.kind == DeviceKind::Signal && junction.control == ControlType::Signal) ||
        (dev.kind == DeviceKind::StopSign && junction.control == ControlType::Stop);
    if (!kind_ok) {
      add("control_placement", id, "device kind inconsistent with junction control");
      continue;
    }
    const Road& road = map.roads.at(dev.road_id);
    const auto end = road_end_at(road, dev.junction_id);
    if (!end || !incoming_lane_at(road, *end)) {
      add("control_placement", id, "device road has no incoming lane at junction");
      continue;
    }
    const Lane& in = map.lanes.at(*incoming_lane_at(road, *end));
    const Point2 e = in.reference.p3;
    const Angle h = bezier_heading(in.reference, 1.0);
    if (dev.kind == DeviceKind::Signal) {
      const Point2 v = dev.position - e;
      const Point2 u = unit_vector(h.rad());
      const double cross = u.x * v.y - u.y * v.x;
      const double dot = u.x * v.x + u.y * v.y;
      if (std::abs(cross) > 1e-6 || dot <= 0.0)
        add("control_placement", id, "signal not on the incoming lane extension");
      if (std::abs(angle_diff(dev.facing, h.reversed())) > kAngleTol)
        add("control_placement", id, "signal not facing the incoming traffic");
    } else {
      if (distance(dev.position, perpendicular_offset(e, h, in.width)) > 1e-6)
        add("control_placement", id, "stop sign not right of the incoming lane end");
      if (std::abs(angle_diff(dev.facing, h.reversed())) > kAngleTol)
        add("control_placement", id, "stop sign not facing the incoming traffic");
    }
    ++device_count[dev.junction_id];
  }
  for (const auto& [jid, junction] : map.junctions) {
    int approaches = 0;
    for (const RoadSocket& s : junction.sockets) {
      const Road& road = map.roads.at(s.road_id);
      const auto end = road_end_at(road, jid);
      if (end && incoming_lane_at(road, *end)) ++approaches;
    }
    const int expected = junction.control == ControlType::Bare ? 0 : approaches;
    if (device_count[jid] != expected)
      add("control_placement", jid, "expected " + std::to_string(expected) + " devices, found " +
                                        std::to_string(device_count[jid]));
  }

  // crosswalks: inside the junction disc, touching junction lanes only
  std::map<std::string, int> crosswalk_count;
  for (const auto& [id, xw] : map.crosswalks) {
    const Junction& junction = map.junctions.at(xw.junction_id);
    if (!junction.has_crosswalks) add("crosswalk_geometry", id, "junction has crosswalks disabled");
    for (const Point2& corner : xw.polygon)
      if (distance(corner, junction.center) > junction.radius + 1e-6)
        add("crosswalk_geometry", id, "corner outside the junction radius");
    bool touches_junction_lane = false;
    for (const auto& lid : junction.junction_lane_ids)
      if (detail::polyline_hits_quad(map.lanes.at(lid).reference, xw.polygon)) {
        touches_junction_lane = true;
        break;
      }
    if (!touches_junction_lane)
      add("crosswalk_geometry", id, "does not overlap any junction lane");
    for (const auto& [lid, lane] : map.lanes)
      if (lane.kind == LaneKind::RoadLane && detail::polyline_hits_quad(lane.reference, xw.polygon))
        add("crosswalk_geometry", id, "overlaps road lane " + lid);
    ++crosswalk_count[xw.junction_id];
  }
  for (const auto& [jid, junction] : map.junctions) {
    const int expected = junction.has_crosswalks ? static_cast<int>(junction.sockets.size()) : 0;
    if (crosswalk_count[jid] != expected)
      add("crosswalk_geometry", jid, "expected " + std::to_string(expected) + " crosswalks, found " +
                                         std::to_string(crosswalk_count[jid]));
  }

  return report;
}

}  // namespace feat2map
