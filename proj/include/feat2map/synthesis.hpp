#pragma once

#include <feat2map/feature.hpp>
#include <feat2map/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace feat2map {

struct SynthesisConfig {
  double grid_gap = 100.0;        // meters between neighboring grid points
  double lane_width = 3.5;        // meters
  double crosswalk_width = 4.5;   // meters
  double junction_radius = 12.0;  // meters
  std::uint64_t seed = 0;
  bool strict_two_way = true;     // sampled junctions connect via two-way roads

  void validate() const {
    if (!(grid_gap > 0.0 && lane_width > 0.0 && crosswalk_width > 0.0 && junction_radius > 0.0))
      throw Error("synthesis config: all lengths must be positive");
    if (!(grid_gap > 2.0 * junction_radius + crosswalk_width))
      throw Error("synthesis config: grid_gap must exceed 2*junction_radius + crosswalk_width");
    if (!(junction_radius > lane_width))
      throw Error("synthesis config: junction_radius must exceed lane_width");
    if (!(crosswalk_width <
          std::sqrt(junction_radius * junction_radius - lane_width * lane_width)))
      throw Error("synthesis config: crosswalk_width too large for the junction radius");
  }
};

inline std::string config_json(const SynthesisConfig& cfg) {
  JsonWriter w;
  w.begin_object();
  w.key("crosswalk_width").value(cfg.crosswalk_width);
  w.key("grid_gap").value(cfg.grid_gap);
  w.key("junction_radius").value(cfg.junction_radius);
  w.key("lane_width").value(cfg.lane_width);
  w.key("seed").value(cfg.seed);
  w.key("strict_two_way").value(cfg.strict_two_way);
  w.end_object();
  return w.str();
}

inline SynthesisConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("invalid config JSON: ") + e.what());
  }
  SynthesisConfig cfg;
  cfg.grid_gap = j.value("grid_gap", cfg.grid_gap);
  cfg.lane_width = j.value("lane_width", cfg.lane_width);
  cfg.crosswalk_width = j.value("crosswalk_width", cfg.crosswalk_width);
  cfg.junction_radius = j.value("junction_radius", cfg.junction_radius);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.strict_two_way = j.value("strict_two_way", cfg.strict_two_way);
  cfg.validate();
  return cfg;
}

// --- grid layout ---

struct GridPoint {
  int x = 0;
  int y = 0;
  auto operator<=>(const GridPoint&) const = default;
};

// Cardinal directions indexed 0..3 = East, North, West, South.
inline GridPoint grid_neighbor(GridPoint p, int dir) {
  switch (dir & 3) {
    case 0: return {p.x + 1, p.y};
    case 1: return {p.x, p.y + 1};
    case 2: return {p.x - 1, p.y};
    default: return {p.x, p.y - 1};
  }
}

// Nearest cardinal direction of an angle; the 45-degree boundary rounds up
// (counter-clockwise), so bins are deterministic.
inline int cardinal_bin(double angle_rad) {
  return static_cast<int>(std::lround(wrap_two_pi(angle_rad) / kHalfPi)) % 4;
}

inline std::vector<int> cardinal_bins(const std::vector<double>& f_rot) {
  std::vector<int> bins;
  bins.reserve(f_rot.size());
  for (double a : f_rot) bins.push_back(cardinal_bin(a));
  return bins;
}

inline bool bins_injective(const std::vector<int>& bins) {
  std::set<int> seen(bins.begin(), bins.end());
  return seen.size() == bins.size();
}

struct GridLayout {
  std::map<GridPoint, JunctionFeature> assignments;  // filled points
  std::set<GridPoint> empty_points;
  std::vector<GridPoint> placement_order;

  bool filled(GridPoint p) const { return assignments.count(p) > 0; }
  bool seen(GridPoint p) const { return filled(p) || empty_points.count(p) > 0; }
};

// A direction at a point is usable when the neighbor is still open, or is a
// placed junction with a socket binned to the opposite direction.
inline bool direction_usable(const GridLayout& layout, GridPoint p, int dir) {
  auto it = layout.assignments.find(grid_neighbor(p, dir));
  if (it == layout.assignments.end()) return true;
  const auto bins = cardinal_bins(it->second.f_rot);
  return std::find(bins.begin(), bins.end(), (dir + 2) % 4) != bins.end();
}

// Matching score of a candidate point: infeasible (nullopt) when the feature
// needs more connections than the point can offer; otherwise the number of
// usable directions among the feature's socket bins, with the count of
// already-placed facing sockets as the preference tier.
struct MatchScore {
  int score = 0;
  int facing = 0;
  auto operator<=>(const MatchScore&) const = default;
};

inline std::optional<MatchScore> match_score(const GridLayout& layout, GridPoint p,
                                             const JunctionFeature& feature) {
  int usable_overall = 0;
  for (int dir = 0; dir < 4; ++dir)
    if (direction_usable(layout, p, dir)) ++usable_overall;
  if (feature.f_road > usable_overall) return std::nullopt;

  const std::set<int> bins = [&feature] {
    const auto b = cardinal_bins(feature.f_rot);
    return std::set<int>(b.begin(), b.end());
  }();
  MatchScore s;
  for (int dir : bins) {
    if (!direction_usable(layout, p, dir)) continue;
    ++s.score;
    if (layout.filled(grid_neighbor(p, dir))) ++s.facing;
  }
  return s;
}

inline GridPoint best_match_grid_point(const GridLayout& layout, const JunctionFeature& feature,
                                       Rng& rng) {
  std::vector<GridPoint> ties;
  MatchScore best{-1, -1};
  for (GridPoint p : layout.empty_points) {
    const auto s = match_score(layout, p, feature);
    if (!s) continue;
    if (*s > best) {
      best = *s;
      ties.assign(1, p);
    } else if (*s == best) {
      ties.push_back(p);
    }
  }
  if (ties.empty()) throw NoFeasiblePoint("no grid point can host a junction with f_road=" +
                                          std::to_string(feature.f_road));
  return ties[rng.uniform_index(ties.size())];
}

// Greedy grid assignment: features are processed by descending road count
// (then input order), each taking the best-scoring empty point, after which
// the grid is extended by the four neighbors of the filled point.
inline GridLayout layout_junctions(const std::vector<JunctionFeature>& features,
                                   const SynthesisConfig&, Rng& rng) {
  GridLayout layout;
  layout.empty_points.insert({0, 0});

  std::vector<std::size_t> order(features.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&features](std::size_t a, std::size_t b) {
    return features[a].f_road > features[b].f_road;
  });

  for (std::size_t idx : order) {
    const JunctionFeature& feature = features[idx];
    const GridPoint p = best_match_grid_point(layout, feature, rng);
    layout.empty_points.erase(p);
    layout.assignments.emplace(p, feature);
    layout.placement_order.push_back(p);
    for (int dir = 0; dir < 4; ++dir) {
      const GridPoint q = grid_neighbor(p, dir);
      if (!layout.seen(q)) layout.empty_points.insert(q);
    }
  }
  return layout;
}

// --- combinatorial sampling ---

// One concrete junction feature per cell of road_set x ctrl_set x xwlk_set.
// Rotations are drawn uniformly from the per-index intervals, then accepted
// only if the vector is CCW-valid, lands back inside the intervals after
// rotation normalization (so extraction round-trips), and occupies distinct
// cardinal bins when it has to sit on the grid.
inline std::vector<JunctionFeature> sample_junction_features(const MapFeature& feature,
                                                             std::uint64_t seed) {
  if (feature.road_set.empty() || feature.ctrl_set.empty() || feature.xwlk_set.empty())
    throw EmptyInput("map feature with empty discrete sets");
  for (int n : feature.road_set) {
    auto it = feature.rot_ranges.find(n);
    if (it == feature.rot_ranges.end() ||
        it->second.intervals.size() != static_cast<std::size_t>(n))
      throw MalformedInput("rot_ranges missing for n=" + std::to_string(n));
  }

  constexpr int kMaxRetries = 1000;
  std::vector<JunctionFeature> out;
  std::uint64_t cell = 0;
  for (int n : feature.road_set) {
    const RotationRange& range = feature.rot_ranges.at(n);
    for (ControlType ctrl : feature.ctrl_set) {
      for (bool xwlk : feature.xwlk_set) {
        Rng rng = Rng(seed).stream("sample", cell++);
        bool accepted = false;
        for (int attempt = 0; attempt < kMaxRetries && !accepted; ++attempt) {
          std::vector<double> rot(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i)
            rot[static_cast<std::size_t>(i)] =
                rng.uniform(range.intervals[static_cast<std::size_t>(i)].first,
                            range.intervals[static_cast<std::size_t>(i)].second);
          if (!ccw_valid(rot)) continue;
          const auto norm = normalize_rotation(feature_gaps(rot));
          bool in_box = true;
          for (int i = 0; i < n && in_box; ++i)
            in_box = norm.f_rot[static_cast<std::size_t>(i)] >=
                         range.intervals[static_cast<std::size_t>(i)].first - 1e-9 &&
                     norm.f_rot[static_cast<std::size_t>(i)] <=
                         range.intervals[static_cast<std::size_t>(i)].second + 1e-9;
          if (!in_box) continue;
          if (n <= 4 && !bins_injective(cardinal_bins(norm.f_rot))) continue;

          JunctionFeature f;
          f.f_road = n;
          f.f_rot = norm.f_rot;
          f.f_ctrl = ctrl;
          f.f_xwlk = xwlk;
          f.socket_types.assign(static_cast<std::size_t>(n), SocketType::InOut);
          out.push_back(std::move(f));
          accepted = true;
        }
        if (!accepted)
          throw UnsatisfiableRotation("no CCW-valid rotation for cell n=" + std::to_string(n) +
                                      " after " + std::to_string(kMaxRetries) + " retries");
      }
    }
  }
  return out;
}

// --- junction and road construction ---

inline Junction instantiate_junction(const JunctionFeature& feature, Point2 center,
                                     const SynthesisConfig& cfg, std::string id = "J0") {
  Junction j;
  j.id = std::move(id);
  j.center = center;
  j.radius = cfg.junction_radius;
  j.control = feature.f_ctrl;
  j.has_crosswalks = feature.f_xwlk;
  for (double a : feature.f_rot) {
    RoadSocket s;
    s.angle = Angle::radians(a);
    s.endpoint = center + unit_vector(a) * cfg.junction_radius;
    j.sockets.push_back(std::move(s));
  }
  return j;
}

struct PlacedJunctions {
  std::vector<std::string> order;                // junction ids in placement order
  std::map<GridPoint, std::string> id_by_point;
  std::map<std::string, GridPoint> point_by_id;
  std::map<std::string, Junction> junctions;
  std::map<std::string, std::vector<SocketType>> socket_types;  // aligned with sockets
};

inline PlacedJunctions instantiate_layout(const GridLayout& layout, const SynthesisConfig& cfg) {
  PlacedJunctions placed;
  std::size_t i = 0;
  for (GridPoint p : layout.placement_order) {
    const JunctionFeature& feature = layout.assignments.at(p);
    std::string id = "J" + std::to_string(i++);
    placed.order.push_back(id);
    placed.id_by_point.emplace(p, id);
    placed.point_by_id.emplace(id, p);
    placed.socket_types.emplace(id, feature.socket_types);
    const Point2 center{p.x * cfg.grid_gap, p.y * cfg.grid_gap};
    placed.junctions.emplace(id, instantiate_junction(feature, center, cfg, id));
  }
  return placed;
}

// Roads between neighboring junctions whose sockets face each other, plus a
// dead-end stub for every unconsumed socket. Fills the sockets' road ids.
//
// Socket-to-cardinal bins exist to pair junctions across the grid, so they
// are only required once a junction has to coexist with neighbors; a lone
// junction (the explicit single-feature path, which also admits more than
// four legs) turns every socket into a stub along its actual angle.
inline std::vector<Road> build_roads(PlacedJunctions& placed, const SynthesisConfig& cfg) {
  std::map<std::string, std::vector<int>> bins;
  for (const auto& [jid, junction] : placed.junctions) {
    std::vector<int> b;
    for (const RoadSocket& s : junction.sockets) b.push_back(cardinal_bin(s.angle.rad()));
    if (b.size() > 4 || !bins_injective(b)) {
      if (placed.junctions.size() > 1)
        throw SocketConflict(jid + ": two sockets map to the same cardinal direction");
      b.clear();  // unpairable but alone: stubs only
    }
    bins.emplace(jid, std::move(b));
  }
  const auto socket_on = [&bins](const std::string& jid, int dir) -> std::optional<std::size_t> {
    const auto& b = bins.at(jid);
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] == dir) return i;
    return std::nullopt;
  };

  std::vector<Road> roads;
  int counter = 0;
  const double stub_len = cfg.grid_gap / 2.0 - cfg.junction_radius;
  for (const std::string& jid : placed.order) {
    Junction& junction = placed.junctions.at(jid);
    const GridPoint p = placed.point_by_id.at(jid);
    const auto& junction_bins = bins.at(jid);
    for (std::size_t si = 0; si < junction.sockets.size(); ++si) {
      RoadSocket& socket = junction.sockets[si];
      if (!socket.road_id.empty()) continue;  // already consumed by a neighbor

      std::optional<std::pair<std::string, std::size_t>> partner;
      if (!junction_bins.empty()) {
        const int dir = junction_bins[si];
        if (auto it = placed.id_by_point.find(grid_neighbor(p, dir));
            it != placed.id_by_point.end())
          if (auto pi = socket_on(it->second, (dir + 2) % 4)) partner = {it->second, *pi};
      }

      Road road;
      road.id = "R" + std::to_string(counter++);
      if (partner) {
        RoadSocket& other = placed.junctions.at(partner->first).sockets[partner->second];
        road.reference = bezier_from_endpoints(socket.endpoint, socket.angle, other.endpoint,
                                               other.angle.reversed());
        road.start_junction = jid;
        road.end_junction = partner->first;
        road.socket_type = placed.socket_types.at(jid)[si];
        other.road_id = road.id;
      } else {
        const Point2 end = socket.endpoint + unit_vector(socket.angle.rad()) * stub_len;
        road.reference = bezier_from_endpoints(socket.endpoint, socket.angle, end, socket.angle);
        road.start_junction = jid;
        road.socket_type = placed.socket_types.at(jid)[si];
      }
      socket.road_id = road.id;
      roads.push_back(std::move(road));
    }
  }
  return roads;
}

struct RoadLanes {
  std::optional<Lane> forward;
  std::optional<Lane> backward;
};

// Lane references are the road reference shifted half a lane width to the
// right of the respective travel direction.
inline RoadLanes build_lanes(const Road& road, const SynthesisConfig& cfg,
                             const std::string& lane_base) {
  const Angle h0 = bezier_heading(road.reference, 0.0);
  const Angle h1 = bezier_heading(road.reference, 1.0);
  const double half = cfg.lane_width / 2.0;

  RoadLanes lanes;
  if (road.socket_type == SocketType::InOut || road.socket_type == SocketType::Out) {
    Lane f;
    f.id = lane_base + "_f";
    f.kind = LaneKind::RoadLane;
    f.width = cfg.lane_width;
    f.reference = bezier_from_endpoints(perpendicular_offset(road.reference.p0, h0, half), h0,
                                        perpendicular_offset(road.reference.p3, h1, half), h1);
    lanes.forward = std::move(f);
  }
  if (road.socket_type == SocketType::InOut || road.socket_type == SocketType::In) {
    Lane b;
    b.id = lane_base + "_b";
    b.kind = LaneKind::RoadLane;
    b.width = cfg.lane_width;
    b.reference = bezier_from_endpoints(perpendicular_offset(road.reference.p3, h1, -half),
                                        h1.reversed(),
                                        perpendicular_offset(road.reference.p0, h0, -half),
                                        h0.reversed());
    lanes.backward = std::move(b);
  }
  return lanes;
}

// One junction lane per ordered pair of distinct roads with an incoming lane
// on one side and an outgoing lane on the other. U-turns are not generated.
inline void build_junction_lanes(MapDoc& map, const std::string& junction_id,
                                 const SynthesisConfig& cfg) {
  Junction& junction = map.junctions.at(junction_id);
  struct Approach {
    std::string road_id;
    std::string lane_id;
  };
  std::vector<Approach> incoming, outgoing;
  for (const RoadSocket& s : junction.sockets) {
    const Road& road = map.roads.at(s.road_id);
    const auto end = road_end_at(road, junction_id);
    if (!end) continue;
    if (const auto& in = incoming_lane_at(road, *end)) incoming.push_back({s.road_id, *in});
    if (const auto& out = outgoing_lane_at(road, *end)) outgoing.push_back({s.road_id, *out});
  }

  int k = 0;
  for (const Approach& in : incoming) {
    for (const Approach& out : outgoing) {
      if (in.road_id == out.road_id) continue;
      Lane& in_lane = map.lanes.at(in.lane_id);
      Lane& out_lane = map.lanes.at(out.lane_id);
      Lane jl;
      jl.id = junction_id + "_L" + std::to_string(k++);
      jl.kind = LaneKind::JunctionLane;
      jl.width = cfg.lane_width;
      jl.reference = bezier_from_endpoints(in_lane.reference.p3,
                                           bezier_heading(in_lane.reference, 1.0),
                                           out_lane.reference.p0,
                                           bezier_heading(out_lane.reference, 0.0));
      jl.predecessors = {in.lane_id};
      jl.successors = {out.lane_id};
      in_lane.successors.push_back(jl.id);
      out_lane.predecessors.push_back(jl.id);
      junction.junction_lane_ids.push_back(jl.id);
      map.lanes.emplace(jl.id, std::move(jl));
    }
  }
}

// Signals sit across the junction on the extension of each incoming lane;
// stop signs sit at the incoming road end, one lane width to the right.
// Both face the incoming traffic. Bare junctions get no devices.
inline void place_controls(MapDoc& map, const std::string& junction_id,
                           const SynthesisConfig& cfg, int& counter) {
  Junction& junction = map.junctions.at(junction_id);
  if (junction.control == ControlType::Bare) return;
  for (const RoadSocket& s : junction.sockets) {
    const Road& road = map.roads.at(s.road_id);
    const auto end = road_end_at(road, junction_id);
    if (!end || !incoming_lane_at(road, *end)) continue;
    const Lane& in = map.lanes.at(*incoming_lane_at(road, *end));
    const Point2 e = in.reference.p3;
    const Angle h = bezier_heading(in.reference, 1.0);

    TrafficControlDevice dev;
    dev.junction_id = junction_id;
    dev.road_id = s.road_id;
    dev.facing = h.reversed();
    if (junction.control == ControlType::Signal) {
      dev.id = "SG" + std::to_string(counter++);
      dev.kind = DeviceKind::Signal;
      dev.position = e + unit_vector(h.rad()) * (2.0 * cfg.junction_radius);
    } else {
      dev.id = "SS" + std::to_string(counter++);
      dev.kind = DeviceKind::StopSign;
      dev.position = perpendicular_offset(e, h, cfg.lane_width);
    }
    map.controls.emplace(dev.id, std::move(dev));
  }
}

// One rectangle per connected road, spanning the road's lane extent, placed
// just inside the junction radius and perpendicular to the socket.
inline void place_crosswalks(MapDoc& map, const std::string& junction_id,
                             const SynthesisConfig& cfg, int& counter) {
  Junction& junction = map.junctions.at(junction_id);
  if (!junction.has_crosswalks) return;
  const double half_across = cfg.lane_width;  // both lane centers plus their halves
  const double d_out = std::sqrt(cfg.junction_radius * cfg.junction_radius -
                                 half_across * half_across);
  const double d_in = d_out - cfg.crosswalk_width;
  for (const RoadSocket& s : junction.sockets) {
    const Point2 u = unit_vector(s.angle.rad());
    const Point2 perp{-u.y, u.x};
    Crosswalk xw;
    xw.id = "CW" + std::to_string(counter++);
    xw.junction_id = junction_id;
    xw.road_id = s.road_id;
    xw.width = cfg.crosswalk_width;
    xw.polygon = {junction.center + u * d_in + perp * half_across,
                  junction.center + u * d_out + perp * half_across,
                  junction.center + u * d_out - perp * half_across,
                  junction.center + u * d_in - perp * half_across};
    map.crosswalks.emplace(xw.id, std::move(xw));
  }
}

namespace detail {

inline MapDoc realize_layout(const GridLayout& layout, const SynthesisConfig& cfg) {
  PlacedJunctions placed = instantiate_layout(layout, cfg);
  std::vector<Road> roads = build_roads(placed, cfg);

  MapDoc map;
  map.junctions = placed.junctions;
  for (Road& road : roads) {
    const std::string base = "L" + road.id.substr(1);
    RoadLanes lanes = build_lanes(road, cfg, base);
    if (lanes.forward) {
      road.forward_lane = lanes.forward->id;
      map.lanes.emplace(lanes.forward->id, std::move(*lanes.forward));
    }
    if (lanes.backward) {
      road.backward_lane = lanes.backward->id;
      map.lanes.emplace(lanes.backward->id, std::move(*lanes.backward));
    }
    map.roads.emplace(road.id, std::move(road));
  }
  for (const std::string& jid : placed.order) build_junction_lanes(map, jid, cfg);
  int devices = 0, crosswalks = 0;
  for (const std::string& jid : placed.order) {
    place_controls(map, jid, cfg, devices);
    place_crosswalks(map, jid, cfg, crosswalks);
  }
  map.metadata.name = "feat2map-generated";
  map.metadata.seed = cfg.seed;
  map.metadata.config = config_json(cfg);
  return map;
}

inline void append_road_chain(MapDoc& map, const RoadChainSpec& spec, const SynthesisConfig& cfg,
                              int& counter) {
  const auto& segs = spec.segments;
  if (segs.empty()) throw MalformedInput("empty road chain");
  const auto joined = [](const RoadChainSegment& a, const RoadChainSegment& b) {
    return distance(a.end, b.start) <= 1e-6 &&
           std::abs(angle_diff(a.end_heading, b.start_heading)) <= kAngleTol;
  };
  for (std::size_t i = 0; i + 1 < segs.size(); ++i)
    if (!joined(segs[i], segs[i + 1]))
      throw ChainDiscontinuity("joint mismatch between segments " + std::to_string(i) + " and " +
                               std::to_string(i + 1));
  const bool closed = segs.size() > 1 && joined(segs.back(), segs.front());

  std::vector<std::string> fwd(segs.size()), bwd(segs.size());
  std::vector<std::string> road_ids(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const RoadChainSegment& seg = segs[i];
    Road road;
    road.id = "R" + std::to_string(counter);
    road.reference = bezier_from_endpoints(seg.start, seg.start_heading, seg.end, seg.end_heading);
    road.socket_type = seg.socket_type;
    RoadLanes lanes = build_lanes(road, cfg, "L" + std::to_string(counter));
    ++counter;
    if (lanes.forward) {
      fwd[i] = lanes.forward->id;
      road.forward_lane = lanes.forward->id;
      map.lanes.emplace(lanes.forward->id, std::move(*lanes.forward));
    }
    if (lanes.backward) {
      bwd[i] = lanes.backward->id;
      road.backward_lane = lanes.backward->id;
      map.lanes.emplace(lanes.backward->id, std::move(*lanes.backward));
    }
    road_ids[i] = road.id;
    map.roads.emplace(road.id, std::move(road));
  }
  const auto link = [&map](const std::string& from, const std::string& to) {
    if (from.empty() || to.empty()) return;
    map.lanes.at(from).successors.push_back(to);
    map.lanes.at(to).predecessors.push_back(from);
  };
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    link(fwd[i], fwd[i + 1]);
    link(bwd[i + 1], bwd[i]);
  }
  if (closed) {
    link(fwd.back(), fwd.front());
    link(bwd.front(), bwd.back());
  }
}

}  // namespace detail

inline MapDoc build_road_chain(const RoadChainSpec& spec, const SynthesisConfig& cfg) {
  cfg.validate();
  MapDoc map;
  int counter = 0;
  detail::append_road_chain(map, spec, cfg, counter);
  map.metadata.name = "feat2map-road-chain";
  map.metadata.seed = cfg.seed;
  map.metadata.config = config_json(cfg);
  return map;
}

// Generation from explicit junction features. A single feature is placed
// directly at the origin, which also admits junctions with more than four
// legs; larger sets go through the grid layout.
inline MapDoc generate_map_explicit(const std::vector<JunctionFeature>& features,
                                    const SynthesisConfig& cfg) {
  cfg.validate();
  GridLayout layout;
  if (features.size() == 1) {
    layout.assignments.emplace(GridPoint{0, 0}, features.front());
    layout.placement_order.push_back({0, 0});
  } else {
    Rng rng = Rng(cfg.seed).stream("layout");
    layout = layout_junctions(features, cfg, rng);
  }
  return detail::realize_layout(layout, cfg);
}

// Alg.-style feature-driven generation: sample one junction per discrete
// cell, lay the junctions out on the grid, then build geometry and assets.
inline MapDoc generate_map(const MapFeature& feature, const SynthesisConfig& cfg) {
  cfg.validate();
  const auto features = sample_junction_features(feature, cfg.seed);
  Rng rng = Rng(cfg.seed).stream("layout");
  GridLayout layout = layout_junctions(features, cfg, rng);
  return detail::realize_layout(layout, cfg);
}

// Entry point for feature files: explicit junctions win over the sampled
// feature space; road chains are appended to whatever base map resulted.
inline MapDoc generate_from_file(const FeatureFile& file, const SynthesisConfig& cfg) {
  MapDoc map;
  if (!file.explicit_junctions.empty()) {
    map = generate_map_explicit(file.explicit_junctions, cfg);
  } else if (file.map_feature) {
    map = generate_map(*file.map_feature, cfg);
  } else if (file.road_chains.empty()) {
    throw MalformedInput("feature file carries nothing to generate");
  } else {
    cfg.validate();
    map.metadata.name = "feat2map-generated";
    map.metadata.seed = cfg.seed;
    map.metadata.config = config_json(cfg);
  }
  int counter = static_cast<int>(map.roads.size());
  for (const RoadChainSpec& chain : file.road_chains)
    detail::append_road_chain(map, chain, cfg, counter);
  return map;
}

}  // namespace feat2map
