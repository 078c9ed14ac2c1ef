#pragma once

#include <feat2map/json_util.hpp>
#include <feat2map/map_model.hpp>

#include <json.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace feat2map {

// The characterization of one junction: road count, normalized socket
// rotations (unwrapped, counter-clockwise increasing angles from East),
// control manner and crosswalk flag. socket_types aligns index-wise with
// f_rot; all-InOut unless a one-way configuration is requested.
struct JunctionFeature {
  int f_road = 0;
  std::vector<double> f_rot;  // radians, unwrapped
  ControlType f_ctrl = ControlType::Bare;
  bool f_xwlk = false;
  std::vector<SocketType> socket_types;
};

// Per-socket-index [min, max] rotation intervals on the unwrapped scale.
struct RotationRange {
  std::vector<std::pair<double, double>> intervals;  // radians
};

struct MapFeature {
  std::set<int> road_set;
  std::set<ControlType> ctrl_set;
  std::set<bool> xwlk_set;
  std::map<int, RotationRange> rot_ranges;
};

// Gaps between consecutive f_rot entries, wrap gap last; they sum to 2*pi
// for a CCW-valid rotation vector.
inline std::vector<double> feature_gaps(const std::vector<double>& f_rot) {
  std::vector<double> gaps;
  gaps.reserve(f_rot.size());
  for (std::size_t i = 0; i + 1 < f_rot.size(); ++i) gaps.push_back(f_rot[i + 1] - f_rot[i]);
  gaps.push_back(kTwoPi - (f_rot.back() - f_rot.front()));
  return gaps;
}

inline bool ccw_valid(const std::vector<double>& f_rot) {
  if (f_rot.size() < 2) return f_rot.size() == 1;
  for (double g : feature_gaps(f_rot))
    if (!(g > 0.0 && g < kTwoPi)) return false;
  return true;
}

// One socket per road connected to the junction, rebuilt from road geometry
// and sorted counter-clockwise starting at the socket closest to East.
inline std::vector<RoadSocket> compute_road_sockets(const MapDoc& map,
                                                    const std::string& junction_id) {
  auto it = map.junctions.find(junction_id);
  if (it == map.junctions.end()) throw UnknownJunction("no such junction: " + junction_id);
  const Junction& junction = it->second;

  std::vector<RoadSocket> sockets;
  for (const auto& [rid, road] : map.roads) {
    for (RoadEnd end : {RoadEnd::Start, RoadEnd::End}) {
      const auto& ref = end == RoadEnd::Start ? road.start_junction : road.end_junction;
      if (ref != junction_id) continue;
      const Point2 endpoint = road_endpoint(road, end);
      const Point2 v = endpoint - junction.center;
      sockets.push_back({rid, endpoint, Angle::radians(std::atan2(v.y, v.x))});
    }
  }
  if (sockets.size() < 3)
    throw DegenerateJunction(junction_id + " connects fewer than 3 roads");
  std::sort(sockets.begin(), sockets.end(), [](const RoadSocket& a, const RoadSocket& b) {
    return wrap_two_pi(a.angle.rad()) < wrap_two_pi(b.angle.rad());
  });
  return sockets;
}

struct RotationNormalization {
  double alpha_opt = 0.0;       // radians, in (-pi/4, pi/4]
  std::vector<double> f_rot;    // alpha_opt + cumulative gaps, unwrapped
  double objective = 0.0;       // sum of squared cardinal deviations, rad^2
  std::size_t anchor_index = 0; // input index the re-indexed gap vector starts at
};

// Signed deviation from the nearest cardinal direction, in [-pi/4, pi/4].
inline double cardinal_deviation(double angle) { return std::remainder(angle, kHalfPi); }

inline double rotation_objective(double alpha, const std::vector<double>& cumulative) {
  double obj = 0.0;
  for (double s : cumulative) {
    const double d = cardinal_deviation(alpha + s);
    obj += d * d;
  }
  return obj;
}

// Rotation normalization: find the rotation alpha that minimizes the sum of
// squared deviations of all sockets from the four cardinal directions.
//
// The gap vector is first re-indexed so the maximal gap comes first (ties
// keep the earliest entry). Each socket's optimal cardinal then lies on one
// of the two cardinals bracketing its cumulative angle, so the exact optimum
// is found by enumerating the 2^N bracket assignments and taking the
// closed-form minimizer alpha = mean(c_i - s_i) of each. Ties break toward
// smaller |alpha|, then toward the lexicographically smaller assignment.
inline RotationNormalization normalize_rotation(const std::vector<double>& gaps) {
  const std::size_t n = gaps.size();
  if (n == 0) throw Error("normalize_rotation: empty gap vector");
  double sum = 0.0;
  for (double g : gaps) {
    if (!(g > 0.0 && g < kTwoPi)) throw GapSumMismatch("gap outside (0, 2*pi)");
    sum += g;
  }
  if (std::abs(sum - kTwoPi) > 1e-6)
    throw GapSumMismatch("gaps sum to " + std::to_string(sum) + ", expected 2*pi");

  std::size_t anchor = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (gaps[i] > gaps[anchor]) anchor = i;

  std::vector<double> cumulative(n, 0.0);
  for (std::size_t i = 1; i < n; ++i)
    cumulative[i] = cumulative[i - 1] + gaps[(anchor + i - 1) % n];

  double best_alpha = 0.0;
  double best_obj = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double base = std::floor(cumulative[i] / kHalfPi);
      const double cardinal = (base + ((mask >> i) & 1u)) * kHalfPi;
      acc += cardinal - cumulative[i];
    }
    double alpha = std::remainder(acc / static_cast<double>(n), kHalfPi);
    if (alpha <= -0.25 * kPi) alpha += kHalfPi;
    const double obj = rotation_objective(alpha, cumulative);
    // objectives within rounding noise count as ties; symmetric junctions
    // produce exact ties that must resolve to the smaller |alpha|
    const bool tie = std::abs(obj - best_obj) <= 1e-9 * (1.0 + std::min(obj, best_obj));
    const bool better =
        tie ? (std::abs(alpha) < std::abs(best_alpha) ||
               (std::abs(alpha) == std::abs(best_alpha) && mask < best_mask))
            : obj < best_obj;
    if (better) {
      best_obj = obj;
      best_alpha = alpha;
      best_mask = mask;
    }
  }

  RotationNormalization out;
  out.alpha_opt = best_alpha;
  out.objective = rotation_objective(best_alpha, cumulative);
  out.anchor_index = anchor;
  out.f_rot.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.f_rot[i] = best_alpha + cumulative[i];
  return out;
}

namespace detail {

inline SocketType classify_socket_type(const Road& road, const std::string& junction_id) {
  const auto end = road_end_at(road, junction_id);
  if (!end) throw UnresolvedReference(road.id + " does not touch " + junction_id);
  const bool in = incoming_lane_at(road, *end).has_value();
  const bool out = outgoing_lane_at(road, *end).has_value();
  if (in && out) return SocketType::InOut;
  if (in) return SocketType::In;
  if (out) return SocketType::Out;
  throw Error(road.id + " carries no lanes");
}

}  // namespace detail

inline JunctionFeature junction_feature(const MapDoc& map, const std::string& junction_id) {
  const auto sockets = compute_road_sockets(map, junction_id);
  std::vector<Angle> angles;
  angles.reserve(sockets.size());
  for (const RoadSocket& s : sockets) angles.push_back(s.angle);
  const auto norm = normalize_rotation(ccw_gap_angles(angles));

  const Junction& junction = map.junctions.at(junction_id);
  JunctionFeature f;
  f.f_road = static_cast<int>(sockets.size());
  f.f_rot = norm.f_rot;
  f.f_ctrl = junction.control;
  f.f_xwlk = junction.has_crosswalks;
  f.socket_types.reserve(sockets.size());
  for (std::size_t i = 0; i < sockets.size(); ++i) {
    const RoadSocket& s = sockets[(norm.anchor_index + i) % sockets.size()];
    f.socket_types.push_back(detail::classify_socket_type(map.roads.at(s.road_id), junction_id));
  }
  return f;
}

// Union of the discrete feature values plus element-wise min/max rotation
// intervals per road count, across every junction of every input map.
inline MapFeature extract_map_feature(std::span<const MapDoc> maps) {
  if (maps.empty()) throw EmptyInput("no input maps");
  for (const MapDoc& map : maps)
    if (map.junctions.empty()) throw NoJunctions("input map has no junctions");

  MapFeature out;
  for (const MapDoc& map : maps) {
    for (const auto& [jid, junction] : map.junctions) {
      const JunctionFeature f = junction_feature(map, jid);
      out.road_set.insert(f.f_road);
      out.ctrl_set.insert(f.f_ctrl);
      out.xwlk_set.insert(f.f_xwlk);
      auto [it, fresh] = out.rot_ranges.try_emplace(f.f_road);
      if (fresh) {
        for (double v : f.f_rot) it->second.intervals.emplace_back(v, v);
      } else {
        for (std::size_t i = 0; i < f.f_rot.size(); ++i) {
          it->second.intervals[i].first = std::min(it->second.intervals[i].first, f.f_rot[i]);
          it->second.intervals[i].second = std::max(it->second.intervals[i].second, f.f_rot[i]);
        }
      }
    }
  }
  return out;
}

// --- feature files ("feat2map-features/1", angles in degrees) ---

struct RoadChainSegment {
  Point2 start;
  Angle start_heading;
  Point2 end;
  Angle end_heading;
  SocketType socket_type = SocketType::InOut;
};

struct RoadChainSpec {
  std::vector<RoadChainSegment> segments;
};

struct FeatureFile {
  std::optional<MapFeature> map_feature;
  std::vector<JunctionFeature> explicit_junctions;
  std::vector<RoadChainSpec> road_chains;
};

inline std::string serialize_features(const FeatureFile& file) {
  JsonWriter w;
  w.begin_object();
  w.key("ctrl_set").begin_array();
  if (file.map_feature)
    for (ControlType c : file.map_feature->ctrl_set) w.value(control_name(c));
  w.end_array();

  w.key("explicit_junctions").begin_array();
  for (const JunctionFeature& f : file.explicit_junctions) {
    w.begin_object();
    w.key("f_ctrl").value(control_name(f.f_ctrl));
    w.key("f_road").value(f.f_road);
    w.key("f_rot").begin_array();
    for (double v : f.f_rot) w.value(rad2deg(v));
    w.end_array();
    w.key("f_xwlk").value(f.f_xwlk);
    w.key("socket_types").begin_array();
    for (SocketType t : f.socket_types) w.value(socket_type_name(t));
    w.end_array();
    w.end_object();
  }
  w.end_array();

  w.key("road_chains").begin_array();
  for (const RoadChainSpec& chain : file.road_chains) {
    w.begin_array();
    for (const RoadChainSegment& seg : chain.segments) {
      w.begin_object();
      w.key("end").begin_array().value(seg.end.x).value(seg.end.y).end_array();
      w.key("end_heading").value(seg.end_heading.deg());
      w.key("socket_type").value(socket_type_name(seg.socket_type));
      w.key("start").begin_array().value(seg.start.x).value(seg.start.y).end_array();
      w.key("start_heading").value(seg.start_heading.deg());
      w.end_object();
    }
    w.end_array();
  }
  w.end_array();

  w.key("road_set").begin_array();
  if (file.map_feature)
    for (int n : file.map_feature->road_set) w.value(n);
  w.end_array();

  w.key("rot_ranges").begin_object();
  if (file.map_feature) {
    for (const auto& [n, range] : file.map_feature->rot_ranges) {
      w.key(std::to_string(n)).begin_array();
      for (const auto& [lo, hi] : range.intervals)
        w.begin_array().value(rad2deg(lo)).value(rad2deg(hi)).end_array();
      w.end_array();
    }
  }
  w.end_object();

  w.key("schema_version").value("feat2map-features/1");
  w.key("units").value("degrees");

  w.key("xwlk_set").begin_array();
  if (file.map_feature)
    for (bool b : file.map_feature->xwlk_set) w.value(b);
  w.end_array();

  w.end_object();
  std::string out = w.str();
  out += '\n';
  return out;
}

namespace detail {

inline double finite_number(const nlohmann::json& j, const std::string& context) {
  if (!j.is_number()) throw MalformedInput("expected a number at " + context);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw NonFiniteNumber("non-finite number at " + context);
  return v;
}

// Unwrap a rotation vector so it increases strictly; entries may be given
// wrapped to (-180, 180] as well as already unwrapped.
inline std::vector<double> unwrap_rotation(std::vector<double> rot_rad) {
  for (std::size_t i = 1; i < rot_rad.size(); ++i)
    while (rot_rad[i] <= rot_rad[i - 1]) rot_rad[i] += kTwoPi;
  return rot_rad;
}

}  // namespace detail

inline FeatureFile parse_features(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema_version", "") != "feat2map-features/1")
    throw MalformedInput("expected schema_version feat2map-features/1");

  FeatureFile file;
  try {
    if (j.contains("road_set") && !j["road_set"].empty()) {
      MapFeature f;
      for (const auto& v : j["road_set"]) f.road_set.insert(v.get<int>());
      for (const auto& v : j["ctrl_set"]) f.ctrl_set.insert(control_from_name(v.get<std::string>()));
      for (const auto& v : j["xwlk_set"]) f.xwlk_set.insert(v.get<bool>());
      for (const auto& [key, arr] : j["rot_ranges"].items()) {
        RotationRange range;
        for (const auto& pair : arr)
          range.intervals.emplace_back(deg2rad(detail::finite_number(pair[0], "rot_ranges")),
                                       deg2rad(detail::finite_number(pair[1], "rot_ranges")));
        f.rot_ranges[std::stoi(key)] = std::move(range);
      }
      for (int n : f.road_set)
        if (!f.rot_ranges.count(n) ||
            f.rot_ranges[n].intervals.size() != static_cast<std::size_t>(n))
          throw MalformedInput("rot_ranges missing or wrong length for n=" + std::to_string(n));
      for (const auto& [n, range] : f.rot_ranges)
        for (const auto& [lo, hi] : range.intervals)
          if (!(lo <= hi)) throw MalformedInput("rotation interval with min > max");
      file.map_feature = std::move(f);
    }

    for (const auto& ej : j.value("explicit_junctions", nlohmann::json::array())) {
      JunctionFeature f;
      f.f_road = ej.at("f_road").get<int>();
      std::vector<double> rot;
      for (const auto& v : ej.at("f_rot")) rot.push_back(deg2rad(detail::finite_number(v, "f_rot")));
      f.f_rot = detail::unwrap_rotation(std::move(rot));
      f.f_ctrl = control_from_name(ej.at("f_ctrl").get<std::string>());
      f.f_xwlk = ej.at("f_xwlk").get<bool>();
      if (ej.contains("socket_types"))
        for (const auto& v : ej["socket_types"])
          f.socket_types.push_back(socket_type_from_name(v.get<std::string>()));
      if (f.socket_types.empty())
        f.socket_types.assign(static_cast<std::size_t>(f.f_road), SocketType::InOut);
      if (f.f_road < 3 || f.f_rot.size() != static_cast<std::size_t>(f.f_road) ||
          f.socket_types.size() != static_cast<std::size_t>(f.f_road) || !ccw_valid(f.f_rot))
        throw MalformedInput("invalid explicit junction feature");
      file.explicit_junctions.push_back(std::move(f));
    }

    for (const auto& chain : j.value("road_chains", nlohmann::json::array())) {
      RoadChainSpec spec;
      for (const auto& seg : chain) {
        RoadChainSegment s;
        s.start = {detail::finite_number(seg.at("start")[0], "start"),
                   detail::finite_number(seg.at("start")[1], "start")};
        s.end = {detail::finite_number(seg.at("end")[0], "end"),
                 detail::finite_number(seg.at("end")[1], "end")};
        s.start_heading = Angle::degrees(detail::finite_number(seg.at("start_heading"), "start_heading"));
        s.end_heading = Angle::degrees(detail::finite_number(seg.at("end_heading"), "end_heading"));
        s.socket_type = socket_type_from_name(seg.value("socket_type", "InOut"));
        spec.segments.push_back(s);
      }
      if (spec.segments.empty()) throw MalformedInput("empty road chain");
      file.road_chains.push_back(std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("invalid feature file: ") + e.what());
  }
  return file;
}

}  // namespace feat2map
