#pragma once

#include <feat2map/json_util.hpp>
#include <feat2map/map_model.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace feat2map {

inline const char* lane_kind_name(LaneKind k) {
  return k == LaneKind::RoadLane ? "road" : "junction";
}

namespace detail {

// Radian angles sitting right at the pi boundary can round to a 9-decimal
// literal just outside (-pi, pi]; emit the value the literal will wrap to,
// so serialize(parse(...)) is byte-stable.
inline double angle_io_value(Angle a) {
  const double printed = std::strtod(fmt_fixed9(a.rad()).c_str(), nullptr);
  if (printed > kPi || printed <= -kPi) return wrap_pi(printed);
  return a.rad();
}

}  // namespace detail

inline const char* device_kind_name(DeviceKind k) {
  return k == DeviceKind::Signal ? "signal" : "stop_sign";
}

// Canonical "feat2map/1" serialization: UTF-8, sorted object keys, '\n' line
// ends, 9-decimal numbers, arrays sorted by element id. Equal maps always
// produce equal bytes.
inline std::string serialize_map(const MapDoc& map) {
  JsonWriter w;
  const auto point = [&w](Point2 p) { w.begin_array().value(p.x).value(p.y).end_array(); };
  const auto curve = [&w, &point](const CubicBezier& c) {
    w.begin_array();
    point(c.p0);
    point(c.p1);
    point(c.p2);
    point(c.p3);
    w.end_array();
  };
  const auto id_list = [&w](const std::vector<std::string>& ids) {
    w.begin_array();
    for (const auto& id : ids) w.value(id);
    w.end_array();
  };
  const auto opt_id = [&w](const std::optional<std::string>& id) {
    if (id)
      w.value(*id);
    else
      w.null();
  };

  w.begin_object();

  w.key("controls").begin_array();
  for (const auto& [id, dev] : map.controls) {
    w.begin_object();
    w.key("facing").value(detail::angle_io_value(dev.facing));
    w.key("id").value(id);
    w.key("junction").value(dev.junction_id);
    w.key("kind").value(device_kind_name(dev.kind));
    w.key("position");
    point(dev.position);
    w.key("road").value(dev.road_id);
    w.end_object();
  }
  w.end_array();

  w.key("crosswalks").begin_array();
  for (const auto& [id, xw] : map.crosswalks) {
    w.begin_object();
    w.key("id").value(id);
    w.key("junction").value(xw.junction_id);
    w.key("polygon").begin_array();
    for (const Point2& p : xw.polygon) point(p);
    w.end_array();
    w.key("road").value(xw.road_id);
    w.key("width").value(xw.width);
    w.end_object();
  }
  w.end_array();

  w.key("junctions").begin_array();
  for (const auto& [id, junction] : map.junctions) {
    w.begin_object();
    w.key("center");
    point(junction.center);
    w.key("control").value(control_name(junction.control));
    w.key("has_crosswalks").value(junction.has_crosswalks);
    w.key("id").value(id);
    w.key("junction_lanes");
    id_list(junction.junction_lane_ids);
    w.key("radius").value(junction.radius);
    w.key("sockets").begin_array();
    for (const RoadSocket& s : junction.sockets) {
      w.begin_object();
      w.key("angle").value(detail::angle_io_value(s.angle));
      w.key("endpoint");
      point(s.endpoint);
      w.key("road").value(s.road_id);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();

  w.key("lanes").begin_array();
  for (const auto& [id, lane] : map.lanes) {
    w.begin_object();
    w.key("id").value(id);
    w.key("kind").value(lane_kind_name(lane.kind));
    w.key("predecessors");
    id_list(lane.predecessors);
    w.key("reference");
    curve(lane.reference);
    w.key("successors");
    id_list(lane.successors);
    w.key("width").value(lane.width);
    w.end_object();
  }
  w.end_array();

  w.key("metadata").begin_object();
  w.key("config").value(map.metadata.config);
  w.key("name").value(map.metadata.name);
  w.key("seed").value(map.metadata.seed);
  w.end_object();

  w.key("roads").begin_array();
  for (const auto& [id, road] : map.roads) {
    w.begin_object();
    w.key("backward_lane");
    opt_id(road.backward_lane);
    w.key("end_junction");
    opt_id(road.end_junction);
    w.key("forward_lane");
    opt_id(road.forward_lane);
    w.key("id").value(id);
    w.key("reference");
    curve(road.reference);
    w.key("socket_type").value(socket_type_name(road.socket_type));
    w.key("start_junction");
    opt_id(road.start_junction);
    w.end_object();
  }
  w.end_array();

  w.key("schema_version").value("feat2map/1");

  w.key("units").begin_object();
  w.key("angle").value("radians");
  w.key("length").value("meters");
  w.end_object();

  w.end_object();
  std::string out = w.str();
  out += '\n';
  return out;
}

struct ParsedMap {
  MapDoc map;
  ValidationReport report;  // structural findings; a warning unless --strict
};

namespace detail {

inline double io_number(const nlohmann::json& j, const char* context) {
  if (!j.is_number()) throw MalformedInput(std::string("expected a number in ") + context);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw NonFiniteNumber(std::string("non-finite number in ") + context);
  return v;
}

inline Point2 io_point(const nlohmann::json& j, const char* context) {
  if (!j.is_array() || j.size() != 2) throw MalformedInput(std::string("expected [x, y] in ") + context);
  return {io_number(j[0], context), io_number(j[1], context)};
}

inline CubicBezier io_curve(const nlohmann::json& j, const char* context) {
  if (!j.is_array() || j.size() != 4)
    throw MalformedInput(std::string("expected 4 control points in ") + context);
  return CubicBezier(io_point(j[0], context), io_point(j[1], context), io_point(j[2], context),
                     io_point(j[3], context));
}

inline std::optional<std::string> io_opt_id(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

}  // namespace detail

inline ParsedMap parse_map(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema_version", "") != "feat2map/1")
    throw MalformedInput("expected schema_version feat2map/1");

  MapDoc map;
  try {
    for (const auto& r : j.value("roads", nlohmann::json::array())) {
      Road road;
      road.id = r.at("id").get<std::string>();
      road.reference = detail::io_curve(r.at("reference"), "road reference");
      road.socket_type = socket_type_from_name(r.at("socket_type").get<std::string>());
      road.forward_lane = detail::io_opt_id(r.at("forward_lane"));
      road.backward_lane = detail::io_opt_id(r.at("backward_lane"));
      road.start_junction = detail::io_opt_id(r.at("start_junction"));
      road.end_junction = detail::io_opt_id(r.at("end_junction"));
      map.roads.emplace(road.id, std::move(road));
    }
    for (const auto& l : j.value("lanes", nlohmann::json::array())) {
      Lane lane;
      lane.id = l.at("id").get<std::string>();
      const std::string kind = l.at("kind").get<std::string>();
      if (kind != "road" && kind != "junction") throw MalformedInput("unknown lane kind: " + kind);
      lane.kind = kind == "road" ? LaneKind::RoadLane : LaneKind::JunctionLane;
      lane.reference = detail::io_curve(l.at("reference"), "lane reference");
      lane.width = detail::io_number(l.at("width"), "lane width");
      for (const auto& p : l.at("predecessors")) lane.predecessors.push_back(p.get<std::string>());
      for (const auto& s : l.at("successors")) lane.successors.push_back(s.get<std::string>());
      map.lanes.emplace(lane.id, std::move(lane));
    }
    for (const auto& junction_json : j.value("junctions", nlohmann::json::array())) {
      Junction junction;
      junction.id = junction_json.at("id").get<std::string>();
      junction.center = detail::io_point(junction_json.at("center"), "junction center");
      junction.radius = detail::io_number(junction_json.at("radius"), "junction radius");
      junction.control = control_from_name(junction_json.at("control").get<std::string>());
      junction.has_crosswalks = junction_json.at("has_crosswalks").get<bool>();
      for (const auto& lid : junction_json.at("junction_lanes"))
        junction.junction_lane_ids.push_back(lid.get<std::string>());
      for (const auto& s : junction_json.at("sockets")) {
        RoadSocket socket;
        socket.road_id = s.at("road").get<std::string>();
        socket.endpoint = detail::io_point(s.at("endpoint"), "socket endpoint");
        socket.angle = Angle::radians(detail::io_number(s.at("angle"), "socket angle"));
        junction.sockets.push_back(std::move(socket));
      }
      map.junctions.emplace(junction.id, std::move(junction));
    }
    for (const auto& c : j.value("controls", nlohmann::json::array())) {
      TrafficControlDevice dev;
      dev.id = c.at("id").get<std::string>();
      const std::string kind = c.at("kind").get<std::string>();
      if (kind != "signal" && kind != "stop_sign")
        throw MalformedInput("unknown device kind: " + kind);
      dev.kind = kind == "signal" ? DeviceKind::Signal : DeviceKind::StopSign;
      dev.junction_id = c.at("junction").get<std::string>();
      dev.road_id = c.at("road").get<std::string>();
      dev.position = detail::io_point(c.at("position"), "device position");
      dev.facing = Angle::radians(detail::io_number(c.at("facing"), "device facing"));
      map.controls.emplace(dev.id, std::move(dev));
    }
    for (const auto& x : j.value("crosswalks", nlohmann::json::array())) {
      Crosswalk xw;
      xw.id = x.at("id").get<std::string>();
      xw.junction_id = x.at("junction").get<std::string>();
      xw.road_id = x.at("road").get<std::string>();
      xw.width = detail::io_number(x.at("width"), "crosswalk width");
      const auto& poly = x.at("polygon");
      if (!poly.is_array() || poly.size() != 4)
        throw MalformedInput("crosswalk polygon needs 4 corners");
      for (std::size_t i = 0; i < 4; ++i) xw.polygon[i] = detail::io_point(poly[i], "crosswalk corner");
      map.crosswalks.emplace(xw.id, std::move(xw));
    }
    if (j.contains("metadata")) {
      const auto& m = j["metadata"];
      map.metadata.name = m.value("name", "");
      map.metadata.seed = m.value("seed", std::uint64_t{0});
      map.metadata.config = m.value("config", "");
    }
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("invalid map file: ") + e.what());
  }

  // dangling references are a hard parse error
  ValidationReport structural = validate_map(map);
  for (const Violation& v : structural.violations)
    if (v.code == "xref")
      throw UnresolvedReference(v.element_id + ": " + v.message);

  return {std::move(map), std::move(structural)};
}

// --- bird-view SVG ---

struct SvgOptions {
  double scale = 1.0;
  bool show_ids = false;
};

namespace detail {

inline std::string fmt3(double v) {
  if (v == 0.0) v = 0.0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct SvgFrame {
  double min_x = 0.0, min_y = 0.0, max_x = 1.0, max_y = 1.0;
  double scale = 1.0, margin = 10.0;
  double sx(double x) const { return (x - min_x + margin) * scale; }
  double sy(double y) const { return (max_y - y + margin) * scale; }
  double width() const { return (max_x - min_x + 2.0 * margin) * scale; }
  double height() const { return (max_y - min_y + 2.0 * margin) * scale; }
};

}  // namespace detail

// Deterministic bird-view rendering: road lanes gray, junction lanes light
// blue, one <g class="junction"> per junction carrying its disc outline,
// crosswalks and control glyphs.
inline std::string render_svg(const MapDoc& map, const SvgOptions& options = {}) {
  detail::SvgFrame frame;
  frame.scale = options.scale;
  bool any = false;
  const auto grow = [&frame, &any](Point2 p, double pad = 0.0) {
    if (!any) {
      frame.min_x = p.x - pad;
      frame.max_x = p.x + pad;
      frame.min_y = p.y - pad;
      frame.max_y = p.y + pad;
      any = true;
      return;
    }
    frame.min_x = std::min(frame.min_x, p.x - pad);
    frame.max_x = std::max(frame.max_x, p.x + pad);
    frame.min_y = std::min(frame.min_y, p.y - pad);
    frame.max_y = std::max(frame.max_y, p.y + pad);
  };
  for (const auto& [id, junction] : map.junctions) grow(junction.center, junction.radius);
  for (const auto& [id, lane] : map.lanes)
    for (const Point2& p : sample_polyline(lane.reference)) grow(p);
  for (const auto& [id, dev] : map.controls) grow(dev.position, 2.0);

  using detail::fmt3;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt3(frame.width()) + "\" height=\"" + fmt3(frame.height()) + "\" viewBox=\"0 0 " +
         fmt3(frame.width()) + " " + fmt3(frame.height()) + "\">\n";

  const auto polyline = [&svg, &frame](const CubicBezier& curve, const char* color, double width) {
    svg += "  <polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"" + fmt3(width) + "\" points=\"";
    bool first = true;
    for (const Point2& p : sample_polyline(curve)) {
      if (!first) svg += ' ';
      first = false;
      svg += fmt3(frame.sx(p.x)) + ',' + fmt3(frame.sy(p.y));
    }
    svg += "\"/>\n";
  };

  for (const auto& [id, lane] : map.lanes)
    if (lane.kind == LaneKind::RoadLane)
      polyline(lane.reference, "#8c8c8c", lane.width * frame.scale);
  for (const auto& [id, lane] : map.lanes)
    if (lane.kind == LaneKind::JunctionLane)
      polyline(lane.reference, "#a8cbe8", lane.width * frame.scale);

  for (const auto& [id, junction] : map.junctions) {
    svg += "  <g class=\"junction\" id=\"" + json_escape(id) + "\">\n";
    svg += "    <circle cx=\"" + fmt3(frame.sx(junction.center.x)) + "\" cy=\"" +
           fmt3(frame.sy(junction.center.y)) + "\" r=\"" + fmt3(junction.radius * frame.scale) +
           "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\" stroke-width=\"0.6\"/>\n";
    for (const auto& [xid, xw] : map.crosswalks) {
      if (xw.junction_id != id) continue;
      svg += "    <polygon class=\"crosswalk\" fill=\"#ffffff\" stroke=\"#555555\" "
             "stroke-width=\"0.5\" points=\"";
      bool first = true;
      for (const Point2& p : xw.polygon) {
        if (!first) svg += ' ';
        first = false;
        svg += fmt3(frame.sx(p.x)) + ',' + fmt3(frame.sy(p.y));
      }
      svg += "\"/>\n";
    }
    for (const auto& [did, dev] : map.controls) {
      if (dev.junction_id != id) continue;
      const double cx = frame.sx(dev.position.x);
      const double cy = frame.sy(dev.position.y);
      if (dev.kind == DeviceKind::Signal) {
        svg += "    <circle class=\"signal\" cx=\"" + fmt3(cx) + "\" cy=\"" + fmt3(cy) +
               "\" r=\"" + fmt3(1.5 * frame.scale) +
               "\" fill=\"#2f9e44\" stroke=\"#1b5e20\" stroke-width=\"0.4\"/>\n";
      } else {
        svg += "    <polygon class=\"stop-sign\" fill=\"#c0392b\" stroke=\"#7b241c\" "
               "stroke-width=\"0.4\" points=\"";
        for (int k = 0; k < 8; ++k) {
          if (k) svg += ' ';
          const double a = (22.5 + 45.0 * k) * kPi / 180.0;
          svg += fmt3(cx + 1.5 * frame.scale * std::cos(a)) + ',' +
                 fmt3(cy + 1.5 * frame.scale * std::sin(a));
        }
        svg += "\"/>\n";
      }
    }
    if (options.show_ids)
      svg += "    <text x=\"" + fmt3(frame.sx(junction.center.x)) + "\" y=\"" +
             fmt3(frame.sy(junction.center.y)) + "\" font-size=\"" + fmt3(4.0 * frame.scale) +
             "\" fill=\"#333333\" text-anchor=\"middle\">" + json_escape(id) + "</text>\n";
    svg += "  </g>\n";
  }

  if (options.show_ids) {
    for (const auto& [id, road] : map.roads) {
      const Point2 mid = bezier_eval(road.reference, 0.5);
      svg += "  <text x=\"" + fmt3(frame.sx(mid.x)) + "\" y=\"" + fmt3(frame.sy(mid.y)) +
             "\" font-size=\"" + fmt3(3.0 * frame.scale) +
             "\" fill=\"#555555\" text-anchor=\"middle\">" + json_escape(id) + "</text>\n";
    }
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace feat2map
