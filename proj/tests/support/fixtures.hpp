#pragma once

// Shared fixtures: hand-picked gap vectors whose normalized rotations land on
// known anchors, a synthetic map suite shaped like a downtown extraction
// (road counts {3,4}, controls {signal,stop}, crosswalks {T,F}), and the
// manual-feature inputs (mega junction, one-way T, closed road chain).

#include <feat2map/feat2map.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace fixtures {

using namespace feat2map;

inline JunctionFeature jf(int n, std::vector<double> rot_deg, ControlType ctrl, bool xwlk,
                          std::vector<SocketType> types = {}) {
  JunctionFeature f;
  f.f_road = n;
  for (double d : rot_deg) f.f_rot.push_back(deg2rad(d));
  f.f_ctrl = ctrl;
  f.f_xwlk = xwlk;
  f.socket_types = types.empty()
                       ? std::vector<SocketType>(static_cast<std::size_t>(n), SocketType::InOut)
                       : std::move(types);
  return f;
}

// Gap vectors engineered so the normalization anchor comes out at exactly
// -22.62 / +9.81 degrees for the three-legged pair and -5.26 / +9.81 for the
// four-legged pair (each sits at a stationary point of its assignment).
inline std::vector<double> gaps_deg_a3() { return {207.86, 102.14, 50.0}; }
inline std::vector<double> gaps_deg_b3() { return {165.0, 90.57, 104.43}; }
inline std::vector<double> gaps_deg_a4() { return {100.0, 86.0, 89.04, 84.96}; }
inline std::vector<double> gaps_deg_b4() { return {111.0, 29.26, 109.24, 110.5}; }

inline std::vector<double> normalized_rot(const std::vector<double>& gaps_deg) {
  std::vector<double> gaps;
  for (double g : gaps_deg) gaps.push_back(deg2rad(g));
  return normalize_rotation(gaps).f_rot;
}

inline JunctionFeature jf_from_gaps(const std::vector<double>& gaps_deg, ControlType ctrl,
                                    bool xwlk) {
  JunctionFeature f;
  f.f_rot = normalized_rot(gaps_deg);
  f.f_road = static_cast<int>(f.f_rot.size());
  f.f_ctrl = ctrl;
  f.f_xwlk = xwlk;
  f.socket_types.assign(f.f_rot.size(), SocketType::InOut);
  return f;
}

// Two maps that together realize every discrete cell of {3,4} x
// {signal,stop} x {T,F} and whose extraction hits the engineered rotation
// extremes element-wise.
inline std::vector<MapDoc> sf_like_maps() {
  SynthesisConfig cfg;
  cfg.seed = 101;
  const MapDoc m1 = generate_map_explicit(
      {jf_from_gaps(gaps_deg_a3(), ControlType::Signal, true),
       jf_from_gaps(gaps_deg_b4(), ControlType::Stop, false),
       jf_from_gaps(gaps_deg_a4(), ControlType::Stop, true)},
      cfg);
  cfg.seed = 102;
  const MapDoc m2 = generate_map_explicit(
      {jf_from_gaps(gaps_deg_b3(), ControlType::Stop, true),
       jf_from_gaps(gaps_deg_a4(), ControlType::Signal, false),
       jf_from_gaps(gaps_deg_a3(), ControlType::Signal, false)},
      cfg);
  return {m1, m2};
}

// A third map whose junctions are uncontrolled, for multi-map merging.
inline MapDoc bare_map() {
  SynthesisConfig cfg;
  cfg.seed = 103;
  return generate_map_explicit({jf_from_gaps(gaps_deg_a3(), ControlType::Bare, false),
                                jf_from_gaps(gaps_deg_a4(), ControlType::Bare, false)},
                               cfg);
}

inline MapFeature table1_feature() {
  const auto maps = sf_like_maps();
  return extract_map_feature(maps);
}

inline MapFeature merged_feature() {
  auto maps = sf_like_maps();
  maps.push_back(bare_map());
  return extract_map_feature(maps);
}

// Two-junction network: a four-legged signal junction next to a three-legged
// stop junction, six two-way roads, 12 road lanes and 18 junction lanes.
inline MapDoc fig1_map() {
  SynthesisConfig cfg;
  cfg.seed = 7;
  return generate_map_explicit({jf(4, {0, 90, 180, 270}, ControlType::Signal, false),
                                jf(3, {0, 180, 270}, ControlType::Stop, false)},
                               cfg);
}

inline JunctionFeature mega_feature() {
  return jf(5, {0, 72, 144, 216, 288}, ControlType::Signal, true);
}

inline JunctionFeature oneway_t_feature() {
  return jf(3, {0, 90, 180}, ControlType::Signal, false,
            {SocketType::In, SocketType::Out, SocketType::InOut});
}

// Four curve segments tracing a closed ring of radius 50.
inline RoadChainSpec circle_chain() {
  RoadChainSpec spec;
  const double r = 50.0;
  const Point2 e{r, 0}, n{0, r}, w{-r, 0}, s{0, -r};
  spec.segments = {
      {e, Angle::degrees(90), n, Angle::degrees(180), SocketType::InOut},
      {n, Angle::degrees(180), w, Angle::degrees(270), SocketType::InOut},
      {w, Angle::degrees(270), s, Angle::degrees(0), SocketType::InOut},
      {s, Angle::degrees(0), e, Angle::degrees(90), SocketType::InOut},
  };
  return spec;
}

// Brute-force oracle: sweep alpha over [0, 90) degrees at 0.01-degree steps
// and return the minimal objective in squared degrees. Independent of the
// enumeration solver; both anchor the cumulative angles at the maximal gap.
inline double brute_force_min_objective_deg2(const std::vector<double>& gaps_deg) {
  const std::size_t n = gaps_deg.size();
  std::size_t anchor = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (gaps_deg[i] > gaps_deg[anchor]) anchor = i;
  std::vector<double> cumulative(n, 0.0);
  for (std::size_t i = 1; i < n; ++i)
    cumulative[i] = cumulative[i - 1] + gaps_deg[(anchor + i - 1) % n];
  double best = std::numeric_limits<double>::infinity();
  for (double alpha = 0.0; alpha < 90.0; alpha += 0.01) {
    double obj = 0.0;
    for (double s : cumulative) {
      const double d = std::remainder(alpha + s, 90.0);
      obj += d * d;
    }
    best = std::min(best, obj);
  }
  return best;
}

inline std::vector<double> random_gaps(Rng& rng, int n) {
  std::vector<double> raw(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& g : raw) {
    g = rng.uniform(0.05, 1.0);
    total += g;
  }
  for (double& g : raw) g = g / total * kTwoPi;
  return raw;
}

// Clone a map shifted by (dx, dy) with suffixed ids and merge it in; geometry
// is translated, topology is untouched.
inline MapDoc merge_translated(const MapDoc& base, double dx, double dy,
                               const std::string& suffix) {
  MapDoc out = base;
  const Point2 offset{dx, dy};
  const auto rid = [&suffix](const std::string& id) { return id + suffix; };
  const auto shift_curve = [&offset](const CubicBezier& c) {
    return CubicBezier(c.p0 + offset, c.p1 + offset, c.p2 + offset, c.p3 + offset);
  };
  for (const auto& [id, road] : base.roads) {
    Road r = road;
    r.id = rid(id);
    r.reference = shift_curve(road.reference);
    if (r.forward_lane) r.forward_lane = rid(*r.forward_lane);
    if (r.backward_lane) r.backward_lane = rid(*r.backward_lane);
    if (r.start_junction) r.start_junction = rid(*r.start_junction);
    if (r.end_junction) r.end_junction = rid(*r.end_junction);
    out.roads.emplace(r.id, std::move(r));
  }
  for (const auto& [id, lane] : base.lanes) {
    Lane l = lane;
    l.id = rid(id);
    l.reference = shift_curve(lane.reference);
    for (auto& p : l.predecessors) p = rid(p);
    for (auto& s : l.successors) s = rid(s);
    out.lanes.emplace(l.id, std::move(l));
  }
  for (const auto& [id, junction] : base.junctions) {
    Junction j = junction;
    j.id = rid(id);
    j.center = junction.center + offset;
    for (auto& s : j.sockets) {
      s.road_id = rid(s.road_id);
      s.endpoint = s.endpoint + offset;
    }
    for (auto& l : j.junction_lane_ids) l = rid(l);
    out.junctions.emplace(j.id, std::move(j));
  }
  for (const auto& [id, dev] : base.controls) {
    TrafficControlDevice d = dev;
    d.id = rid(id);
    d.junction_id = rid(d.junction_id);
    d.road_id = rid(d.road_id);
    d.position = dev.position + offset;
    out.controls.emplace(d.id, std::move(d));
  }
  for (const auto& [id, xw] : base.crosswalks) {
    Crosswalk c = xw;
    c.id = rid(id);
    c.junction_id = rid(c.junction_id);
    c.road_id = rid(c.road_id);
    for (auto& p : c.polygon) p = p + offset;
    out.crosswalks.emplace(c.id, std::move(c));
  }
  return out;
}

}  // namespace fixtures
