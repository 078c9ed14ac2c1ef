#include "support/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace feat2map;
using Catch::Approx;

TEST_CASE("compute_road_sockets") {
  SECTION("symmetric four-way, CCW order from East") {
    SynthesisConfig cfg;
    const MapDoc map = generate_map_explicit(
        {fixtures::jf(4, {0, 90, 180, 270}, ControlType::Signal, false)}, cfg);
    const auto sockets = compute_road_sockets(map, "J0");
    REQUIRE(sockets.size() == 4);
    CHECK(sockets[0].angle.deg() == Approx(0.0).margin(1e-9));
    CHECK(sockets[1].angle.deg() == Approx(90.0));
    CHECK(sockets[2].angle.deg() == Approx(180.0));
    CHECK(sockets[3].angle.deg() == Approx(-90.0));  // canonical (-180, 180]
  }

  SECTION("three sockets at the T junction") {
    const MapDoc map = fixtures::fig1_map();
    CHECK(compute_road_sockets(map, "J1").size() == 3);
  }

  SECTION("unknown and degenerate junctions") {
    MapDoc map = fixtures::fig1_map();
    CHECK_THROWS_AS(compute_road_sockets(map, "nope"), UnknownJunction);
    // strip one road off the T junction
    const auto sockets = compute_road_sockets(map, "J1");
    map.roads.at(sockets[0].road_id).start_junction.reset();
    map.roads.at(sockets[0].road_id).end_junction.reset();
    CHECK_THROWS_AS(compute_road_sockets(map, "J1"), DegenerateJunction);
  }
}

TEST_CASE("normalize_rotation") {
  SECTION("symmetric cross lands on the cardinals") {
    const auto r = normalize_rotation({kHalfPi, kHalfPi, kHalfPi, kHalfPi});
    CHECK(rad2deg(r.alpha_opt) == Approx(0.0).margin(1e-9));
    REQUIRE(r.f_rot.size() == 4);
    CHECK(rad2deg(r.f_rot[1]) == Approx(90.0));
    CHECK(rad2deg(r.f_rot[3]) == Approx(270.0));
  }

  SECTION("symmetric Y matches the brute-force objective") {
    const std::vector<double> gaps_deg{120, 120, 120};
    const auto r = normalize_rotation({deg2rad(120), deg2rad(120), deg2rad(120)});
    const double obj_deg2 = r.objective * (180.0 / kPi) * (180.0 / kPi);
    CHECK(obj_deg2 <= fixtures::brute_force_min_objective_deg2(gaps_deg) + 1e-4);
    CHECK(rad2deg(r.alpha_opt) == Approx(0.0).margin(1e-9));
    CHECK(rad2deg(r.f_rot[1]) == Approx(120.0));
    CHECK(rad2deg(r.f_rot[2]) == Approx(240.0));
  }

  SECTION("engineered anchors") {
    CHECK(rad2deg(fixtures::normalized_rot(fixtures::gaps_deg_a3())[0]) == Approx(-22.62));
    CHECK(rad2deg(fixtures::normalized_rot(fixtures::gaps_deg_b3())[0]) == Approx(9.81));
    CHECK(rad2deg(fixtures::normalized_rot(fixtures::gaps_deg_a4())[0]) == Approx(-5.26));
    CHECK(rad2deg(fixtures::normalized_rot(fixtures::gaps_deg_b4())[0]) == Approx(9.81));
  }

  SECTION("bad gap vectors") {
    CHECK_THROWS_AS(normalize_rotation({deg2rad(100), deg2rad(100), deg2rad(150)}),
                    GapSumMismatch);  // 350 degrees
    CHECK_THROWS_AS(normalize_rotation({deg2rad(-10), deg2rad(190), deg2rad(180)}),
                    GapSumMismatch);
  }

  SECTION("solver objective never exceeds the brute-force sweep") {
    Rng base(555);
    for (int n : {3, 4, 5}) {
      for (int trial = 0; trial < 50; ++trial) {
        Rng rng = base.stream("gaps", static_cast<std::uint64_t>(n) * 1000 + trial);
        const auto gaps = fixtures::random_gaps(rng, n);
        std::vector<double> gaps_deg;
        for (double g : gaps) gaps_deg.push_back(rad2deg(g));
        const auto r = normalize_rotation(gaps);
        const double obj_deg2 = r.objective * (180.0 / kPi) * (180.0 / kPi);
        CHECK(obj_deg2 <= fixtures::brute_force_min_objective_deg2(gaps_deg) + 1e-4);
      }
    }
  }

  SECTION("consumes gaps only, so it is rotation invariant") {
    const auto a = normalize_rotation({deg2rad(150), deg2rad(80), deg2rad(130)});
    const auto b = normalize_rotation({deg2rad(150), deg2rad(80), deg2rad(130)});
    CHECK(a.f_rot == b.f_rot);
  }
}

TEST_CASE("junction_feature") {
  const MapDoc map = fixtures::fig1_map();

  SECTION("fixture junctions") {
    const auto j0 = junction_feature(map, "J0");
    CHECK(j0.f_road == 4);
    CHECK(j0.f_ctrl == ControlType::Signal);
    CHECK_FALSE(j0.f_xwlk);
    const auto j1 = junction_feature(map, "J1");
    CHECK(j1.f_road == 3);
    CHECK(j1.f_ctrl == ControlType::Stop);
  }

  SECTION("physically rotated cross normalizes back to the cardinals") {
    SynthesisConfig cfg;
    const MapDoc rotated = generate_map_explicit(
        {fixtures::jf(4, {10, 100, 190, 280}, ControlType::Signal, false)}, cfg);
    const auto f = junction_feature(rotated, "J0");
    REQUIRE(f.f_rot.size() == 4);
    CHECK(rad2deg(f.f_rot[0]) == Approx(0.0).margin(1e-9));
    CHECK(rad2deg(f.f_rot[1]) == Approx(90.0));
    CHECK(rad2deg(f.f_rot[2]) == Approx(180.0));
    CHECK(rad2deg(f.f_rot[3]) == Approx(270.0));
  }

  SECTION("mega junction extracts its unwrapped rotation verbatim") {
    SynthesisConfig cfg;
    const MapDoc mega = generate_map_explicit({fixtures::mega_feature()}, cfg);
    const auto f = junction_feature(mega, "J0");
    CHECK(f.f_road == 5);
    REQUIRE(f.f_rot.size() == 5);
    const double expected[] = {0, 72, 144, 216, 288};
    for (int i = 0; i < 5; ++i)
      CHECK(rad2deg(f.f_rot[static_cast<std::size_t>(i)]) ==
            Approx(expected[i]).margin(1e-6));
  }

  SECTION("one-way socket types follow the rotation anchor") {
    SynthesisConfig cfg;
    const MapDoc t = generate_map_explicit({fixtures::oneway_t_feature()}, cfg);
    const auto f = junction_feature(t, "J0");
    REQUIRE(f.f_road == 3);
    // physical sockets E(In), N(Out), W(InOut); the anchor re-indexes at the
    // maximal gap (W -> E), so the extracted order starts at the W socket
    CHECK(f.socket_types == std::vector<SocketType>{SocketType::InOut, SocketType::In,
                                                    SocketType::Out});
  }
}

TEST_CASE("extract_map_feature") {
  SECTION("discrete sets from the synthetic downtown suite") {
    const auto feature = fixtures::table1_feature();
    CHECK(feature.road_set == std::set<int>{3, 4});
    CHECK(feature.ctrl_set == std::set<ControlType>{ControlType::Signal, ControlType::Stop});
    CHECK(feature.xwlk_set == std::set<bool>{false, true});
  }

  SECTION("rotation ranges are the element-wise extremes of the families") {
    const auto feature = fixtures::table1_feature();
    const auto a3 = fixtures::normalized_rot(fixtures::gaps_deg_a3());
    const auto b3 = fixtures::normalized_rot(fixtures::gaps_deg_b3());
    REQUIRE(feature.rot_ranges.count(3) == 1);
    const auto& r3 = feature.rot_ranges.at(3).intervals;
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(r3[i].first == Approx(std::min(a3[i], b3[i])).margin(1e-9));
      CHECK(r3[i].second == Approx(std::max(a3[i], b3[i])).margin(1e-9));
    }
    CHECK(rad2deg(r3[0].first) == Approx(-22.62).margin(1e-6));
    CHECK(rad2deg(r3[0].second) == Approx(9.81).margin(1e-6));

    const auto a4 = fixtures::normalized_rot(fixtures::gaps_deg_a4());
    const auto b4 = fixtures::normalized_rot(fixtures::gaps_deg_b4());
    const auto& r4 = feature.rot_ranges.at(4).intervals;
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(r4[i].first == Approx(std::min(a4[i], b4[i])).margin(1e-9));
      CHECK(r4[i].second == Approx(std::max(a4[i], b4[i])).margin(1e-9));
    }
    CHECK(rad2deg(r4[0].first) == Approx(-5.26).margin(1e-6));
  }

  SECTION("single junction gives degenerate intervals") {
    SynthesisConfig cfg;
    const MapDoc map = generate_map_explicit(
        {fixtures::jf_from_gaps(fixtures::gaps_deg_a3(), ControlType::Signal, false)}, cfg);
    const auto feature = extract_map_feature(std::span<const MapDoc>(&map, 1));
    for (const auto& [lo, hi] : feature.rot_ranges.at(3).intervals) CHECK(lo == hi);
  }

  SECTION("merging maps never shrinks sets or intervals") {
    const auto maps = fixtures::sf_like_maps();
    const auto one = extract_map_feature(std::span<const MapDoc>(maps.data(), 1));
    const auto both = extract_map_feature(maps);
    for (int n : one.road_set) CHECK(both.road_set.count(n) == 1);
    for (const auto& [n, range] : one.rot_ranges) {
      const auto& wide = both.rot_ranges.at(n).intervals;
      for (std::size_t i = 0; i < range.intervals.size(); ++i) {
        CHECK(wide[i].first <= range.intervals[i].first + 1e-12);
        CHECK(wide[i].second >= range.intervals[i].second - 1e-12);
      }
    }
  }

  SECTION("bare junctions extend the control set") {
    const auto merged = fixtures::merged_feature();
    CHECK(merged.ctrl_set ==
          std::set<ControlType>{ControlType::Bare, ControlType::Signal, ControlType::Stop});
  }

  SECTION("error cases") {
    CHECK_THROWS_AS(extract_map_feature({}), EmptyInput);
    const MapDoc empty;
    CHECK_THROWS_AS(extract_map_feature(std::span<const MapDoc>(&empty, 1)), NoJunctions);
  }
}

TEST_CASE("generated junctions extract back inside the source intervals") {
  const auto feature = fixtures::table1_feature();
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    SynthesisConfig cfg;
    cfg.seed = seed;
    const MapDoc map = generate_map(feature, cfg);
    for (const auto& [jid, junction] : map.junctions) {
      const auto f = junction_feature(map, jid);
      const auto& intervals = feature.rot_ranges.at(f.f_road).intervals;
      for (std::size_t i = 0; i < f.f_rot.size(); ++i) {
        CHECK(f.f_rot[i] >= intervals[i].first - 1e-6);
        CHECK(f.f_rot[i] <= intervals[i].second + 1e-6);
      }
    }
  }
}

TEST_CASE("feature files") {
  SECTION("round trip is byte-stable") {
    FeatureFile file;
    file.map_feature = fixtures::table1_feature();
    file.explicit_junctions = {fixtures::mega_feature()};
    file.road_chains = {fixtures::circle_chain()};
    const std::string once = serialize_features(file);
    const FeatureFile back = parse_features(once);
    CHECK(serialize_features(back) == once);
    REQUIRE(back.map_feature.has_value());
    CHECK(back.map_feature->road_set == file.map_feature->road_set);
    REQUIRE(back.explicit_junctions.size() == 1);
    CHECK(back.explicit_junctions[0].f_road == 5);
    REQUIRE(back.road_chains.size() == 1);
    CHECK(back.road_chains[0].segments.size() == 4);
  }

  SECTION("wrapped explicit rotations are unwrapped") {
    const std::string text = R"({
      "schema_version": "feat2map-features/1",
      "explicit_junctions": [
        {"f_road": 5, "f_rot": [0, 72, 144, -144, -72], "f_ctrl": "signal", "f_xwlk": true}
      ]
    })";
    const FeatureFile file = parse_features(text);
    REQUIRE(file.explicit_junctions.size() == 1);
    const auto& rot = file.explicit_junctions[0].f_rot;
    CHECK(rad2deg(rot[3]) == Approx(216.0));
    CHECK(rad2deg(rot[4]) == Approx(288.0));
  }

  SECTION("malformed inputs") {
    CHECK_THROWS_AS(parse_features("{}"), MalformedInput);
    CHECK_THROWS_AS(parse_features("not json"), MalformedInput);
    CHECK_THROWS_AS(parse_features(R"({"schema_version": "feat2map-features/1",
      "explicit_junctions": [{"f_road": 2, "f_rot": [0, 10], "f_ctrl": "bare", "f_xwlk": false}]})"),
                    MalformedInput);
  }
}
