#include "support/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace feat2map;
using Catch::Approx;

namespace {

const StagePath kStopPath{Stage::LF, Stage::S_PS, Stage::S_S, Stage::S_C, Stage::S_I, Stage::LF};
const StagePath kProtectedPath{Stage::LF, Stage::T_A, Stage::T_C, Stage::LF};
const StagePath kLeftPath{Stage::LF, Stage::L_A, Stage::L_I, Stage::LF};
const StagePath kLeftCreepPath{Stage::LF, Stage::L_A, Stage::L_C, Stage::L_I, Stage::LF};
const StagePath kLaneFollowOnly{Stage::LF};

std::set<StagePath> paper_paths() {
  return {kStopPath, kProtectedPath, kLeftPath, kLeftCreepPath};
}

}  // namespace

TEST_CASE("classify_turn") {
  const auto turn = [](double entry_deg, double exit_deg) {
    return classify_turn(Angle::degrees(entry_deg), Angle::degrees(exit_deg));
  };
  // entering eastbound over the western road (socket 180)
  CHECK(turn(180, 90) == Turn::Left);
  CHECK(turn(180, -90) == Turn::Right);
  CHECK(turn(180, 0) == Turn::Straight);
  CHECK(turn(180, 180) == Turn::UTurn);  // back out the road you came in on
  // boundary: 45 degrees off straight still counts as straight
  CHECK(turn(180, 45) == Turn::Straight);
  CHECK(turn(180, 46) == Turn::Left);
  CHECK(turn(180, -46) == Turn::Right);
  CHECK(turn(180, 140) == Turn::UTurn);
}

TEST_CASE("plan_stage_path") {
  CHECK(plan_stage_path(ControlType::Stop, Turn::Straight, false) == kStopPath);
  CHECK(plan_stage_path(ControlType::Stop, Turn::Left, true) == kStopPath);
  CHECK(plan_stage_path(ControlType::Signal, Turn::Straight, false) == kProtectedPath);
  CHECK(plan_stage_path(ControlType::Signal, Turn::Right, true) == kProtectedPath);
  CHECK(plan_stage_path(ControlType::Signal, Turn::Left, false) == kLeftPath);
  CHECK(plan_stage_path(ControlType::Signal, Turn::Left, true) == kLeftCreepPath);
  CHECK(plan_stage_path(ControlType::Signal, Turn::UTurn, false) == kLeftPath);
  CHECK(plan_stage_path(ControlType::Bare, Turn::Straight, false) == kLaneFollowOnly);
  CHECK_THROWS_AS(plan_stage_path(ControlType::Signal, Turn::Left, false, LightState::Red),
                  UnsupportedLightState);
}

TEST_CASE("enumerate_routes") {
  SECTION("one route per junction lane") {
    const MapDoc map = fixtures::fig1_map();
    const auto routes = enumerate_routes(map);
    CHECK(routes.size() == 18);
    for (const auto& r : routes) CHECK(r.entry_road != r.exit_road);
  }

  SECTION("empty map, no routes") {
    CHECK(enumerate_routes(MapDoc{}).empty());
  }

  SECTION("deterministic ordering") {
    const MapDoc map = fixtures::fig1_map();
    const auto a = enumerate_routes(map);
    const auto b = enumerate_routes(map);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].entry_road == b[i].entry_road);
      CHECK(a[i].exit_road == b[i].exit_road);
    }
  }
}

TEST_CASE("coverage_report") {
  SECTION("the 8-junction map covers exactly the four canonical paths") {
    SynthesisConfig cfg;
    cfg.seed = 1;
    const MapDoc map = generate_map(fixtures::table1_feature(), cfg);
    const auto report = coverage_report(map);
    CHECK(report.covered_paths == paper_paths());
    CHECK(report.scenarios == std::set<std::string>{"LaneFollow", "StopSignUnprotected",
                                                    "TrafficLightProtected",
                                                    "TrafficLightUnprotectedLeftTurn"});
  }

  SECTION("bare junctions add the lane-follow-only path") {
    SynthesisConfig cfg;
    cfg.seed = 1;
    const MapDoc map = generate_map(fixtures::merged_feature(), cfg);
    auto expected = paper_paths();
    expected.insert(kLaneFollowOnly);
    CHECK(coverage_report(map).covered_paths == expected);
  }

  SECTION("an all-stop map covers a single path") {
    SynthesisConfig cfg;
    const MapDoc map = generate_map_explicit(
        {fixtures::jf(4, {0, 90, 180, 270}, ControlType::Stop, false),
         fixtures::jf(3, {0, 90, 180}, ControlType::Stop, true)},
        cfg);
    const auto report = coverage_report(map);
    CHECK(report.covered_paths == std::set<StagePath>{kStopPath});
  }

  SECTION("a single bare junction maps every route to LF") {
    SynthesisConfig cfg;
    const MapDoc map = generate_map_explicit(
        {fixtures::jf(4, {0, 90, 180, 270}, ControlType::Bare, false)}, cfg);
    const auto report = coverage_report(map);
    CHECK(report.covered_paths == std::set<StagePath>{kLaneFollowOnly});
    CHECK(report.traversals.size() == 12);
    for (const auto& t : report.traversals) CHECK(t.path == kLaneFollowOnly);
  }

  SECTION("coverage depends on the discrete cells only, not the seed") {
    std::set<StagePath> first;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      SynthesisConfig cfg;
      cfg.seed = seed;
      const auto paths = coverage_report(generate_map(fixtures::table1_feature(), cfg)).covered_paths;
      if (seed == 1)
        first = paths;
      else
        CHECK(paths == first);
    }
  }

  SECTION("adding junctions never removes paths") {
    SynthesisConfig cfg;
    cfg.seed = 2;
    const auto small = coverage_report(generate_map(fixtures::table1_feature(), cfg)).covered_paths;
    const auto large = coverage_report(generate_map(fixtures::merged_feature(), cfg)).covered_paths;
    for (const auto& p : small) CHECK(large.count(p) == 1);
  }
}

TEST_CASE("coverage serialization") {
  SynthesisConfig cfg;
  cfg.seed = 1;
  const MapDoc map = generate_map(fixtures::table1_feature(), cfg);
  const auto report = coverage_report(map);

  const std::string json = serialize_coverage(report);
  CHECK(json.find("\"schema_version\": \"feat2map-coverage/1\"") != std::string::npos);
  CHECK(json.find("\"covered_path_count\": 4") != std::string::npos);
  CHECK(serialize_coverage(report) == json);

  const std::string table = coverage_table(report);
  CHECK(table.find("covered stage paths (4):") != std::string::npos);
  CHECK(table.find("LF -> T_A -> T_C -> LF") != std::string::npos);
  CHECK(table.find("not coverable:") != std::string::npos);
}
