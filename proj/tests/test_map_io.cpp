#include "support/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace feat2map;
using Catch::Approx;

TEST_CASE("map file round trip") {
  const MapDoc map = fixtures::fig1_map();
  const std::string bytes = serialize_map(map);

  SECTION("parse restores the document structurally") {
    const ParsedMap parsed = parse_map(bytes);
    CHECK(parsed.report.ok());
    CHECK(parsed.map.junctions.size() == 2);
    CHECK(parsed.map.roads.size() == 6);
    CHECK(parsed.map.lanes.size() == 30);
    CHECK(parsed.map.metadata.seed == 7);
    CHECK(parsed.map.junctions.at("J0").control == ControlType::Signal);
    for (const auto& [id, lane] : map.lanes)
      CHECK(distance(parsed.map.lanes.at(id).reference.p0, lane.reference.p0) < 1e-9);
  }

  SECTION("serialize after parse is byte-stable") {
    CHECK(serialize_map(parse_map(bytes).map) == bytes);
  }

  SECTION("serialization is deterministic") {
    CHECK(serialize_map(map) == bytes);
  }

  SECTION("a generated 8-junction map round-trips too") {
    SynthesisConfig cfg;
    cfg.seed = 4;
    const MapDoc big = generate_map(fixtures::table1_feature(), cfg);
    const std::string big_bytes = serialize_map(big);
    const ParsedMap back = parse_map(big_bytes);
    CHECK(back.report.ok());
    CHECK(serialize_map(back.map) == big_bytes);
  }
}

TEST_CASE("parse errors") {
  SECTION("not a map file") {
    CHECK_THROWS_AS(parse_map("{}"), MalformedInput);
    CHECK_THROWS_AS(parse_map("garbage"), MalformedInput);
    CHECK_THROWS_AS(parse_map(R"({"schema_version": "something-else/9"})"), MalformedInput);
  }

  SECTION("dangling references are a hard error") {
    MapDoc map = fixtures::fig1_map();
    map.lanes.erase("L0_f");
    CHECK_THROWS_AS(parse_map(serialize_map(map)), UnresolvedReference);
  }

  SECTION("non-finite coordinates cannot enter the model") {
    CHECK_THROWS_AS(CubicBezier({0, 0}, {1, 0}, {2, 0}, {std::nan(""), 0}), NonFiniteNumber);
    // raw NaN tokens are not valid JSON either
    std::string bytes = serialize_map(fixtures::fig1_map());
    const auto pos = bytes.find("12.000000000");
    REQUIRE(pos != std::string::npos);
    bytes.replace(pos, 12, "NaN");
    CHECK_THROWS_AS(parse_map(bytes), MalformedInput);
  }

  SECTION("structural violations surface as a report, not an error") {
    SynthesisConfig cfg;
    cfg.seed = 3;
    const MapDoc base =
        generate_map_explicit({fixtures::jf(4, {0, 90, 180, 270}, ControlType::Bare, false)}, cfg);
    const MapDoc merged = fixtures::merge_translated(base, 10.0, 0.0, "_b");
    const ParsedMap parsed = parse_map(serialize_map(merged));
    CHECK_FALSE(parsed.report.ok());
    CHECK(parsed.report.count("disc_overlap") == 1);
  }
}

TEST_CASE("svg rendering") {
  const MapDoc map = fixtures::fig1_map();

  SECTION("one glyph group per junction") {
    const std::string svg = render_svg(map);
    std::size_t groups = 0;
    for (std::size_t pos = 0; (pos = svg.find("class=\"junction\"", pos)) != std::string::npos;
         ++pos)
      ++groups;
    CHECK(groups == 2);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    CHECK(svg.find("stop-sign") != std::string::npos);
    CHECK(svg.find("class=\"signal\"") != std::string::npos);
  }

  SECTION("empty map still renders a valid document") {
    const std::string svg = render_svg(MapDoc{});
    CHECK(svg.find("<?xml") == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
  }

  SECTION("rendering is deterministic") {
    CHECK(render_svg(map) == render_svg(map));
    CHECK(render_svg(map, {2.0, true}) == render_svg(map, {2.0, true}));
  }

  SECTION("ids appear only when requested") {
    CHECK(render_svg(map).find("<text") == std::string::npos);
    CHECK(render_svg(map, {1.0, true}).find("<text") != std::string::npos);
  }

  SECTION("crosswalk polygons are rendered") {
    SynthesisConfig cfg;
    const MapDoc xw = generate_map_explicit(
        {fixtures::jf(4, {0, 90, 180, 270}, ControlType::Signal, true)}, cfg);
    CHECK(render_svg(xw).find("class=\"crosswalk\"") != std::string::npos);
  }
}

TEST_CASE("canonical number formatting") {
  CHECK(fmt_fixed9(0.0) == "0.000000000");
  CHECK(fmt_fixed9(-0.0) == "0.000000000");
  CHECK(fmt_fixed9(1.5) == "1.500000000");
  CHECK(fmt_fixed9(-12.25) == "-12.250000000");
}
