// Command-line front end: extract features from maps, generate maps from
// features, render bird views, run scenario coverage, validate map files.
//
// Exit codes: 0 success, 1 validation failure, 2 input error, 3 empty
// feature error, 4 synthesis infeasibility.

#include <feat2map/feat2map.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <span>
#include <string>
#include <vector>

namespace {

using namespace feat2map;

enum ExitCode {
  kOk = 0,
  kValidationFailure = 1,
  kInputError = 2,
  kEmptyFeatures = 3,
  kInfeasible = 4,
};

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("FEAT2MAP_LOG");
    if (!env) return 1;
    const std::string v = env;
    if (v == "error") return 0;
    if (v == "warn") return 1;
    if (v == "info") return 2;
    if (v == "debug") return 3;
    return 1;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[feat2map] " << msg << "\n";
}

void log_warn(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[feat2map] warning: " << msg << "\n";
}

ParsedMap load_map(const std::string& path, bool strict) {
  ParsedMap parsed = parse_map(read_file(path));
  if (!parsed.report.ok()) {
    for (const Violation& v : parsed.report.violations)
      log_warn(path + ": " + v.code + " " + v.element_id + ": " + v.message);
    if (strict) throw Error(path + ": map fails validation under --strict");
  }
  log_info("parsed " + path + " (" + std::to_string(parsed.map.junctions.size()) + " junctions)");
  return parsed;
}

std::string feature_table(const MapFeature& f) {
  std::string out;
  out += "road set:  {";
  bool first = true;
  for (int n : f.road_set) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(n);
  }
  out += "}\nctrl set:  {";
  first = true;
  for (ControlType c : f.ctrl_set) {
    if (!first) out += ", ";
    first = false;
    out += control_name(c);
  }
  out += "}\nxwlk set:  {";
  first = true;
  for (bool b : f.xwlk_set) {
    if (!first) out += ", ";
    first = false;
    out += b ? "True" : "False";
  }
  out += "}\n";
  for (const auto& [n, range] : f.rot_ranges) {
    out += "rot[" + std::to_string(n) + "]:    [";
    first = true;
    for (const auto& [lo, hi] : range.intervals) {
      if (!first) out += ", ";
      first = false;
      char buf[64];
      std::snprintf(buf, sizeof buf, "[%.2f, %.2f]", rad2deg(lo), rad2deg(hi));
      out += buf;
    }
    out += "]\n";
  }
  return out;
}

int cmd_extract(const std::vector<std::string>& inputs, const std::string& output,
                const std::string& format, bool strict) {
  std::vector<MapDoc> maps;
  for (const std::string& path : inputs) maps.push_back(load_map(path, strict).map);
  const MapFeature feature = extract_map_feature(maps);
  FeatureFile file;
  file.map_feature = feature;
  if (!output.empty()) {
    atomic_write_file(output, serialize_features(file));
    log_info("wrote " + output);
  }
  if (format == "json")
    std::cout << serialize_features(file);
  else
    std::cout << feature_table(feature);
  return kOk;
}

int cmd_generate(const std::string& input, const std::string& output, std::uint64_t seed,
                 const std::string& config_path) {
  SynthesisConfig cfg;
  if (!config_path.empty()) cfg = parse_config(read_file(config_path));
  cfg.seed = seed;

  const FeatureFile file = parse_features(read_file(input));
  const MapDoc map = generate_from_file(file, cfg);
  if (!output.empty()) {
    atomic_write_file(output, serialize_map(map));
    log_info("wrote " + output);
  }
  std::cout << map.junctions.size() << " junctions (seed " << seed << ")\n";
  const ValidationReport report = validate_map(map);
  if (!report.ok()) {
    for (const Violation& v : report.violations)
      log_warn("generated map: " + v.code + " " + v.element_id + ": " + v.message);
    return kValidationFailure;
  }
  return kOk;
}

int cmd_render(const std::string& input, const std::string& output, double scale, bool show_ids,
               bool strict) {
  const ParsedMap parsed = load_map(input, strict);
  const std::string svg = render_svg(parsed.map, {scale, show_ids});
  if (!output.empty()) {
    atomic_write_file(output, svg);
    log_info("wrote " + output);
  } else {
    std::cout << svg;
  }
  return kOk;
}

int cmd_coverage(const std::string& input, const std::string& output, const std::string& format,
                 bool strict) {
  const ParsedMap parsed = load_map(input, strict);
  const CoverageReport report = coverage_report(parsed.map);
  if (!output.empty()) {
    atomic_write_file(output, serialize_coverage(report));
    log_info("wrote " + output);
  }
  if (format == "json")
    std::cout << serialize_coverage(report);
  else
    std::cout << coverage_table(report);
  return kOk;
}

int cmd_validate(const std::string& input) {
  const ParsedMap parsed = parse_map(read_file(input));
  if (parsed.report.ok()) {
    std::cout << "valid\n";
    return kOk;
  }
  for (const Violation& v : parsed.report.violations)
    std::cout << v.code << " " << v.element_id << ": " << v.message << "\n";
  std::cout << parsed.report.violations.size() << " violations\n";
  return kValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"feat2map: junction-feature HD map extraction, synthesis and coverage"};
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string output;
  std::string config_path;
  std::string format = "table";
  std::uint64_t seed = 0;
  double scale = 1.0;
  bool show_ids = false;
  bool strict = false;

  CLI::App* extract = app.add_subcommand("extract", "extract junction features from map files");
  extract->add_option("-i,--input", inputs, "input map files")->required()->expected(-1);
  extract->add_option("-o,--output", output, "output feature file");
  extract->add_option("--format", format, "stdout format: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  extract->add_flag("--strict", strict, "treat validation warnings as errors");

  CLI::App* generate = app.add_subcommand("generate", "generate a map from a feature file");
  generate->add_option("-i,--input", inputs, "feature file")->required()->expected(1);
  generate->add_option("-o,--output", output, "output map file");
  generate->add_option("--seed", seed, "generation seed")->required();
  generate->add_option("--config", config_path, "synthesis config JSON");

  CLI::App* render = app.add_subcommand("render", "render a map file to SVG");
  render->add_option("-i,--input", inputs, "map file")->required()->expected(1);
  render->add_option("-o,--output", output, "output SVG file");
  render->add_option("--scale", scale, "meters-to-pixels scale");
  render->add_flag("--show-ids", show_ids, "label junctions and roads");
  render->add_flag("--strict", strict, "treat validation warnings as errors");

  CLI::App* coverage = app.add_subcommand("coverage", "report covered scenario stage paths");
  coverage->add_option("-i,--input", inputs, "map file")->required()->expected(1);
  coverage->add_option("-o,--output", output, "output report JSON");
  coverage->add_option("--format", format, "stdout format: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  coverage->add_flag("--strict", strict, "treat validation warnings as errors");

  CLI::App* validate = app.add_subcommand("validate", "validate a map file");
  validate->add_option("-i,--input", inputs, "map file")->required()->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kInputError;
  }

  try {
    if (extract->parsed()) return cmd_extract(inputs, output, format, strict);
    if (generate->parsed()) return cmd_generate(inputs.front(), output, seed, config_path);
    if (render->parsed()) return cmd_render(inputs.front(), output, scale, show_ids, strict);
    if (coverage->parsed()) return cmd_coverage(inputs.front(), output, format, strict);
    if (validate->parsed()) return cmd_validate(inputs.front());
  } catch (const EmptyInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEmptyFeatures;
  } catch (const NoJunctions& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEmptyFeatures;
  } catch (const UnsatisfiableRotation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const NoFeasiblePoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const SocketConflict& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ChainDiscontinuity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
