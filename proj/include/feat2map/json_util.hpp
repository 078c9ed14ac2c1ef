#pragma once

#include <feat2map/errors.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace feat2map {

// Fixed 9-decimal number formatting used by every file format. Keeps
// serialization byte-stable and bounds round-trip error at 5e-10. Values
// that round to zero lose their sign so "-0.000000000" never appears.
inline std::string fmt_fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string out = buf;
  if (out.find_first_not_of("-0.") == std::string::npos && out[0] == '-') out.erase(0, 1);
  return out;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// Minimal canonical JSON emitter: the caller supplies keys in sorted order,
// output uses two-space indentation and '\n' line ends.
class JsonWriter {
 public:
  std::string str() const { return out_; }

  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(const std::string& k) {
    separator();
    indent();
    out_ += '"' + json_escape(k) + "\": ";
    pending_key_ = true;
    return *this;
  }

  JsonWriter& value(const std::string& v) { return emit('"' + json_escape(v) + '"'); }
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& value(double v) { return emit(fmt_fixed9(v)); }
  JsonWriter& value(bool v) { return emit(v ? "true" : "false"); }
  JsonWriter& value(int v) { return emit(std::to_string(v)); }
  JsonWriter& value(std::uint64_t v) { return emit(std::to_string(v)); }
  JsonWriter& null() { return emit("null"); }

 private:
  JsonWriter& open(char c) {
    if (!pending_key_) {
      separator();
      indent();
    }
    pending_key_ = false;
    out_ += c;
    out_ += '\n';
    ++depth_;
    first_in_scope_ = true;
    return *this;
  }

  JsonWriter& close(char c) {
    --depth_;
    out_ += '\n';
    indent();
    out_ += c;
    first_in_scope_ = false;
    return *this;
  }

  JsonWriter& emit(const std::string& token) {
    if (!pending_key_) {
      separator();
      indent();
    }
    pending_key_ = false;
    out_ += token;
    first_in_scope_ = false;
    return *this;
  }

  void separator() {
    if (!first_in_scope_ && depth_ > 0) out_ += ",\n";
    first_in_scope_ = false;
  }

  void indent() {
    for (int i = 0; i < depth_; ++i) out_ += "  ";
  }

  std::string out_;
  int depth_ = 0;
  bool first_in_scope_ = true;
  bool pending_key_ = false;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write-temp-then-rename so readers never observe a partial file.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace feat2map
