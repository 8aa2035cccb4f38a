#pragma once

// Strict YAML field access shared by every file reader. Every lookup is
// recorded; finish() rejects keys that no one asked for.

#include <Eigen/Core>
#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "uav/errors.hpp"

namespace uav::detail {

inline std::size_t line_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.line >= 0 ? static_cast<std::size_t>(mark.line) + 1 : 0;
}

inline YAML::Node load_yaml_text(std::string_view text, const std::string& source) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(source, e.mark.line >= 0 ? static_cast<std::size_t>(e.mark.line) + 1 : 0,
                     e.msg);
  }
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline YAML::Node load_yaml_file(const std::filesystem::path& path) {
  return load_yaml_text(read_text_file(path), path.string());
}

class MapReader {
 public:
  MapReader(YAML::Node node, std::string source, std::string context)
      : node_(std::move(node)), source_(std::move(source)), context_(std::move(context)) {
    if (!node_.IsMap()) fail(node_, "expected a mapping");
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  YAML::Node child(const std::string& key) {
    used_.insert(key);
    YAML::Node n = node_[key];
    if (!n) fail(node_, "missing required field '" + key + "'");
    return n;
  }

  std::optional<YAML::Node> optional_child(const std::string& key) {
    used_.insert(key);
    YAML::Node n = node_[key];
    if (!n || n.IsNull()) return std::nullopt;
    return n;
  }

  double number(const std::string& key) { return as_number(child(key), key); }

  std::optional<double> optional_number(const std::string& key) {
    auto n = optional_child(key);
    if (!n) return std::nullopt;
    return as_number(*n, key);
  }

  double number_or(const std::string& key, double fallback) {
    return optional_number(key).value_or(fallback);
  }

  long long integer(const std::string& key) { return as_integer(child(key), key); }

  std::optional<long long> optional_integer(const std::string& key) {
    auto n = optional_child(key);
    if (!n) return std::nullopt;
    return as_integer(*n, key);
  }

  std::string string(const std::string& key) { return as_string(child(key), key); }

  std::optional<std::string> optional_string(const std::string& key) {
    auto n = optional_child(key);
    if (!n) return std::nullopt;
    return as_string(*n, key);
  }

  bool boolean_or(const std::string& key, bool fallback) {
    auto n = optional_child(key);
    if (!n) return fallback;
    try {
      return n->as<bool>();
    } catch (const YAML::Exception&) {
      fail(*n, "field '" + key + "' must be a boolean");
    }
  }

  std::vector<double> numbers(const std::string& key) {
    YAML::Node n = child(key);
    return as_numbers(n, key);
  }

  std::vector<std::string> strings_or_empty(const std::string& key) {
    auto n = optional_child(key);
    std::vector<std::string> out;
    if (!n) return out;
    if (!n->IsSequence()) fail(*n, "field '" + key + "' must be a list");
    for (const auto& item : *n) out.push_back(as_string(item, key));
    return out;
  }

  Eigen::Vector3d vec3(const std::string& key) {
    YAML::Node n = child(key);
    auto v = as_numbers(n, key);
    if (v.size() != 3) fail(n, "field '" + key + "' must have exactly 3 components");
    return {v[0], v[1], v[2]};
  }

  std::optional<Eigen::Vector3d> optional_vec3(const std::string& key) {
    if (!has(key)) {
      used_.insert(key);
      return std::nullopt;
    }
    return vec3(key);
  }

  void finish() const {
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!used_.count(key)) fail(kv.first, "unknown field '" + key + "'");
    }
  }

  [[noreturn]] void fail(const YAML::Node& at, const std::string& what) const {
    throw ParseError(source_, line_of(at), context_ + ": " + what);
  }

  const YAML::Node& node() const { return node_; }
  const std::string& source() const { return source_; }

 private:
  double as_number(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, "field '" + key + "' must be a number");
    try {
      return n.as<double>();
    } catch (const YAML::Exception&) {
      fail(n, "field '" + key + "' must be a number, got '" + n.Scalar() + "'");
    }
  }

  long long as_integer(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, "field '" + key + "' must be an integer");
    try {
      return n.as<long long>();
    } catch (const YAML::Exception&) {
      fail(n, "field '" + key + "' must be an integer, got '" + n.Scalar() + "'");
    }
  }

  std::string as_string(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, "field '" + key + "' must be a string");
    return n.Scalar();
  }

  std::vector<double> as_numbers(const YAML::Node& n, const std::string& key) const {
    if (!n.IsSequence()) fail(n, "field '" + key + "' must be a list of numbers");
    std::vector<double> out;
    for (const auto& item : n) out.push_back(as_number(item, key));
    return out;
  }

  YAML::Node node_;
  std::string source_;
  std::string context_;
  std::set<std::string> used_;
};

}  // namespace uav::detail
