#pragma once

// Internal helpers shared by the YAML loaders. Not installed.

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "tradestudy/errors.hpp"

namespace tradestudy::detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("{}: cannot open file", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline YAML::Node parse_yaml(const std::string& text, const std::string& source) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParseError(fmt::format("{}: {}", source, e.what()));
  }
}

/// Rejects keys outside `allowed` so typos surface as errors instead of
/// silently loading as absent.
inline void expect_keys(const YAML::Node& node, std::initializer_list<std::string_view> allowed,
                        const std::string& where) {
  if (!node.IsMap()) throw ParseError(fmt::format("{}: expected a mapping", where));
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw ParseError(fmt::format("{}: unknown field '{}'", where, key));
  }
}

inline bool present(const YAML::Node& node, const char* key) {
  const auto child = node[key];
  return child.IsDefined() && !child.IsNull();
}

template <typename T>
T as(const YAML::Node& node, const std::string& where) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError(fmt::format("{}: wrong type", where));
  }
}

template <typename T>
T required(const YAML::Node& node, const char* key, const std::string& where) {
  if (!present(node, key)) throw ParseError(fmt::format("{}.{}: missing required field", where, key));
  return as<T>(node[key], where + "." + key);
}

template <typename T>
std::optional<T> optional(const YAML::Node& node, const char* key, const std::string& where) {
  if (!present(node, key)) return std::nullopt;
  return as<T>(node[key], where + "." + key);
}

/// Shortest decimal form that parses back to the same double.
inline std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? ".inf" : "-.inf";
  return fmt::format("{}", v);
}

}  // namespace tradestudy::detail
