#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "tradestudy/catalog.hpp"
#include "yaml_util.hpp"

namespace tradestudy {

using detail::as;
using detail::expect_keys;
using detail::number;
using detail::optional;
using detail::present;
using detail::required;

namespace {

Resolution parse_resolution(const YAML::Node& node, const std::string& where) {
  expect_keys(node, {"pixels", "scan"}, where);
  const bool has_pixels = present(node, "pixels");
  const bool has_scan = present(node, "scan");
  if (has_pixels == has_scan)
    throw ParseError(fmt::format("{}: exactly one of 'pixels' or 'scan' is required", where));
  if (has_pixels) {
    const auto px = node["pixels"];
    expect_keys(px, {"width", "height"}, where + ".pixels");
    return PixelGrid{required<int>(px, "width", where + ".pixels"),
                     required<int>(px, "height", where + ".pixels")};
  }
  const auto scan = node["scan"];
  expect_keys(scan, {"channels", "horizontal_deg", "vertical_deg"}, where + ".scan");
  return ScanPattern{optional<int>(scan, "channels", where + ".scan"),
                     optional<double>(scan, "horizontal_deg", where + ".scan"),
                     optional<double>(scan, "vertical_deg", where + ".scan")};
}

Accuracy parse_accuracy(const YAML::Node& node, const std::string& where) {
  expect_keys(node, {"percent", "at_range_m", "absolute_mm"}, where);
  const bool has_pct = present(node, "percent");
  const bool has_abs = present(node, "absolute_mm");
  if (has_pct == has_abs)
    throw ParseError(fmt::format("{}: exactly one of 'percent' or 'absolute_mm' is required", where));
  if (has_pct)
    return PercentError{required<double>(node, "percent", where),
                        optional<double>(node, "at_range_m", where)};
  if (present(node, "at_range_m"))
    throw ParseError(fmt::format("{}: 'at_range_m' only applies to percent accuracy", where));
  return AbsoluteError{required<double>(node, "absolute_mm", where)};
}

SensorRecord parse_sensor(const YAML::Node& node, std::size_t index) {
  std::string where = fmt::format("sensors[{}]", index);
  if (!node.IsMap()) throw ParseError(where + ": expected a mapping");
  if (present(node, "id")) where = as<std::string>(node["id"], where + ".id");
  expect_keys(node,
              {"id", "aliases", "name", "modality", "resolution", "accuracy", "fov", "range_min_m",
               "range_max_m", "power_w", "darkness_robust", "dust_robust", "implementation_ease",
               "mass_g", "dimensions_mm", "price_usd", "notes"},
              where);

  SensorRecord s;
  s.id = required<std::string>(node, "id", where);
  s.aliases = optional<std::vector<std::string>>(node, "aliases", where).value_or(
      std::vector<std::string>{});
  s.name = optional<std::string>(node, "name", where).value_or(s.id);
  s.modality = parse_modality(required<std::string>(node, "modality", where));
  if (present(node, "resolution")) s.resolution = parse_resolution(node["resolution"], where + ".resolution");
  if (present(node, "accuracy")) s.accuracy = parse_accuracy(node["accuracy"], where + ".accuracy");
  if (present(node, "fov")) {
    const auto fov = node["fov"];
    expect_keys(fov, {"horizontal_deg", "vertical_deg", "diagonal_deg"}, where + ".fov");
    s.fov = FieldOfView{required<double>(fov, "horizontal_deg", where + ".fov"),
                        optional<double>(fov, "vertical_deg", where + ".fov"),
                        optional<double>(fov, "diagonal_deg", where + ".fov")};
  }
  s.range_min_m = optional<double>(node, "range_min_m", where);
  s.range_max_m = optional<double>(node, "range_max_m", where);
  s.power_w = optional<double>(node, "power_w", where);
  auto ordinal = [&](const char* key) -> std::optional<Ordinal> {
    const auto text = optional<std::string>(node, key, where);
    if (!text) return std::nullopt;
    try {
      return parse_ordinal(*text);
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("{}.{}: {}", where, key, e.what()));
    }
  };
  s.darkness_robust = ordinal("darkness_robust");
  s.dust_robust = ordinal("dust_robust");
  s.implementation_ease = ordinal("implementation_ease");
  s.mass_g = required<double>(node, "mass_g", where);
  s.dimensions_mm =
      optional<std::vector<double>>(node, "dimensions_mm", where).value_or(std::vector<double>{});
  s.price_usd = required<double>(node, "price_usd", where);
  s.notes = optional<std::string>(node, "notes", where).value_or("");
  return s;
}

void emit_optional(YAML::Emitter& out, const char* key, const std::optional<double>& v) {
  if (v) out << YAML::Key << key << YAML::Value << number(*v);
}

void emit_ordinal(YAML::Emitter& out, const char* key, const std::optional<Ordinal>& v) {
  if (v) out << YAML::Key << key << YAML::Value << std::string(to_string(*v));
}

void emit_sensor(YAML::Emitter& out, const SensorRecord& s) {
  out << YAML::BeginMap;
  out << YAML::Key << "id" << YAML::Value << s.id;
  if (!s.aliases.empty()) {
    out << YAML::Key << "aliases" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& a : s.aliases) out << a;
    out << YAML::EndSeq;
  }
  out << YAML::Key << "name" << YAML::Value << s.name;
  out << YAML::Key << "modality" << YAML::Value << std::string(to_string(s.modality));
  if (s.resolution) {
    out << YAML::Key << "resolution" << YAML::Value << YAML::BeginMap;
    if (const auto* px = std::get_if<PixelGrid>(&*s.resolution)) {
      out << YAML::Key << "pixels" << YAML::Value << YAML::Flow << YAML::BeginMap
          << YAML::Key << "width" << YAML::Value << px->width << YAML::Key << "height"
          << YAML::Value << px->height << YAML::EndMap;
    } else {
      const auto& scan = std::get<ScanPattern>(*s.resolution);
      out << YAML::Key << "scan" << YAML::Value << YAML::Flow << YAML::BeginMap;
      if (scan.channels) out << YAML::Key << "channels" << YAML::Value << *scan.channels;
      emit_optional(out, "horizontal_deg", scan.horizontal_deg);
      emit_optional(out, "vertical_deg", scan.vertical_deg);
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  if (s.accuracy) {
    out << YAML::Key << "accuracy" << YAML::Value << YAML::Flow << YAML::BeginMap;
    if (const auto* pct = std::get_if<PercentError>(&*s.accuracy)) {
      out << YAML::Key << "percent" << YAML::Value << number(pct->percent);
      emit_optional(out, "at_range_m", pct->at_range_m);
    } else {
      out << YAML::Key << "absolute_mm" << YAML::Value
          << number(std::get<AbsoluteError>(*s.accuracy).millimeters);
    }
    out << YAML::EndMap;
  }
  if (s.fov) {
    out << YAML::Key << "fov" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "horizontal_deg" << YAML::Value << number(s.fov->horizontal_deg);
    emit_optional(out, "vertical_deg", s.fov->vertical_deg);
    emit_optional(out, "diagonal_deg", s.fov->diagonal_deg);
    out << YAML::EndMap;
  }
  emit_optional(out, "range_min_m", s.range_min_m);
  emit_optional(out, "range_max_m", s.range_max_m);
  emit_optional(out, "power_w", s.power_w);
  emit_ordinal(out, "darkness_robust", s.darkness_robust);
  emit_ordinal(out, "dust_robust", s.dust_robust);
  emit_ordinal(out, "implementation_ease", s.implementation_ease);
  out << YAML::Key << "mass_g" << YAML::Value << number(s.mass_g);
  if (!s.dimensions_mm.empty()) {
    out << YAML::Key << "dimensions_mm" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double d : s.dimensions_mm) out << number(d);
    out << YAML::EndSeq;
  }
  out << YAML::Key << "price_usd" << YAML::Value << number(s.price_usd);
  if (!s.notes.empty()) out << YAML::Key << "notes" << YAML::Value << YAML::DoubleQuoted << s.notes;
  out << YAML::EndMap;
}

}  // namespace

Catalog parse_catalog(const std::string& text, const std::string& source) {
  const YAML::Node root = detail::parse_yaml(text, source);
  if (!root.IsMap() || !present(root, "sensors"))
    throw ParseError(source + ": expected a mapping with a 'sensors' list");
  expect_keys(root, {"sensors"}, source);
  const YAML::Node list = root["sensors"];
  if (!list.IsSequence()) throw ParseError(source + ": 'sensors' must be a list");

  std::vector<SensorRecord> sensors;
  sensors.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    try {
      sensors.push_back(parse_sensor(list[i], i));
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("{}: {}", source, e.what()));
    }
  }
  return Catalog(std::move(sensors));
}

Catalog load_catalog(const std::string& path) { return parse_catalog(detail::read_file(path), path); }

std::string dump_catalog(const Catalog& catalog) {
  YAML::Emitter out;
  out << YAML::BeginMap << YAML::Key << "sensors" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : catalog.sensors()) emit_sensor(out, s);
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

MissionConfig parse_mission(const std::string& text, const std::string& source) {
  const YAML::Node root = detail::parse_yaml(text, source);
  expect_keys(root,
              {"boom_length_m", "boom_count", "boom_linear_density_g_per_m", "gravity",
               "gripper_mass_kg", "gripper_pulloff_n", "critical_buckling_moment_nm",
               "buckling_margin", "overall_mass_budget_kg", "instrument_mass_kg",
               "body_sensor_fraction", "tube_depth_m", "tube_width_m"},
              source);
  MissionConfig m;
  m.boom_length_m = required<double>(root, "boom_length_m", source);
  m.boom_count = required<int>(root, "boom_count", source);
  m.boom_linear_density_g_per_m = required<double>(root, "boom_linear_density_g_per_m", source);
  m.gravity = required<double>(root, "gravity", source);
  m.gripper_mass_kg = required<double>(root, "gripper_mass_kg", source);
  m.gripper_pulloff_n = required<double>(root, "gripper_pulloff_n", source);
  m.critical_buckling_moment_nm = required<double>(root, "critical_buckling_moment_nm", source);
  m.buckling_margin = required<double>(root, "buckling_margin", source);
  m.overall_mass_budget_kg = required<double>(root, "overall_mass_budget_kg", source);
  m.instrument_mass_kg = required<double>(root, "instrument_mass_kg", source);
  m.body_sensor_fraction = required<double>(root, "body_sensor_fraction", source);
  m.tube_depth_m = required<double>(root, "tube_depth_m", source);
  m.tube_width_m = required<double>(root, "tube_width_m", source);
  validate(m);
  return m;
}

MissionConfig load_mission(const std::string& path) {
  return parse_mission(detail::read_file(path), path);
}

std::string dump_mission(const MissionConfig& m) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  auto kv = [&](const char* key, double v) { out << YAML::Key << key << YAML::Value << number(v); };
  kv("boom_length_m", m.boom_length_m);
  out << YAML::Key << "boom_count" << YAML::Value << m.boom_count;
  kv("boom_linear_density_g_per_m", m.boom_linear_density_g_per_m);
  kv("gravity", m.gravity);
  kv("gripper_mass_kg", m.gripper_mass_kg);
  kv("gripper_pulloff_n", m.gripper_pulloff_n);
  kv("critical_buckling_moment_nm", m.critical_buckling_moment_nm);
  kv("buckling_margin", m.buckling_margin);
  kv("overall_mass_budget_kg", m.overall_mass_budget_kg);
  kv("instrument_mass_kg", m.instrument_mass_kg);
  kv("body_sensor_fraction", m.body_sensor_fraction);
  kv("tube_depth_m", m.tube_depth_m);
  kv("tube_width_m", m.tube_width_m);
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace tradestudy
