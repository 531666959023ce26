#include <filesystem>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "tradestudy/geometry.hpp"
#include "tradestudy/selector.hpp"
#include "yaml_util.hpp"

namespace tradestudy {

using detail::as;
using detail::expect_keys;
using detail::optional;
using detail::present;
using detail::required;

namespace {

PlacementRule parse_placement_rule(const YAML::Node& node, const std::string& base_dir,
                                   const std::string& where) {
  expect_keys(node, {"placement", "profile", "mass_budget_kg", "max_sensors", "modalities"}, where);
  PlacementRule rule;
  rule.placement = parse_placement(required<std::string>(node, "placement", where));

  const auto profile = required<std::string>(node, "profile", where);
  const auto path = std::filesystem::path(base_dir) / profile;
  rule.profile = load_profile(path.string());

  // "auto" (or absent) derives the budget from the mission.
  if (present(node, "mass_budget_kg")) {
    const auto text = as<std::string>(node["mass_budget_kg"], where + ".mass_budget_kg");
    if (text != "auto") rule.mass_budget_kg = as<double>(node["mass_budget_kg"], where + ".mass_budget_kg");
  }
  rule.max_sensors = optional<int>(node, "max_sensors", where).value_or(1);
  if (present(node, "modalities")) {
    const auto list = node["modalities"];
    if (!list.IsSequence()) throw ParseError(where + ".modalities: expected a list");
    for (const auto& m : list) rule.modalities.push_back(parse_modality(as<std::string>(m, where)));
  }
  return rule;
}

}  // namespace

SelectionRules parse_rules(const std::string& text, const std::string& base_dir,
                           const std::string& source) {
  const YAML::Node root = detail::parse_yaml(text, source);
  expect_keys(root, {"placements", "stage_policy", "require_redundancy", "max_ties"}, source);
  SelectionRules rules;
  if (auto p = optional<std::string>(root, "stage_policy", source)) rules.stage_policy = parse_stage_policy(*p);
  rules.require_redundancy = optional<bool>(root, "require_redundancy", source).value_or(false);
  if (auto n = optional<int>(root, "max_ties", source)) {
    if (*n < 0) throw ValidationError("rules", "max_ties", "must be >= 0");
    rules.max_ties = static_cast<std::size_t>(*n);
  }
  const auto list = root["placements"];
  if (!list || !list.IsSequence()) throw ParseError(source + ".placements: expected a list");
  for (std::size_t i = 0; i < list.size(); ++i)
    rules.placements.push_back(
        parse_placement_rule(list[i], base_dir, fmt::format("{}.placements[{}]", source, i)));
  validate(rules);
  return rules;
}

SelectionRules load_rules(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_rules(detail::read_file(path), dir.empty() ? "." : dir, path);
}

MountConfig parse_mounts(const std::string& text, const Catalog& catalog,
                         std::optional<TubeSection> default_section, const std::string& source) {
  const YAML::Node root = detail::parse_yaml(text, source);
  expect_keys(root, {"section", "mounts", "stage"}, source);
  MountConfig cfg;

  if (present(root, "section")) {
    const auto node = root["section"];
    const auto where = source + ".section";
    expect_keys(node, {"depth_m", "width_m", "body_height_m", "body_lateral_m"}, where);
    auto depth = optional<double>(node, "depth_m", where);
    auto width = optional<double>(node, "width_m", where);
    if (!depth && default_section) depth = default_section->depth_m;
    if (!width && default_section) width = default_section->width_m;
    if (!depth || !width) throw ParseError(where + ": depth_m and width_m required");
    cfg.section = TubeSection::centered(*depth, *width);
    if (auto h = optional<double>(node, "body_height_m", where)) cfg.section.body_height_m = *h;
    if (auto x = optional<double>(node, "body_lateral_m", where)) cfg.section.body_lateral_m = *x;
  } else if (default_section) {
    cfg.section = *default_section;
  } else {
    throw ParseError(source + ".section: missing required field");
  }
  validate(cfg.section);

  const auto list = root["mounts"];
  if (!list || !list.IsSequence() || list.size() == 0)
    throw ParseError(source + ".mounts: expected a non-empty list");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto where = fmt::format("{}.mounts[{}]", source, i);
    expect_keys(list[i], {"sensor", "tilt_deg", "spinning", "faces_left"}, where);
    Mount m;
    m.sensor = catalog.at(required<std::string>(list[i], "sensor", where));
    m.tilt_deg = optional<double>(list[i], "tilt_deg", where).value_or(0.0);
    m.spinning = optional<bool>(list[i], "spinning", where).value_or(false);
    m.faces_left = optional<bool>(list[i], "faces_left", where).value_or(false);
    cfg.mounts.push_back(std::move(m));
  }

  if (present(root, "stage")) {
    const auto where = source + ".stage";
    expect_keys(root["stage"], {"far", "near"}, where);
    cfg.stage = {catalog.canonical_id(required<std::string>(root["stage"], "far", where)),
                 catalog.canonical_id(required<std::string>(root["stage"], "near", where))};
  }
  return cfg;
}

MountConfig load_mounts(const std::string& path, const Catalog& catalog,
                        std::optional<TubeSection> default_section) {
  return parse_mounts(detail::read_file(path), catalog, default_section, path);
}

}  // namespace tradestudy
