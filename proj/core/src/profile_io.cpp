#include <cctype>
#include <charconv>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "tradestudy/scoring.hpp"
#include "yaml_util.hpp"

namespace tradestudy {

using detail::as;
using detail::expect_keys;
using detail::number;
using detail::optional;
using detail::present;
using detail::required;

namespace {

std::string_view op_text(Comparison op) {
  switch (op) {
    case Comparison::less: return "<";
    case Comparison::less_equal: return "<=";
    case Comparison::greater: return ">";
    case Comparison::greater_equal: return ">=";
  }
  return "?";
}

// "<= 0.5", ">10", ">= 2e6"
Threshold parse_threshold(const std::string& text, const std::string& where) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::string op;
  while (i < text.size() && (text[i] == '<' || text[i] == '>' || text[i] == '=')) op += text[i++];
  Threshold t;
  if (op == "<") t.op = Comparison::less;
  else if (op == "<=") t.op = Comparison::less_equal;
  else if (op == ">") t.op = Comparison::greater;
  else if (op == ">=") t.op = Comparison::greater_equal;
  else throw ParseError(fmt::format("{}: threshold '{}' must start with <, <=, > or >=", where, text));
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  const char* begin = text.data() + i;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, t.value);
  if (ec != std::errc{} || ptr == begin)
    throw ParseError(fmt::format("{}: threshold '{}' has no numeric value", where, text));
  while (ptr != end && std::isspace(static_cast<unsigned char>(*ptr))) ++ptr;
  if (ptr != end) throw ParseError(fmt::format("{}: trailing text in threshold '{}'", where, text));
  return t;
}

std::string threshold_text(const Threshold& t) {
  return fmt::format("{} {}", op_text(t.op), number(t.value));
}

ThresholdBand parse_band(const YAML::Node& node, const std::string& where) {
  ThresholdBand band;
  if (auto hi = optional<std::string>(node, "high", where)) band.high = parse_threshold(*hi, where + ".high");
  if (auto lo = optional<std::string>(node, "low", where)) band.low = parse_threshold(*lo, where + ".low");
  if (!band.high && !band.low) throw ParseError(where + ": needs a 'high' or 'low' threshold");
  return band;
}

BinRule parse_bins(const YAML::Node& node, const std::string& where) {
  BinRule rule;
  if (node.IsScalar()) {
    if (node.as<std::string>() != "categorical")
      throw ParseError(fmt::format("{}: scalar bins must be 'categorical'", where));
    rule.categorical = true;
    return rule;
  }
  expect_keys(node, {"high", "low", "scan_channels"}, where);
  rule.band = parse_band(node, where);
  if (present(node, "scan_channels")) {
    expect_keys(node["scan_channels"], {"high", "low"}, where + ".scan_channels");
    rule.scan_channels = parse_band(node["scan_channels"], where + ".scan_channels");
  }
  return rule;
}

Ordinal parse_score(const YAML::Node& node, const std::string& where) {
  const auto text = as<std::string>(node, where);
  if (text == "0") return Ordinal::low;
  if (text == "1") return Ordinal::mid;
  if (text == "2") return Ordinal::high;
  try {
    return parse_ordinal(text);
  } catch (const ParseError&) {
    throw ParseError(fmt::format("{}: score '{}' must be 0, 1, 2, low, mid or high", where, text));
  }
}

bool is_categorical_criterion(CriterionName c) {
  return c == CriterionName::darkness || c == CriterionName::dust ||
         c == CriterionName::implementation_ease;
}

void emit_band(YAML::Emitter& out, const ThresholdBand& band) {
  if (band.high) out << YAML::Key << "high" << YAML::Value << YAML::DoubleQuoted << threshold_text(*band.high);
  if (band.low) out << YAML::Key << "low" << YAML::Value << YAML::DoubleQuoted << threshold_text(*band.low);
}

}  // namespace

ScoringProfile parse_profile(const std::string& text, const std::string& source) {
  const YAML::Node root = detail::parse_yaml(text, source);
  expect_keys(root, {"name", "stage", "criteria", "overrides", "exemplars"}, source);

  ScoringProfile p;
  p.name = required<std::string>(root, "name", source);
  try {
    p.stage = parse_stage(required<std::string>(root, "stage", source));
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}.stage: {}", source, e.what()));
  }

  const YAML::Node criteria = root["criteria"];
  if (!criteria.IsSequence()) throw ParseError(source + ": 'criteria' must be a list");
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto node = criteria[i];
    std::string where = fmt::format("{}.criteria[{}]", source, i);
    expect_keys(node, {"name", "kind", "weight", "bins"}, where);
    Criterion c;
    try {
      c.name = parse_criterion(required<std::string>(node, "name", where));
      where = fmt::format("{}.{}", source, to_string(c.name));
      c.kind = parse_criterion_kind(required<std::string>(node, "kind", where));
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("{}: {}", where, e.what()));
    }
    c.weight = required<int>(node, "weight", where);
    if (!present(node, "bins")) throw ParseError(where + ".bins: missing required field");
    c.bins = parse_bins(node["bins"], where + ".bins");
    if (c.bins.categorical != is_categorical_criterion(c.name))
      throw ParseError(fmt::format("{}.bins: {} criterion", where,
                                   c.bins.categorical ? "numeric criterion cannot use categorical bins"
                                                      : "categorical criterion needs 'bins: categorical'"));
    if (c.bins.scan_channels && c.name != CriterionName::resolution)
      throw ParseError(where + ".bins.scan_channels: only valid for resolution");
    p.criteria.push_back(std::move(c));
  }

  if (present(root, "overrides")) {
    const YAML::Node list = root["overrides"];
    if (!list.IsSequence()) throw ParseError(source + ": 'overrides' must be a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto node = list[i];
      const std::string where = fmt::format("{}.overrides[{}]", source, i);
      expect_keys(node, {"sensor", "criterion", "score", "reason"}, where);
      ScoreOverride o;
      o.sensor_id = required<std::string>(node, "sensor", where);
      try {
        o.criterion = parse_criterion(required<std::string>(node, "criterion", where));
      } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", where, e.what()));
      }
      if (!present(node, "score")) throw ParseError(where + ".score: missing required field");
      o.score = parse_score(node["score"], where + ".score");
      o.reason = optional<std::string>(node, "reason", where).value_or("");
      p.overrides.push_back(std::move(o));
    }
  }

  if (present(root, "exemplars")) {
    const YAML::Node map = root["exemplars"];
    if (!map.IsMap()) throw ParseError(source + ": 'exemplars' must be a mapping");
    for (const auto& kv : map) {
      try {
        p.exemplars[parse_modality(kv.first.as<std::string>())] = kv.second.as<std::string>();
      } catch (const YAML::Exception&) {
        throw ParseError(source + ".exemplars: wrong type");
      } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}.exemplars: {}", source, e.what()));
      }
    }
  }

  validate(p);
  return p;
}

ScoringProfile load_profile(const std::string& path) {
  return parse_profile(detail::read_file(path), path);
}

std::string dump_profile(const ScoringProfile& p) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << p.name;
  out << YAML::Key << "stage" << YAML::Value << std::string(to_string(p.stage));
  out << YAML::Key << "criteria" << YAML::Value << YAML::BeginSeq;
  for (const auto& c : p.criteria) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << std::string(to_string(c.name));
    out << YAML::Key << "kind" << YAML::Value << std::string(to_string(c.kind));
    out << YAML::Key << "weight" << YAML::Value << c.weight;
    out << YAML::Key << "bins" << YAML::Value;
    if (c.bins.categorical) {
      out << "categorical";
    } else {
      out << YAML::BeginMap;
      emit_band(out, c.bins.band);
      if (c.bins.scan_channels) {
        out << YAML::Key << "scan_channels" << YAML::Value << YAML::Flow << YAML::BeginMap;
        emit_band(out, *c.bins.scan_channels);
        out << YAML::EndMap;
      }
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  if (!p.overrides.empty()) {
    out << YAML::Key << "overrides" << YAML::Value << YAML::BeginSeq;
    for (const auto& o : p.overrides) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "sensor" << YAML::Value << o.sensor_id;
      out << YAML::Key << "criterion" << YAML::Value << std::string(to_string(o.criterion));
      out << YAML::Key << "score" << YAML::Value << score_of(o.score);
      if (!o.reason.empty()) out << YAML::Key << "reason" << YAML::Value << YAML::DoubleQuoted << o.reason;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (!p.exemplars.empty()) {
    out << YAML::Key << "exemplars" << YAML::Value << YAML::BeginMap;
    for (const auto& [mod, id] : p.exemplars)
      out << YAML::Key << std::string(to_string(mod)) << YAML::Value << id;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace tradestudy
