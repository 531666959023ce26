#pragma once

// Shared helpers for the test binaries: fixture paths and loaders.

#include <string>

#include "tradestudy/catalog.hpp"
#include "tradestudy/scoring.hpp"
#include "tradestudy/selector.hpp"

namespace tradestudy::test {

inline std::string data_path(const std::string& name) { return std::string(TRADESTUDY_DATA_DIR) + "/" + name; }
inline std::string fixture_path(const std::string& name) {
  return std::string(TRADESTUDY_TEST_FIXTURES) + "/" + name;
}

inline const Catalog& paper_catalog() {
  static const Catalog c = load_catalog(data_path("paper_catalog.yaml"));
  return c;
}
inline const MissionConfig& paper_mission() {
  static const MissionConfig m = load_mission(data_path("paper_mission.yaml"));
  return m;
}
inline const ScoringProfile& far_profile() {
  static const ScoringProfile p = load_profile(data_path("far_field.profile"));
  return p;
}
inline const ScoringProfile& near_profile() {
  static const ScoringProfile p = load_profile(data_path("near_field.profile"));
  return p;
}
inline SelectionRules paper_rules() { return load_rules(data_path("paper_rules.yaml")); }

/// Sub-catalog holding only the given modalities, in catalog order.
inline Catalog only(const Catalog& catalog, std::initializer_list<Modality> modalities) {
  std::vector<SensorRecord> out;
  for (const auto& s : catalog.sensors())
    for (auto m : modalities)
      if (s.modality == m) out.push_back(s);
  return Catalog(std::move(out), true);
}

}  // namespace tradestudy::test
